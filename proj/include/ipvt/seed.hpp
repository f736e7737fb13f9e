#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace ipvt {

// xoshiro256** with splitmix64 seeding. Streams are bit-reproducible across
// platforms and standard-library versions; all variate generation in this
// project goes through this engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : state_) w = splitmix(x);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // uniform on [0,1), 53-bit resolution
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform on (0,1); safe as an argument to log()
  double uniform_pos() {
    for (;;) {
      const std::uint64_t u = next() >> 11;
      if (u != 0) return static_cast<double>(u) * 0x1.0p-53;
    }
  }

  // standard normal via Box-Muller (no state beyond the stream)
  double normal() {
    const double u = uniform_pos();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925287 * v);
  }

  static std::uint64_t splitmix(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }
  std::array<std::uint64_t, 4> state_;
};

// A replicable random stream address: a root seed plus a path of child
// indices. Distinct paths yield statistically independent streams; the same
// (root, path) always yields the same stream, bit for bit. Monte Carlo
// replicas fan out over child(i) so results do not depend on scheduling.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t root) : root_(root) {}

  SeedStream child(std::uint64_t index) const {
    SeedStream s = *this;
    s.path_.push_back(index);
    return s;
  }

  Rng rng() const {
    std::uint64_t x = root_ ^ 0xA0761D6478BD642FULL;
    std::uint64_t h = Rng::splitmix(x);
    for (std::uint64_t p : path_) {
      std::uint64_t y = p ^ 0xE7037ED1A0B428DBULL;
      h ^= Rng::splitmix(y);
      std::uint64_t z = h;
      h = Rng::splitmix(z);
    }
    return Rng(h);
  }

  std::uint64_t root() const { return root_; }
  const std::vector<std::uint64_t>& path() const { return path_; }

  // "root/p0.p1.p2" for report provenance
  std::string describe() const {
    std::string out = std::to_string(root_);
    if (!path_.empty()) {
      out += '/';
      for (std::size_t i = 0; i < path_.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(path_[i]);
      }
    }
    return out;
  }

 private:
  std::uint64_t root_;
  std::vector<std::uint64_t> path_;
};

}  // namespace ipvt
