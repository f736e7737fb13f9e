// Command-line front end: seeded experiment runner, data export, and SVG
// rendering of disk tessellations. Every run is a pure function of its flags,
// so identical invocations produce byte-identical outputs.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ipvt/harness.hpp"
#include "ipvt/ideal.hpp"
#include "ipvt/render.hpp"
#include "ipvt/sampling.hpp"
#include "ipvt/tessellation.hpp"

namespace {

constexpr const char* kVersion = "ipvt 0.1.0";

using namespace ipvt;

// exit codes: 0 success/pass, 1 harness failure, 2 usage error
constexpr int kOk = 0;
constexpr int kHarnessFail = 1;
constexpr int kUsage = 2;

std::string quote_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

struct OutputFile {
  std::ofstream stream;
  explicit OutputFile(const std::string& path, const std::string& header) {
    stream.open(path, std::ios::binary);
    if (!stream) throw std::runtime_error("cannot open output file: " + path);
    stream << header;
  }
};

std::string comment_header(const std::string& cmdline, std::uint64_t seed) {
  std::ostringstream os;
  os << "# cmd: " << cmdline << "\n# seed: " << seed << "\n# version: " << kVersion << "\n";
  return os.str();
}

// outputs that must stay valid XML carry the same header as a comment node
std::string svg_header(const std::string& cmdline, std::uint64_t seed) {
  std::ostringstream os;
  os << "<!-- cmd: " << cmdline << " | seed: " << seed << " | version: " << kVersion << " -->\n";
  return os.str();
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::istringstream is(csv);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

SpaceModel make_space(const std::string& space, const std::string& box, double radius,
                      double smax) {
  if (space == "euclidean") {
    std::vector<double> sides;
    std::istringstream is(box);
    std::string tok;
    while (std::getline(is, tok, 'x')) sides.push_back(std::stod(tok));
    if (sides.empty()) throw CLI::ValidationError("--box", "expected e.g. 1x1");
    Point lo(static_cast<int>(sides.size())), hi(static_cast<int>(sides.size()));
    for (std::size_t i = 0; i < sides.size(); ++i) {
      lo(static_cast<int>(i)) = 0.0;
      hi(static_cast<int>(i)) = sides[i];
    }
    return SpaceModel::euclidean_box(lo, hi);
  }
  if (space == "hyperbolic") return SpaceModel::hyperbolic_disk(radius);
  if (space == "heights") return SpaceModel::boundary_heights(smax);
  throw CLI::ValidationError("--space", "must be euclidean, hyperbolic, or heights");
}

// centered subregion of the requested mass, used by the harness subcommands
Region default_region(const SpaceModel& space, double target_mass, double scale) {
  switch (space.kind()) {
    case Space::Euclidean: {
      const int d = space.dim();
      const double vol = target_mass / scale;
      const double side = std::pow(vol, 1.0 / d);
      Point lo(d), hi(d);
      for (int i = 0; i < d; ++i) {
        const double mid = 0.5 * (space.lo()(i) + space.hi()(i));
        lo(i) = mid - 0.5 * side;
        hi(i) = mid + 0.5 * side;
        if (lo(i) < space.lo()(i) || hi(i) > space.hi()(i))
          throw std::invalid_argument("window too small for the requested region mass");
      }
      return Region::box(lo, hi);
    }
    case Space::Hyperbolic: {
      const double rho = std::acosh(1.0 + target_mass / (scale * 2.0 * M_PI));
      Point o(2);
      o << 0.0, 0.0;
      if (rho > space.radius())
        throw std::invalid_argument("window too small for the requested region mass");
      return Region::ball(o, rho);
    }
    case Space::Heights: {
      const double s_hi = std::log(target_mass / scale);
      if (s_hi > space.height_max())
        throw std::invalid_argument("window too small for the requested region mass");
      Point lo(2), hi(2);
      lo << 0.0, -std::numeric_limits<double>::infinity();
      hi << 2.0 * M_PI, s_hi;
      return Region::box(lo, hi);
    }
  }
  throw std::logic_error("default_region: unreachable");
}

int run_sample(const std::string& cmdline, const std::string& space, const std::string& box,
               double radius, double smax, double intensity, std::uint64_t seed,
               const std::string& out) {
  const SpaceModel model = make_space(space, box, radius, smax);
  const Configuration config =
      sample_poisson(IntensityMeasure(model, intensity), SeedStream(seed));
  OutputFile f(out, comment_header(cmdline, seed));
  write_configuration(f.stream, config);
  std::cout << "sampled " << config.size() << " points -> " << out << "\n";
  return kOk;
}

int run_mecke(const std::string& cmdline, const std::string& space, const std::string& box,
              double radius, double smax, double intensity, const std::string& family, int k,
              double r, int kmax, long long n, std::uint64_t seed, const std::string& out) {
  const SpaceModel model = make_space(space, box, radius, smax);
  const IntensityMeasure measure(model, intensity);
  const Region region = default_region(model, 4.0, intensity);

  MeckeSpec spec;
  spec.region = region;
  if (family == "indicator") {
    spec.family = MeckeFamily::Indicator;
  } else if (family == "indicator-k") {
    spec.family = MeckeFamily::IndicatorCount;
    spec.k = k;
  } else if (family == "isolation") {
    spec.family = MeckeFamily::Isolation;
    spec.r = r;
  } else {
    throw CLI::ValidationError("--family", "must be indicator, indicator-k, or isolation");
  }

  const SeedStream root(seed);
  const TestReport mecke = mecke_two_sided(measure, spec, n, root.child(0));
  const TestReport renyi = renyi_recurrence(measure, region, kmax, n, root.child(1));

  OutputFile f(out, comment_header(cmdline, seed));
  f.stream << mecke.json_line() << "\n" << renyi.json_line() << "\n";
  std::cout << "mecke: " << (mecke.pass ? "pass" : "FAIL") << " (z=" << mecke.z << ")\n";
  std::cout << "renyi: " << (renyi.pass ? "pass" : "FAIL") << " (max |z|=" << renyi.z << ")\n";
  return mecke.pass && renyi.pass ? kOk : kHarnessFail;
}

int run_thin(const std::string& cmdline, const std::string& mode, const std::string& rule_name,
             double r, double p, const std::string& space, const std::string& box, double radius,
             double smax, double intensity, long long n, std::uint64_t seed,
             const std::string& out) {
  const SpaceModel model = make_space(space, box, radius, smax);
  const IntensityMeasure measure(model, intensity);

  ThinningRule rule = ThinningRule::r_isolated(0.0);
  if (rule_name == "risolated")
    rule = ThinningRule::r_isolated(r);
  else if (rule_name == "mark")
    rule = ThinningRule::independent_mark(p, seed ^ 0x6D61726B);
  else
    throw CLI::ValidationError("--rule", "must be risolated or mark");

  if (mode == "apply") {
    const Configuration config = sample_poisson(measure, SeedStream(seed));
    const Region core = default_region(model, measure.mass() * 0.5, intensity);
    const Configuration kept = apply_thinning(rule, config, core);
    OutputFile f(out, comment_header(cmdline, seed));
    write_configuration(f.stream, kept);
    std::cout << "kept " << kept.size() << " of " << config.size() << " points -> " << out
              << "\n";
    return kOk;
  }

  TestReport rep;
  if (mode == "palm") {
    Rng rng = SeedStream(seed).child(999).rng();
    const Point x =
        sample_point_in(measure, default_region(model, measure.mass() * 0.25, intensity), rng);
    rep = palm_inclusion_probability(rule, measure, x, n, SeedStream(seed));
  } else if (mode == "verdict") {
    rep = fullness_verdict(rule, measure, n, SeedStream(seed));
  } else {
    throw CLI::ValidationError("--mode", "must be apply, palm, or verdict");
  }
  OutputFile f(out, comment_header(cmdline, seed));
  f.stream << rep.json_line() << "\n";
  std::cout << rep.harness << ": "
            << (rep.decision.empty() ? (rep.pass ? "pass" : "FAIL") : rep.decision)
            << " (estimate=" << rep.estimate << " se=" << rep.se << ")\n";
  return rep.pass ? kOk : kHarnessFail;
}

int run_voronoi(const std::string& cmdline, const std::string& space, const std::string& box,
                double radius, double intensity, double grid_h, std::uint64_t seed,
                const std::string& out, const std::string& svg_out) {
  const SpaceModel model = make_space(space, box, radius, 0.0);
  if (model.kind() == Space::Heights)
    throw CLI::ValidationError("--space", "voronoi runs on euclidean or hyperbolic windows");
  Configuration sites = sample_poisson(IntensityMeasure(model, intensity), SeedStream(seed));
  if (sites.size() == 0) sites = Configuration(model, {Point::Zero(model.dim())});
  const FunctionFamily family = FunctionFamily::distance(sites);

  const ProbeGrid grid = make_probe_grid(model, grid_h);
  const CellAssignment cells = assign(family, grid.points);
  const auto pairs = adjacency_probe(family, model, grid_h);

  OutputFile f(out, comment_header(cmdline, seed));
  write_assignment_csv(f.stream, cells);
  if (!svg_out.empty()) {
    OutputFile s(svg_out, svg_header(cmdline, seed));
    s.stream << render_grid_svg(grid, cells, model);
  }
  std::cout << "sites=" << sites.size() << " grid=" << grid.points.size()
            << " adjacent-pairs=" << pairs.size() << " -> " << out << "\n";
  return kOk;
}

int run_ipvt_sample(const std::string& cmdline, double rvalid, std::uint64_t seed,
                    const std::string& out) {
  const IdealConfiguration ic = sample_ipvt(rvalid, SeedStream(seed));
  OutputFile f(out, comment_header(cmdline, seed));
  write_ideal_configuration(f.stream, ic);
  std::cout << "sampled " << ic.atoms.size() << " atoms (s0=" << ic.s_min() << ") -> " << out
            << "\n";
  return kOk;
}

int run_ipvt_converge(const std::string& cmdline, const std::string& intensities, double rquery,
                      int nqueries, int n, double floor_final, std::uint64_t seed,
                      const std::string& out) {
  ConvergenceParams params;
  params.intensities = parse_list(intensities);
  params.r_query = rquery;
  params.n_queries = nqueries;
  params.replicas = n;
  params.floor_final = floor_final;
  const TestReport rep = convergence_experiment(params, SeedStream(seed));
  OutputFile f(out, comment_header(cmdline, seed));
  f.stream << rep.json_line() << "\n";
  for (const auto& row : rep.rows)
    std::cout << row.label << ": agreement=" << row.estimate << " se=" << row.se
              << (row.pass ? "" : " FAIL") << "\n";
  std::cout << "converge: " << (rep.pass ? "pass" : "FAIL") << "\n";
  return rep.pass ? kOk : kHarnessFail;
}

int run_ipvt_mixing(const std::string& cmdline, const std::string& lengths, long long n,
                    std::uint64_t seed, const std::string& out) {
  MixingParams params;
  params.a = {0.0, M_PI / 4.0, -1.0, 0.0, 1};
  params.b = params.a;
  params.lengths = parse_list(lengths);
  params.replicas = n;
  const TestReport rep = mixing_experiment(params, SeedStream(seed));
  OutputFile f(out, comment_header(cmdline, seed));
  f.stream << rep.json_line() << "\n";
  for (const auto& row : rep.rows)
    std::cout << row.label << ": " << row.estimate << " (se=" << row.se << ")\n";
  std::cout << "mixing: " << (rep.pass ? "pass" : "FAIL") << "\n";
  return rep.pass ? kOk : kHarnessFail;
}

int run_ipvt_render(const std::string& cmdline, double rvalid, double grid_h,
                    std::uint64_t seed, const std::string& out) {
  const IdealConfiguration ic = sample_ipvt(rvalid, SeedStream(seed));
  const FunctionFamily family = ipvt_family(ic);
  const SpaceModel window = SpaceModel::hyperbolic_disk(rvalid);
  const ProbeGrid grid = make_probe_grid(window, grid_h);
  const CellAssignment cells = assign(family, grid.points);
  OutputFile f(out, svg_header(cmdline, seed));
  f.stream << render_grid_svg(grid, cells, window);
  std::cout << "rendered " << ic.atoms.size() << " atoms on " << grid.points.size()
            << " grid squares -> " << out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic geometry workbench: Poisson processes, thinnings, and ideal "
               "Poisson-Voronoi tessellations of the hyperbolic plane"};
  app.require_subcommand(1);
  const std::string cmdline = quote_args(argc, argv);

  std::string space = "euclidean", box = "2.4x2.4", family = "indicator";
  std::string rule = "risolated", mode = "verdict";
  std::string out = "out.txt", svg_out, intensities = "1e-1,1e-2,1e-3", lengths = "0,5,10,20";
  double radius = 2.0, smax = std::log(8.0), intensity = 1.0, r = 0.5, p = 0.5;
  double grid_h = 0.02, rvalid = 4.0, rquery = 1.5, floor_final = 0.999;
  std::uint64_t seed = 1;
  long long n = 10000;
  int k = 2, kmax = 8, nqueries = 64;

  auto* sample = app.add_subcommand("sample", "draw a Poisson configuration and write it");
  sample->add_option("--space", space, "euclidean|hyperbolic|heights");
  sample->add_option("--box", box, "euclidean box sides, e.g. 1x1");
  sample->add_option("--radius", radius, "hyperbolic window radius");
  sample->add_option("--smax", smax, "heights window ceiling");
  sample->add_option("--intensity", intensity, "intensity scale")->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "root seed");
  sample->add_option("--out", out, "output points file")->required();

  auto* mecke = app.add_subcommand("mecke", "two-sided insertion identity + recurrence harness");
  mecke->add_option("--space", space, "euclidean|hyperbolic");
  mecke->add_option("--box", box, "euclidean box sides");
  mecke->add_option("--radius", radius, "hyperbolic window radius");
  mecke->add_option("--intensity", intensity)->check(CLI::PositiveNumber);
  mecke->add_option("--family", family, "indicator|indicator-k|isolation");
  mecke->add_option("--k", k, "count for indicator-k");
  mecke->add_option("--r", r, "radius for isolation");
  mecke->add_option("--kmax", kmax, "recurrence bins");
  mecke->add_option("--n", n, "replicas")->check(CLI::PositiveNumber);
  mecke->add_option("--seed", seed);
  mecke->add_option("--out", out, "JSON-lines report")->required();

  auto* thin = app.add_subcommand("thin", "apply a thinning / palm probe / fullness verdict");
  thin->add_option("--mode", mode, "apply|palm|verdict");
  thin->add_option("--rule", rule, "risolated|mark");
  thin->add_option("--r", r, "isolation radius");
  thin->add_option("--p", p, "marking probability");
  thin->add_option("--space", space);
  thin->add_option("--box", box);
  thin->add_option("--radius", radius);
  thin->add_option("--smax", smax);
  thin->add_option("--intensity", intensity)->check(CLI::PositiveNumber);
  thin->add_option("--n", n)->check(CLI::PositiveNumber);
  thin->add_option("--seed", seed);
  thin->add_option("--out", out)->required();

  auto* voronoi = app.add_subcommand("voronoi", "nearest-site tessellation on a window");
  voronoi->add_option("--space", space, "euclidean|hyperbolic");
  voronoi->add_option("--box", box);
  voronoi->add_option("--radius", radius);
  voronoi->add_option("--intensity", intensity)->check(CLI::PositiveNumber);
  voronoi->add_option("--grid-h", grid_h, "probe grid spacing")->check(CLI::PositiveNumber);
  voronoi->add_option("--seed", seed);
  voronoi->add_option("--out", out, "CSV assignment")->required();
  voronoi->add_option("--svg", svg_out, "optional SVG rendering");

  auto* ipvt_cmd = app.add_subcommand("ipvt", "ideal Poisson-Voronoi tessellation");
  ipvt_cmd->require_subcommand(1);
  auto* ipvt_sample = ipvt_cmd->add_subcommand("sample", "draw a boundary-heights sample");
  ipvt_sample->add_option("--rvalid", rvalid, "certified tessellation radius")
      ->check(CLI::PositiveNumber);
  ipvt_sample->add_option("--seed", seed);
  ipvt_sample->add_option("--out", out)->required();

  auto* ipvt_conv = ipvt_cmd->add_subcommand("converge", "coupled-agreement experiment");
  ipvt_conv->add_option("--intensities", intensities, "decreasing list, e.g. 1e-1,1e-2,1e-3");
  ipvt_conv->add_option("--rquery", rquery)->check(CLI::PositiveNumber);
  ipvt_conv->add_option("--nqueries", nqueries)->check(CLI::PositiveNumber);
  ipvt_conv->add_option("--n", n, "replicas per intensity")->check(CLI::PositiveNumber);
  ipvt_conv->add_option("--floor", floor_final, "pass floor at the final intensity");
  ipvt_conv->add_option("--seed", seed);
  ipvt_conv->add_option("--out", out)->required();

  auto* ipvt_mix = ipvt_cmd->add_subcommand("mixing", "translation decorrelation experiment");
  ipvt_mix->add_option("--llist", lengths, "translation lengths, e.g. 0,5,10,20");
  ipvt_mix->add_option("--n", n)->check(CLI::PositiveNumber);
  ipvt_mix->add_option("--seed", seed);
  ipvt_mix->add_option("--out", out)->required();

  auto* ipvt_render = ipvt_cmd->add_subcommand("render", "SVG of the disk colored by cell");
  ipvt_render->add_option("--rvalid", rvalid)->check(CLI::PositiveNumber);
  ipvt_render->add_option("--grid-h", grid_h)->check(CLI::PositiveNumber);
  ipvt_render->add_option("--seed", seed);
  ipvt_render->add_option("--out", out, "SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sample) return run_sample(cmdline, space, box, radius, smax, intensity, seed, out);
    if (*mecke)
      return run_mecke(cmdline, space, box, radius, smax, intensity, family, k, r, kmax, n, seed,
                       out);
    if (*thin)
      return run_thin(cmdline, mode, rule, r, p, space, box, radius, smax, intensity, n, seed,
                      out);
    if (*voronoi)
      return run_voronoi(cmdline, space, box, radius, intensity, grid_h, seed, out, svg_out);
    if (*ipvt_cmd) {
      if (*ipvt_sample) return run_ipvt_sample(cmdline, rvalid, seed, out);
      if (*ipvt_conv)
        return run_ipvt_converge(cmdline, intensities, rquery, nqueries, static_cast<int>(n),
                                 floor_final, seed, out);
      if (*ipvt_mix) return run_ipvt_mixing(cmdline, lengths, n, seed, out);
      if (*ipvt_render) return run_ipvt_render(cmdline, rvalid, grid_h, seed, out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kHarnessFail;
  }
  return kUsage;
}
