#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ipvt/hyperbolic.hpp"
#include "ipvt/seed.hpp"
#include "ipvt/space.hpp"
#include "ipvt/stats.hpp"
#include "ipvt/tessellation.hpp"

namespace ipvt {

// A truncated sample of the boundary-heights Poisson process, exact for
// tessellation queries in B(o, r_valid): the sample contains every atom with
// height s <= s_min + 2 r_valid, and no atom above that ceiling can win
// inside the ball, because a member's value at y is at least s - d(o, y)
// while the minimum there is at most s_min + d(o, y).
struct IdealConfiguration {
  std::vector<IdealAtom> atoms;  // sorted by height, lowest first
  double r_valid = 0.0;
  bool warning = false;          // set when a transport could not recertify a radius
  std::string seed_desc;

  double s_min() const { return atoms.front().s; }
  double ceiling() const { return s_min() + 2.0 * r_valid; }
};

// The action on a single atom: (xi, s) -> (g xi, s + B_xi(g^{-1} o)).
IdealAtom act_on_atom(const Isometry& g, const IdealAtom& atom);

// Exact sampler. The lowest height has law P[s0 <= u] = 1 - exp(-e^u) (the
// void probability of the region below u); conditionally on it, the remaining
// atoms in heights (s0, s0 + 2 r_valid] are Poisson with the restricted
// measure; angles are uniform.
IdealConfiguration sample_ipvt(double r_valid, const SeedStream& seed);

// Adjoin the (independent, Poisson) atoms with heights in (old ceiling, new
// ceiling]; the certified radius grows accordingly.
IdealConfiguration extend_to_ceiling(const IdealConfiguration& ic, double new_ceiling,
                                     const SeedStream& seed);

// The function family f_i(y) = B_{xi_i}(y) + s_i, members in atom order.
FunctionFamily ipvt_family(const IdealConfiguration& ic);

// Transport a truncated sample. The transported atoms are complete below
// ceiling - d(o, g o) only, so atoms above that are discarded and the radius
// is recertified; when not even the lowest transported atom is certified the
// full set is returned with r_valid = 0 and the warning flag set.
IdealConfiguration act_on_ideal(const Isometry& g, const IdealConfiguration& ic);

// The normalized image of a finite-intensity sample: site x becomes the atom
// (direction of x from o, d(o, x) - r_t) and the member function
// f_x(y) = d(x, y) - r_t.
//
// Calibration of the offset: in polar coordinates the intensity is
// t sinh(rho) drho dtheta; substituting s = rho - r_t gives density
// t sinh(s + r_t) ds dtheta ~ (t e^{r_t} / 2) e^s ds dtheta, and matching the
// reference density (dtheta / 2 pi) x e^s ds forces e^{r_t} = 1 / (pi t),
// i.e. r_t = -log(pi t). Any other constant shifts all heights equally and
// changes no winner; this one makes height laws constant-free.
struct NormalizedFamily {
  std::vector<IdealAtom> atoms;  // in config point order
  double offset = 0.0;           // r_t
};
NormalizedFamily normalize_pvt(const Configuration& config, double t);
double normalization_offset(double t);  // r_t = -log(pi t)

// Fraction of queries whose nearest-site winner (over `sites`) equals the
// Busemann winner (over `atoms`, same index order). Ties go to the lower
// index on both sides.
double coupled_agreement(const std::vector<DiskPoint>& sites,
                         const std::vector<IdealAtom>& atoms,
                         const std::vector<DiskPoint>& queries);

// Agreement experiment between nearest-site winners of a finite-intensity
// sample and the winners of its coupled Busemann family, per intensity.
// Passes iff the agreement fraction is nondecreasing within 2 SE along the
// (decreasing) intensity list and the final fraction reaches floor_final.
struct ConvergenceParams {
  std::vector<double> intensities{1e-1, 1e-2, 1e-3};  // strictly decreasing
  double r_query = 1.5;
  int n_queries = 64;
  int replicas = 300;
  double floor_final = 0.999;  // frozen pilot value, see kConvergencePilot*
};
TestReport convergence_experiment(const ConvergenceParams& params, const SeedStream& seed);

// Pilot calibration for the defaults above (seed 42, intensities
// 1e-1/1e-2/1e-3, r_query 1.5, 64 queries, 300 replicas), frozen once. The
// pilot measured agreement 1.0 at t = 1e-3 (all 19200 queries, SE 0); the
// default floor backs off to 0.999 to admit rare winner flips under other
// seeds. Pilot agreements per intensity: 0.9690625, 0.999375, 1.0.
extern const double kConvergencePilotAgreement;
extern const double kConvergencePilotSe;

// A count event measurable from atoms in an (angle x height) box.
struct BoxEvent {
  double xi_lo = 0.0, xi_hi = 0.0;  // 0 <= xi_lo < xi_hi <= 2 pi
  double s_lo = 0.0, s_hi = 0.0;
  long long min_count = 1;
};
double box_mass(const BoxEvent& box);
bool atom_in_box(const IdealAtom& atom, const BoxEvent& box);
long long count_atoms_in_box(const std::vector<IdealAtom>& atoms, const BoxEvent& box);

// Poisson atoms restricted to a box (angles uniform in the interval, heights
// by the restricted exponential density).
std::vector<IdealAtom> sample_atoms_in_box(const BoxEvent& box, Rng& rng);

// Decay of correlations under translations: per length L estimates
// cov(1_{g_L A}, 1_B) on exact joint samples of the process restricted to
// B-box union transported A-box. Passes iff the covariance at the largest L
// is within 3 SE of 0 and, when L = 0 is in the list, strictly below the
// L = 0 value in absolute terms.
struct MixingParams {
  BoxEvent a, b;
  std::vector<double> lengths;  // nondecreasing, e.g. {0, 5, 10, 20}
  long long replicas = 10000;
};
TestReport mixing_experiment(const MixingParams& params, const SeedStream& seed);

// Header line `rvalid=... seed=...`, then one `xi=<radians> s=<height>` per atom.
void write_ideal_configuration(std::ostream& out, const IdealConfiguration& ic);
IdealConfiguration read_ideal_configuration(std::istream& in);

}  // namespace ipvt
