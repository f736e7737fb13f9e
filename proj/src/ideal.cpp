#include "ipvt/ideal.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ipvt/parallel.hpp"
#include "ipvt/sampling.hpp"

namespace ipvt {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;
constexpr double kMaxExpectedAtoms = 5e7;

void sort_atoms(std::vector<IdealAtom>& atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const IdealAtom& a, const IdealAtom& b) {
    return a.s != b.s ? a.s < b.s : a.xi < b.xi;
  });
}

// Poisson atoms with heights in (s_lo, s_hi], angles uniform on [0, 2 pi).
std::vector<IdealAtom> sample_band(double s_lo, double s_hi, Rng& rng) {
  const double w_lo = std::exp(s_lo);
  const double mass = std::exp(s_hi) - w_lo;
  if (mass > kMaxExpectedAtoms)
    throw std::invalid_argument("ideal sampler: expected atom count too large for this ceiling");
  const long long n = sample_poisson_count(mass, rng);
  std::vector<IdealAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    IdealAtom a;
    a.xi = kTwoPi * rng.uniform();
    a.s = std::log(w_lo + mass * rng.uniform_pos());
    atoms.push_back(a);
  }
  return atoms;
}

}  // namespace

IdealAtom act_on_atom(const Isometry& g, const IdealAtom& atom) {
  IdealAtom out;
  const IdealPoint xi(atom.xi);
  out.xi = g(xi).angle;
  out.s = atom.s + height_cocycle(g, xi);
  return out;
}

IdealConfiguration sample_ipvt(double r_valid, const SeedStream& seed) {
  if (!(r_valid > 0.0)) throw std::invalid_argument("sample_ipvt: r_valid must be positive");
  Rng rng = seed.rng();
  IdealConfiguration ic;
  ic.r_valid = r_valid;
  ic.seed_desc = seed.describe();

  // lowest atom: inverse CDF of P[s0 <= u] = 1 - exp(-e^u)
  IdealAtom first;
  first.s = std::log(-std::log(rng.uniform_pos()));
  first.xi = kTwoPi * rng.uniform();
  ic.atoms.push_back(first);

  auto extras = sample_band(first.s, first.s + 2.0 * r_valid, rng);
  ic.atoms.insert(ic.atoms.end(), extras.begin(), extras.end());
  sort_atoms(ic.atoms);
  return ic;
}

IdealConfiguration extend_to_ceiling(const IdealConfiguration& ic, double new_ceiling,
                                     const SeedStream& seed) {
  if (ic.warning)
    throw std::invalid_argument("extend_to_ceiling: cannot extend an uncertified sample");
  if (new_ceiling <= ic.ceiling()) return ic;
  Rng rng = seed.rng();
  IdealConfiguration out = ic;
  auto extras = sample_band(ic.ceiling(), new_ceiling, rng);
  out.atoms.insert(out.atoms.end(), extras.begin(), extras.end());
  sort_atoms(out.atoms);
  out.r_valid = 0.5 * (new_ceiling - out.s_min());
  out.seed_desc += "+" + seed.describe();
  return out;
}

FunctionFamily ipvt_family(const IdealConfiguration& ic) {
  return FunctionFamily::busemann(ic.atoms, ic.r_valid);
}

IdealConfiguration act_on_ideal(const Isometry& g, const IdealConfiguration& ic) {
  const double tau = g.basepoint_displacement();
  const double new_ceiling = ic.ceiling() - tau;

  IdealConfiguration out;
  out.seed_desc = ic.seed_desc;
  out.atoms.reserve(ic.atoms.size());
  for (const auto& a : ic.atoms) out.atoms.push_back(act_on_atom(g, a));
  sort_atoms(out.atoms);

  if (ic.warning || out.atoms.front().s > new_ceiling) {
    // not even the lowest transported atom is certified below the ceiling
    out.r_valid = 0.0;
    out.warning = true;
    return out;
  }
  while (!out.atoms.empty() && out.atoms.back().s > new_ceiling) out.atoms.pop_back();
  out.r_valid = 0.5 * (new_ceiling - out.atoms.front().s);
  out.warning = false;
  return out;
}

double normalization_offset(double t) {
  if (!(t > 0.0)) throw std::domain_error("normalization_offset: t must be positive");
  return -std::log(M_PI * t);
}

NormalizedFamily normalize_pvt(const Configuration& config, double t) {
  if (config.window.kind() != Space::Hyperbolic)
    throw std::invalid_argument("normalize_pvt: hyperbolic-disk configurations only");
  NormalizedFamily out;
  out.offset = normalization_offset(t);
  out.atoms.reserve(config.points.size());
  for (const auto& p : config.points) {
    const DiskPoint z(p(0), p(1));
    IdealAtom a;
    a.xi = reduce_angle(std::arg(z));
    a.s = radial_distance(z) - out.offset;
    out.atoms.push_back(a);
  }
  return out;
}

const double kConvergencePilotAgreement = 1.0;
const double kConvergencePilotSe = 0.0;

namespace {

// Fraction of queries whose nearest-site winner equals the coupled Busemann
// winner, for one replica of one intensity.
double agreement_replica(double t, double r_query, int n_queries, const SeedStream& s) {
  const double r_t = normalization_offset(t);
  const double u_cap_base = 3.0 + 2.0 * r_query;
  if (r_t + u_cap_base > 700.0) {
    std::ostringstream os;
    os << "convergence_experiment: window radius overflows for intensity t=" << t;
    throw std::invalid_argument(os.str());
  }

  double radius = r_t + u_cap_base;
  Configuration config =
      sample_poisson(IntensityMeasure(SpaceModel::hyperbolic_disk(radius), t), s.child(0));

  // extend with independent annuli until nonempty and until every height up
  // to s0 + 2 r_query is covered
  int ext = 0;
  auto extend_annulus = [&](double new_radius) {
    Rng rng = s.child(100 + ext++).rng();
    const double mass = t * kTwoPi * (std::cosh(new_radius) - std::cosh(radius));
    const long long n = sample_poisson_count(mass, rng);
    std::vector<Point> pts;
    for (long long i = 0; i < n; ++i) {
      const double u = rng.uniform_pos();
      const double rho = std::acosh(std::cosh(radius) + u * (std::cosh(new_radius) - std::cosh(radius)));
      const DiskPoint z = from_polar(rho, kTwoPi * rng.uniform());
      Point p(2);
      p << z.real(), z.imag();
      pts.push_back(std::move(p));
    }
    config.window = SpaceModel::hyperbolic_disk(new_radius);
    config.points.insert(config.points.end(), pts.begin(), pts.end());
    radius = new_radius;
  };
  while (config.points.empty()) extend_annulus(radius + 1.0);

  double rho_min = std::numeric_limits<double>::infinity();
  for (const auto& p : config.points)
    rho_min = std::min(rho_min, radial_distance(DiskPoint(p(0), p(1))));
  const double s0 = rho_min - r_t;
  const double target_radius = r_t + s0 + 2.0 * r_query;
  if (target_radius > radius) extend_annulus(target_radius);

  // truncate both families to heights <= s0 + 2 r_query; heavier sites cannot
  // win inside B(o, r_query) under either family
  const NormalizedFamily norm = normalize_pvt(config, t);
  std::vector<DiskPoint> sites;
  std::vector<IdealAtom> atoms;
  for (std::size_t i = 0; i < norm.atoms.size(); ++i) {
    if (norm.atoms[i].s <= s0 + 2.0 * r_query) {
      sites.emplace_back(config.points[i](0), config.points[i](1));
      atoms.push_back(norm.atoms[i]);
    }
  }

  Rng rng_q = s.child(1).rng();
  std::vector<DiskPoint> queries;
  queries.reserve(static_cast<std::size_t>(n_queries));
  for (int q = 0; q < n_queries; ++q) {
    const double rho = std::acosh(1.0 + rng_q.uniform_pos() * (std::cosh(r_query) - 1.0));
    queries.push_back(from_polar(rho, kTwoPi * rng_q.uniform()));
  }
  return coupled_agreement(sites, atoms, queries);
}

}  // namespace

double coupled_agreement(const std::vector<DiskPoint>& sites,
                         const std::vector<IdealAtom>& atoms,
                         const std::vector<DiskPoint>& queries) {
  if (sites.empty() || sites.size() != atoms.size())
    throw std::invalid_argument("coupled_agreement: sites and atoms must pair up");
  if (queries.empty()) throw std::invalid_argument("coupled_agreement: no queries");
  long long agree = 0;
  for (const DiskPoint& y : queries) {
    std::size_t best_d = 0, best_b = 0;
    double vd = std::numeric_limits<double>::infinity();
    double vb = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const double dv = hyperbolic_distance(sites[i], y);
      if (dv < vd) {
        vd = dv;
        best_d = i;
      }
      const double bv = busemann(IdealPoint(atoms[i].xi), y) + atoms[i].s;
      if (bv < vb) {
        vb = bv;
        best_b = i;
      }
    }
    if (best_d == best_b) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(queries.size());
}

TestReport convergence_experiment(const ConvergenceParams& params, const SeedStream& seed) {
  if (params.intensities.size() < 2)
    throw std::invalid_argument("convergence_experiment: need at least two intensities");
  for (std::size_t i = 0; i + 1 < params.intensities.size(); ++i)
    if (!(params.intensities[i] > params.intensities[i + 1]))
      throw std::invalid_argument("convergence_experiment: intensities must be strictly decreasing");
  if (!(params.intensities.back() > 0.0))
    throw std::invalid_argument("convergence_experiment: intensities must be positive");

  TestReport rep;
  rep.harness = "ipvt-convergence";
  rep.seed = seed.describe();
  rep.n = params.replicas;
  {
    std::ostringstream os;
    os << "r_query=" << params.r_query << " n_queries=" << params.n_queries
       << " floor=" << params.floor_final << " intensities=";
    for (std::size_t i = 0; i < params.intensities.size(); ++i)
      os << (i ? "," : "") << params.intensities[i];
    rep.params = os.str();
  }

  std::vector<MeanSe> stats;
  for (std::size_t ti = 0; ti < params.intensities.size(); ++ti) {
    const double t = params.intensities[ti];
    const auto fractions = replica_map<double>(
        static_cast<std::size_t>(params.replicas), [&](std::size_t j) {
          return agreement_replica(t, params.r_query, params.n_queries,
                                   seed.child(ti).child(j));
        });
    const MeanSe ms = mean_se(fractions);
    stats.push_back(ms);
    std::ostringstream lbl;
    lbl << "t=" << t;
    rep.rows.push_back({lbl.str(), ms.mean, ms.se, 0.0, true, false});
  }

  bool pass = true;
  for (std::size_t i = 0; i + 1 < stats.size(); ++i) {
    const double tol = 2.0 * std::sqrt(stats[i].se * stats[i].se + stats[i + 1].se * stats[i + 1].se);
    if (stats[i + 1].mean < stats[i].mean - tol) {
      pass = false;
      rep.rows[i + 1].pass = false;
    }
  }
  if (stats.back().mean < params.floor_final) {
    pass = false;
    rep.rows.back().pass = false;
  }
  rep.estimate = stats.back().mean;
  rep.se = stats.back().se;
  rep.pass = pass;
  return rep;
}

double box_mass(const BoxEvent& box) {
  return ((box.xi_hi - box.xi_lo) / kTwoPi) * (std::exp(box.s_hi) - std::exp(box.s_lo));
}

bool atom_in_box(const IdealAtom& atom, const BoxEvent& box) {
  return atom.xi >= box.xi_lo && atom.xi < box.xi_hi && atom.s >= box.s_lo && atom.s < box.s_hi;
}

long long count_atoms_in_box(const std::vector<IdealAtom>& atoms, const BoxEvent& box) {
  long long n = 0;
  for (const auto& a : atoms)
    if (atom_in_box(a, box)) ++n;
  return n;
}

std::vector<IdealAtom> sample_atoms_in_box(const BoxEvent& box, Rng& rng) {
  if (!(box.xi_lo >= 0.0 && box.xi_lo < box.xi_hi && box.xi_hi <= kTwoPi))
    throw std::invalid_argument("sample_atoms_in_box: bad angle interval");
  if (!(box.s_lo < box.s_hi)) throw std::invalid_argument("sample_atoms_in_box: bad height interval");
  const double w_lo = std::exp(box.s_lo);
  const double mass = box_mass(box);
  const long long n = sample_poisson_count(mass, rng);
  std::vector<IdealAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    IdealAtom a;
    a.xi = box.xi_lo + (box.xi_hi - box.xi_lo) * rng.uniform();
    a.s = std::log(w_lo + (std::exp(box.s_hi) - w_lo) * rng.uniform_pos());
    atoms.push_back(a);
  }
  return atoms;
}

TestReport mixing_experiment(const MixingParams& params, const SeedStream& seed) {
  if (params.lengths.empty()) throw std::invalid_argument("mixing_experiment: no lengths");
  for (std::size_t i = 0; i + 1 < params.lengths.size(); ++i)
    if (params.lengths[i] > params.lengths[i + 1])
      throw std::invalid_argument("mixing_experiment: lengths must be nondecreasing");

  TestReport rep;
  rep.harness = "ipvt-mixing";
  rep.seed = seed.describe();
  rep.n = params.replicas;
  {
    std::ostringstream os;
    os << "A=[" << params.a.xi_lo << "," << params.a.xi_hi << ")x[" << params.a.s_lo << ","
       << params.a.s_hi << ") B=[" << params.b.xi_lo << "," << params.b.xi_hi << ")x["
       << params.b.s_lo << "," << params.b.s_hi << ")";
    rep.params = os.str();
  }

  const auto n = static_cast<std::size_t>(params.replicas);
  std::vector<double> covs, ses;
  double mu_a = 0.0, mu_a_se = 0.0;

  for (std::size_t li = 0; li < params.lengths.size(); ++li) {
    const double length = params.lengths[li];
    const Isometry g = Isometry::translation(length, 0.0);
    const Isometry g_inv = g.inverse();

    struct Pair {
      double u, v;
    };
    const auto pairs = replica_map<Pair>(n, [&](std::size_t j) {
      const SeedStream s = seed.child(li).child(j);
      // exact joint sample of the process on (B box) union (g A box): the B
      // part directly, the rest as the transport of an A-box sample with the
      // overlap removed
      Rng rng_b = s.child(0).rng();
      const auto part_b = sample_atoms_in_box(params.b, rng_b);
      Rng rng_a = s.child(1).rng();
      const auto part_a_raw = sample_atoms_in_box(params.a, rng_a);

      long long count_b = static_cast<long long>(part_b.size());
      long long count_ga = 0;
      for (const auto& a : part_a_raw) {
        const IdealAtom ta = act_on_atom(g, a);
        if (!atom_in_box(ta, params.b)) ++count_ga;  // overlap handled below
      }
      for (const auto& p : part_b)
        if (atom_in_box(act_on_atom(g_inv, p), params.a)) ++count_ga;

      Pair pr;
      pr.u = count_ga >= params.a.min_count ? 1.0 : 0.0;
      pr.v = count_b >= params.b.min_count ? 1.0 : 0.0;
      return pr;
    });

    double su = 0.0, sv = 0.0;
    for (const auto& p : pairs) {
      su += p.u;
      sv += p.v;
    }
    const double nd = static_cast<double>(n);
    const double ubar = su / nd, vbar = sv / nd;
    double cov = 0.0, m2 = 0.0;
    for (const auto& p : pairs) {
      const double w = (p.u - ubar) * (p.v - vbar);
      cov += w;
      m2 += w * w;
    }
    cov /= nd - 1.0;
    const double var_w = std::max(0.0, m2 / nd - cov * cov);
    const double se = std::sqrt(var_w / nd);

    std::ostringstream lbl;
    lbl << "L=" << length;
    ReportRow row{lbl.str(), cov, se, se > 0.0 ? cov / se : 0.0, true, false};
    rep.rows.push_back(row);
    covs.push_back(cov);
    ses.push_back(se);

    if (li + 1 == params.lengths.size()) {
      mu_a = ubar;
      mu_a_se = std::sqrt(ubar * (1.0 - ubar) / nd);
    }
  }

  rep.rows.push_back({"mu(A)", mu_a, mu_a_se, 0.0, true, false});

  bool pass = std::abs(covs.back()) < 3.0 * ses.back();
  if (!pass) rep.rows[covs.size() - 1].pass = false;
  const bool same_event = params.a.xi_lo == params.b.xi_lo && params.a.xi_hi == params.b.xi_hi &&
                          params.a.s_lo == params.b.s_lo && params.a.s_hi == params.b.s_hi &&
                          params.a.min_count == params.b.min_count;
  if (same_event && params.lengths.front() == 0.0 && params.lengths.size() > 1) {
    // with A = B the sequence starts at Var(1_A) > 0 and must have decayed
    if (!(std::abs(covs.back()) < std::abs(covs.front()))) pass = false;
  }
  rep.estimate = covs.back();
  rep.se = ses.back();
  rep.z = ses.back() > 0.0 ? covs.back() / ses.back() : 0.0;
  rep.statistic = rep.z;
  rep.pass = pass;
  return rep;
}

void write_ideal_configuration(std::ostream& out, const IdealConfiguration& ic) {
  out << "rvalid=" << format_double(ic.r_valid) << " seed=" << ic.seed_desc << "\n";
  for (const auto& a : ic.atoms)
    out << "xi=" << format_double(a.xi) << " s=" << format_double(a.s) << "\n";
}

IdealConfiguration read_ideal_configuration(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("rvalid=", 0) != 0)
    throw std::runtime_error("read_ideal_configuration: missing header");
  IdealConfiguration ic;
  {
    std::istringstream hs(line);
    std::string tok;
    while (hs >> tok) {
      if (tok.rfind("rvalid=", 0) == 0) ic.r_valid = std::stod(tok.substr(7));
      if (tok.rfind("seed=", 0) == 0) ic.seed_desc = tok.substr(5);
    }
  }
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a >> b) || a.rfind("xi=", 0) != 0 || b.rfind("s=", 0) != 0)
      throw std::runtime_error("read_ideal_configuration: bad atom line");
    IdealAtom atom;
    atom.xi = std::stod(a.substr(3));
    atom.s = std::stod(b.substr(2));
    ic.atoms.push_back(atom);
  }
  if (ic.atoms.empty()) throw std::runtime_error("read_ideal_configuration: no atoms");
  sort_atoms(ic.atoms);
  for (const auto& a : ic.atoms)
    if (a.s > ic.ceiling() + 1e-9)
      throw std::runtime_error("read_ideal_configuration: atom above the certified ceiling");
  return ic;
}

}  // namespace ipvt
