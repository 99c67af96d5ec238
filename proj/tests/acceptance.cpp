// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero on any failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "soficlab/entropy.hpp"
#include "soficlab/independence.hpp"
#include "soficlab/quasitiling.hpp"
#include "soficlab/spectral.hpp"

using namespace soficlab;

namespace {

const GroupSpec kZ = GroupSpec::lattice(1);

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit_s;
  std::function<Outcome()> run;
};

#define REQUIRE_OR_FAIL(cond, msg)                 \
  do {                                             \
    if (!(cond)) return {false, std::string(msg)}; \
  } while (0)

// ---- 1. full-shift entropy: value exactly log k -------------------------

Outcome full_shift_entropy() {
  for (int k : {2, 3}) {
    EntropySchedule schedule;
    schedule.action = full_shift(kZ, k);
    for (int n = 4; n <= 12; ++n)
      schedule.levels.push_back(quotient_sofic(kZ, {n}, 2));
    schedule.f_radii = {1, 2};
    schedule.deltas = {0.25};
    schedule.epsilons = {0.5};
    schedule.metric = MapMetric::RhoInf;
    EntropyReport report = estimate(schedule);
    for (const auto& cell : report.cells) {
      REQUIRE_OR_FAIL(!cell.family_empty, "family unexpectedly empty");
      REQUIRE_OR_FAIL(cell.certified, "family not certified in Map");
      REQUIRE_OR_FAIL(cell.separation.bound == SeparationReport::Bound::Exact,
                      "separated count not exact");
      REQUIRE_OR_FAIL(cell.value == std::log(static_cast<double>(k)),
                      "per-level value differs from log k (tolerance 0)");
    }
  }
  return {true, "k in {2,3}, N in 4..12: every level exactly log k"};
}

// ---- 2. entropy additivity: product of full shifts ----------------------

Outcome entropy_additivity() {
  ActionSpec product = product_action(full_shift(kZ, 2), full_shift(kZ, 3));
  EntropySchedule schedule;
  schedule.action = product;
  for (int n = 4; n <= 12; ++n)
    schedule.levels.push_back(quotient_sofic(kZ, {n}, 2));
  schedule.f_radii = {1, 2};
  schedule.deltas = {0.25};
  schedule.epsilons = {0.5};
  EntropyReport report = estimate(schedule);
  for (const auto& cell : report.cells)
    REQUIRE_OR_FAIL(cell.value == std::log(6.0),
                    "product family value differs from log 6 (tolerance 0)");
  return {true, "product of full shifts 2 x 3: every level exactly log 6"};
}

// ---- 3. Fuglede-Kadison determinants -------------------------------------

double mahler_simpson(int panels) {
  auto f = [](double theta) {
    return std::log(3.0 - 2.0 * std::cos(2 * M_PI * theta));
  };
  double h = 1.0 / panels;
  double acc = f(0.0) + f(1.0);
  for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return acc * h / 3.0;
}

Outcome fk_determinant() {
  std::vector<std::vector<std::int64_t>> moduli;
  for (int n = 4; n <= 32; ++n) moduli.push_back({n});
  DetReport two_minus_t = fk_det_estimate(parse_ring_element(kZ, "2-t"), moduli);

  const DetLevel* n16 = nullptr;
  for (const auto& level : two_minus_t.levels)
    if (level.dim == 16) n16 = &level;
  REQUIRE_OR_FAIL(n16 && !n16->singular, "level N = 16 missing");
  double expect16 = std::log(65535.0) / 16.0;  // (1/16) log(2^16 - 1)
  REQUIRE_OR_FAIL(std::abs(n16->value - expect16) <= 1e-12,
                  "N = 16 value misses (1/16) log(2^16 - 1) at 1e-12");
  REQUIRE_OR_FAIL(std::abs(two_minus_t.estimate - std::log(2.0)) <= 1e-3,
                  "aggregated estimate not within 1e-3 of log 2 by N = 32");

  std::vector<std::vector<std::int64_t>> wide;
  for (int n = 8; n <= 64; ++n) wide.push_back({n});
  DetReport three = fk_det_estimate(parse_ring_element(kZ, "3-t-T"), wide);
  double oracle = mahler_simpson(20000);
  REQUIRE_OR_FAIL(std::abs(three.estimate - oracle) <= 5e-3,
                  "3 - t - t^{-1} estimate misses the Mahler oracle at 5e-3");
  std::ostringstream os;
  os << "2-t: N16 exact to 1e-12, estimate " << two_minus_t.estimate
     << "; 3-t-T vs Mahler " << std::abs(three.estimate - oracle);
  return {true, os.str()};
}

// ---- 4. det vs entropy for the constant 2 --------------------------------

Outcome det_entropy_consistency() {
  std::vector<std::vector<std::int64_t>> moduli;
  for (int n = 4; n <= 12; ++n) moduli.push_back({n});
  DetEntropyComparison cmp = det_vs_entropy(parse_ring_element(kZ, "2"), moduli);
  REQUIRE_OR_FAIL(cmp.consistent, "one-sided inequality failed");
  REQUIRE_OR_FAIL(!cmp.levels.empty(), "no usable levels");
  for (const auto& level : cmp.levels) {
    REQUIRE_OR_FAIL(level.det_value == std::log(2.0),
                    "det level not exactly log 2");
    REQUIRE_OR_FAIL(level.entropy_lower == std::log(2.0),
                    "entropy lower bound not exactly log 2");
  }
  return {true, "f = 2: det and entropy lower bound exactly log 2 per level"};
}

// ---- 5. golden-mean independence density ----------------------------------

ActionSpec golden_mean() {
  ForbiddenPattern p;
  p.cells.push_back({GroupElement{{0}}, {1}});
  p.cells.push_back({GroupElement{{1}}, {1}});
  return sft(kZ, 2, {p});
}

SetTuple binary_cylinders() {
  SetTuple tuple;
  tuple.sets.push_back(cylinder(identity(kZ), 0));
  tuple.sets.push_back(cylinder(identity(kZ), 1));
  return tuple;
}

bool golden_oracle(const std::vector<std::int64_t>& j_set) {
  if (j_set.empty()) return true;
  std::vector<std::int64_t> positions;
  for (auto s : j_set) positions.push_back(-s);
  std::int64_t lo = *std::min_element(positions.begin(), positions.end()) - 1;
  std::int64_t hi = *std::max_element(positions.begin(), positions.end()) + 1;
  int width = static_cast<int>(hi - lo + 1);
  std::set<std::vector<int>> restrictions;
  for (std::uint64_t word = 0; word < (1ull << width); ++word) {
    bool ok = true;
    for (int i = 0; i + 1 < width; ++i)
      if (((word >> i) & 1) && ((word >> (i + 1)) & 1)) ok = false;
    if (!ok) continue;
    std::vector<int> r;
    for (auto p : positions) r.push_back(static_cast<int>((word >> (p - lo)) & 1));
    restrictions.insert(std::move(r));
  }
  return restrictions.size() == (1ull << j_set.size());
}

Outcome golden_density() {
  ActionSpec gm = golden_mean();
  std::vector<GroupElement> f_set;
  for (int g = 0; g <= 9; ++g) f_set.push_back(GroupElement{{g}});
  DensityResult r = independence_density(gm, f_set, binary_cylinders());
  REQUIRE_OR_FAIL(r.exact, "search did not complete exactly");
  REQUIRE_OR_FAIL(r.j_set.size() == 5, "max independence subset is not 5");
  REQUIRE_OR_FAIL(r.q == 0.5, "density is not exactly 1/2");

  std::size_t oracle_best = 0;
  for (int mask = 0; mask < (1 << 10); ++mask) {
    std::vector<std::int64_t> j;
    for (int i = 0; i < 10; ++i)
      if (mask & (1 << i)) j.push_back(i);
    if (j.size() > oracle_best && golden_oracle(j)) oracle_best = j.size();
  }
  REQUIRE_OR_FAIL(oracle_best == 5, "exhaustive oracle disagrees");
  return {true, "max independence subset of {0..9} has size 5 (q = 1/2)"};
}

// ---- 6. product density certificate ---------------------------------------

Outcome product_density() {
  ActionSpec gm = golden_mean();
  std::vector<GroupElement> f_set;
  for (int g = 0; g <= 7; ++g) f_set.push_back(GroupElement{{g}});
  ProductDensityReport report = product_density_check(
      gm, gm, f_set, binary_cylinders(), binary_cylinders());
  REQUIRE_OR_FAIL(report.stage1.exact && report.stage2.exact,
                  "stages not exact");
  REQUIRE_OR_FAIL(static_cast<double>(report.j1.size()) >= report.bound,
                  "|J1| < q r |F|");
  REQUIRE_OR_FAIL(report.validated, "J1 failed validation on the product");
  std::ostringstream os;
  os << "|J1| = " << report.j1.size() << " >= q r |F| = " << report.bound
     << ", validated on golden x golden";
  return {true, os.str()};
}

// ---- 7. Karpovsky-Milman extraction vs brute force ------------------------

Outcome km_against_oracle() {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 4 + static_cast<int>(rng() % 9);   // 4..12
    int k = 2 + static_cast<int>(rng() % 2);   // 2..3
    int count = 2 + static_cast<int>(rng() % 199);
    std::set<std::vector<int>> pool;
    for (int i = 0; i < count; ++i) {
      std::vector<int> t(n);
      for (auto& v : t) v = static_cast<int>(rng() % k);
      pool.insert(std::move(t));
    }
    std::vector<std::vector<int>> s(pool.begin(), pool.end());
    KmResult got = km_extract(s, k);
    REQUIRE_OR_FAIL(got.exact, "extractor fell back from exact mode");

    // brute force over all coordinate subsets, pruned only by |S| >= k^|I|
    std::size_t best = 0;
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> coords;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) coords.push_back(i);
      double needed = std::pow(static_cast<double>(k),
                               static_cast<double>(coords.size()));
      if (needed > static_cast<double>(s.size())) continue;
      std::set<std::vector<int>> restrictions;
      for (const auto& t : s) {
        std::vector<int> r;
        for (int c : coords) r.push_back(t[c]);
        restrictions.insert(std::move(r));
      }
      if (static_cast<double>(restrictions.size()) == needed)
        best = std::max(best, coords.size());
    }
    if (got.coords.size() != best) {
      std::ostringstream os;
      os << "mismatch at trial " << trial << ": extractor "
         << got.coords.size() << " vs oracle " << best;
      return {false, os.str()};
    }
  }
  return {true, "200 random instances (n <= 12, k <= 3) match the oracle"};
}

// ---- 8. UPE construction for X_{2-t} --------------------------------------

Outcome upe_construction() {
  ActionSpec action =
      algebraic_action(RingMatrix::scalar(parse_ring_element(kZ, "2-t")), 1e-9);
  int d = 32;
  SoficMap sigma = quotient_sofic(kZ, {d}, 40);
  std::vector<BasePoint> base(2);
  base[1].values[identity(kZ)] = {1};
  auto k_set = ball(kZ, 1);

  AlgebraicIndependenceOptions opts;
  opts.delta = 0.1;
  opts.f_radius = 1;
  opts.witness_samples = 32;
  AlgebraicIndependenceCertificate cert =
      algebraic_independence_set(action, k_set, sigma, base, std::nullopt, opts);

  double bound = d / (2.0 * k_set.size() * k_set.size());
  REQUIRE_OR_FAIL(static_cast<double>(cert.j_set.size()) >= bound,
                  "|J| < d / (2 |K|^2)");
  REQUIRE_OR_FAIL(cert.validation.failures == 0,
                  "a sampled witness failed is_microstate at delta = 0.1");
  REQUIRE_OR_FAIL(cert.validation.omegas_checked >= 32,
                  "not enough sampled witnesses");
  std::ostringstream os;
  os << "|J| = " << cert.j_set.size() << " >= " << bound << ", "
     << cert.validation.omegas_checked << " sampled witnesses pass";
  return {true, os.str()};
}

// ---- 9. quasitiling of Z/60 and (Z/12)^2 ----------------------------------

Outcome quasitiling_cover() {
  double eta = 0.2;
  {
    SoficMap sigma = quotient_sofic(kZ, {60}, 5);
    IndexSet v(60);
    for (int i = 0; i < 60; ++i) v[i] = i;
    TileSystem tiles =
        quasitile(sigma, {ball(kZ, 2), ball(kZ, 5)}, v, 0.0, eta);
    validate_tile_system(tiles, sigma);
    REQUIRE_OR_FAIL(tiles.cover_fraction >= 1.0 - eta,
                    "Z/60 cover below 1 - eta");
  }
  {
    GroupSpec z2 = GroupSpec::lattice(2);
    SoficMap sigma = quotient_sofic(z2, {12, 12}, 4);
    IndexSet v(144);
    for (int i = 0; i < 144; ++i) v[i] = i;
    TileSystem tiles =
        quasitile(sigma, {ball(z2, 1), ball(z2, 2)}, v, 0.0, eta);
    validate_tile_system(tiles, sigma);
    REQUIRE_OR_FAIL(tiles.cover_fraction >= 1.0 - eta,
                    "(Z/12)^2 cover below 1 - eta");
  }
  return {true, "both quotients tiled with cover >= 0.8, all invariants recounted"};
}

// ---- 10. matched tiles + commuting bijection -------------------------------

Outcome commuting_bijection_trials() {
  int d = 240;
  SoficMap sigma = quotient_sofic(kZ, {d}, 70);
  double tau = 0.25, epsilon = 0.2;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> all(d);
    for (int i = 0; i < d; ++i) all[i] = i;
    auto pick = [&](std::vector<int> v) {
      std::shuffle(v.begin(), v.end(), rng);
      v.resize(d / 2);
      std::sort(v.begin(), v.end());
      return v;
    };
    IndexSet y = pick(all), z = pick(all);
    CommutingBijectionResult r = commuting_bijection(sigma, y, z, tau, epsilon);

    std::vector<char> seen(d, 0);
    for (int q : r.permutation) {
      REQUIRE_OR_FAIL(q >= 0 && q < d && !seen[q], "phi is not a permutation");
      seen[q] = 1;
    }
    if (!(r.max_defect < epsilon)) {
      std::ostringstream os;
      os << "seed " << seed << ": defect " << r.max_defect << " >= " << epsilon;
      return {false, os.str()};
    }
    if (!(r.overlap >= r.lambda_bound)) {
      std::ostringstream os;
      os << "seed " << seed << ": overlap " << r.overlap << " < "
         << r.lambda_bound;
      return {false, os.str()};
    }
  }
  return {true, "20 seeded trials: permutation verified, defect < 0.2, "
                "overlap >= tau^2 (1 - tau') / 384"};
}

// ---- 11. residually finite mixing inequality --------------------------------

Outcome rf_mixing() {
  std::mt19937_64 rng(515);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 2 + static_cast<int>(rng() % 59);
    GroupSpec q = GroupSpec::cyclic_quotient({n});
    int size = static_cast<int>(rng() % (n + 1));
    IndexSet y;
    {
      std::vector<int> all(n);
      for (int i = 0; i < n; ++i) all[i] = i;
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(size);
      std::sort(all.begin(), all.end());
      y = all;
    }
    RfMixingReport r = rf_mixing_check(q, y);
    REQUIRE_OR_FAIL(r.identity_exact, "averaged identity failed exactly");
    REQUIRE_OR_FAIL(
        r.witness_sym_diff * n >= 2 * static_cast<std::int64_t>(size) * (n - size),
        "witness below the averaged bound");
  }
  return {true, "1000 random subsets of Z/N (N <= 60): identity exact, "
                "witnesses achieve the bound"};
}

// ---- 12. randomized invariant suites ----------------------------------------

Outcome invariant_suites() {
  std::mt19937_64 rng(99);

  // group-ring algebra laws (>= 10^3 random triples across group kinds)
  {
    auto random_elem = [&](const GroupSpec& spec) {
      std::uniform_int_distribution<int> coeff(-3, 3);
      RingElement f(spec, CoeffMode::Exact);
      for (int i = 0; i < 3; ++i) {
        GroupElement s = identity(spec);
        if (spec.kind == GroupSpec::Kind::FreeGroup) {
          int len = static_cast<int>(rng() % 3);
          for (int j = 0; j < len; ++j) {
            std::int64_t g = 1 + static_cast<std::int64_t>(rng() % spec.rank);
            if (rng() % 2) g = -g;
            if (!s.data.empty() && s.data.back() == -g)
              s.data.pop_back();
            else
              s.data.push_back(g);
          }
        } else {
          for (auto& v : s.data) v = static_cast<std::int64_t>(rng() % 5) - 2;
          if (spec.kind == GroupSpec::Kind::CyclicQuotient)
            for (int j = 0; j < spec.rank; ++j)
              s.data[j] = ((s.data[j] % spec.moduli[j]) + spec.moduli[j]) %
                          spec.moduli[j];
        }
        f.add_term(s, Int(coeff(rng)));
      }
      return f;
    };
    for (const GroupSpec& spec :
         {GroupSpec::lattice(1), GroupSpec::free_group(2),
          GroupSpec::cyclic_quotient({6})}) {
      for (int trial = 0; trial < 400; ++trial) {
        RingElement f = random_elem(spec), g = random_elem(spec),
                    h = random_elem(spec);
        REQUIRE_OR_FAIL((f * g) * h == f * (g * h), "associativity failed");
        REQUIRE_OR_FAIL(f * (g + h) == f * g + f * h, "distributivity failed");
        REQUIRE_OR_FAIL(involution(f * g) == involution(g) * involution(f),
                        "involution antihomomorphism failed");
        REQUIRE_OR_FAIL(l1_norm(f * g) <= l1_norm(f) * l1_norm(g) + 1e-9,
                        "l1 submultiplicativity failed");
      }
    }
  }

  // l1-inverse residuals (>= 10^3 random dominant elements)
  {
    std::uniform_int_distribution<int> off(-2, 2);
    for (int trial = 0; trial < 1000; ++trial) {
      RingElement f(kZ, CoeffMode::Exact);
      int a = off(rng), b = off(rng);
      f.add_term(GroupElement{{1}}, Int(a));
      f.add_term(GroupElement{{-1}}, Int(b));
      f.add_term(GroupElement{{0}}, Int(std::abs(a) + std::abs(b) + 1 + trial % 2));
      L1InverseOptions opts;
      opts.tolerance = 1e-7;
      L1Inverse inv = l1_inverse(RingMatrix::scalar(f), opts);
      REQUIRE_OR_FAIL(inv.residual <= 2 * opts.tolerance * l1_norm(f),
                      "l1 inverse residual bound failed");
    }
  }

  // pseudometric axioms on random microstates (>= 10^3 triples)
  {
    ActionSpec shift = full_shift(kZ, 3);
    SoficMap sigma = quotient_sofic(kZ, {6}, 1);
    auto random_ms = [&] {
      std::vector<int> omega(6);
      for (auto& v : omega) v = static_cast<int>(rng() % 3);
      return fullshift_microstate(shift, omega, sigma, 1);
    };
    for (int trial = 0; trial < 1000; ++trial) {
      Microstate a = random_ms(), b = random_ms(), c = random_ms();
      double ab = rho2_maps(shift, a, b);
      REQUIRE_OR_FAIL(ab == rho2_maps(shift, b, a), "rho2 symmetry failed");
      REQUIRE_OR_FAIL(
          rho2_maps(shift, a, c) <= ab + rho2_maps(shift, b, c) + 1e-12,
          "rho2 triangle inequality failed");
      REQUIRE_OR_FAIL(ab <= rhoinf_maps(shift, a, b) + 1e-15,
                      "rho2 <= rhoinf failed");
    }
  }

  // N_epsilon monotonicity across an epsilon grid (>= 10^3 family/epsilon cases)
  {
    ActionSpec shift = full_shift(kZ, 2);
    SoficMap sigma = quotient_sofic(kZ, {6}, 1);
    for (int fam = 0; fam < 250; ++fam) {
      std::vector<Microstate> members;
      for (int i = 0; i < 24; ++i) {
        std::vector<int> omega(6);
        for (auto& v : omega) v = static_cast<int>(rng() % 2);
        members.push_back(fullshift_microstate(shift, omega, sigma, 1));
      }
      MicrostateFamily family{members};
      std::int64_t last = std::numeric_limits<std::int64_t>::max();
      for (double eps : {0.2, 0.4, 0.6, 0.8}) {
        SeparationReport rep =
            separated_count(shift, family, eps, MapMetric::Rho2);
        REQUIRE_OR_FAIL(*rep.count <= last, "N_eps increased with eps");
        REQUIRE_OR_FAIL(*rep.count >= 1, "empty count on nonempty family");
        last = *rep.count;
      }
    }
  }

  // decomposition-split validity (>= 10^3 randomized splits)
  {
    ActionSpec shift = full_shift(kZ, 4);
    SoficMap sigma = quotient_sofic(kZ, {8}, 2);
    SetTuple tuple;
    tuple.sets.push_back(cylinder(identity(kZ), std::set<int>{0, 1}));
    tuple.sets.push_back(cylinder(identity(kZ), std::set<int>{2, 3}));
    ConstraintSet a11 = cylinder(identity(kZ), 0);
    ConstraintSet a12 = cylinder(identity(kZ), 1);
    WitnessGenerator gen = fullshift_witness_generator(shift, tuple, sigma, 1);
    auto f_set = ball(kZ, 1);
    for (int trial = 0; trial < 1000; ++trial) {
      std::set<int> j_raw;
      int size = 1 + static_cast<int>(rng() % 4);
      while (static_cast<int>(j_raw.size()) < size)
        j_raw.insert(static_cast<int>(rng() % 8));
      std::vector<int> j(j_raw.begin(), j_raw.end());
      DecompositionResult r = decomposition_split(
          shift, j, tuple, a11, a12, f_set, 0.25, sigma, gen);
      REQUIRE_OR_FAIL(r.validation.verdict == Tristate::True,
                      "split output failed sofic_independence_check");
      REQUIRE_OR_FAIL(r.sub_j.size() == j.size(),
                      "full shift split should keep everything");
    }
  }

  return {true, "algebra laws, l1 residuals, pseudometric axioms, N_eps "
                "monotonicity, decomposition splits: all randomized cases pass"};
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"criterion-01 full-shift-entropy", 10.0, full_shift_entropy},
      {"criterion-02 entropy-additivity", 10.0, entropy_additivity},
      {"criterion-03 fk-determinant", 30.0, fk_determinant},
      {"criterion-04 det-entropy-consistency", 10.0, det_entropy_consistency},
      {"criterion-05 independence-density", 60.0, golden_density},
      {"criterion-06 product-density", 60.0, product_density},
      {"criterion-07 karpovsky-milman", 120.0, km_against_oracle},
      {"criterion-08 upe-construction", 60.0, upe_construction},
      {"criterion-09 quasitiling", 30.0, quasitiling_cover},
      {"criterion-10 commuting-bijection", 120.0, commuting_bijection_trials},
      {"criterion-11 rf-mixing", 30.0, rf_mixing},
      {"criterion-12 invariant-suites", 120.0, invariant_suites},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& err) {
      outcome = {false, std::string("exception: ") + err.what()};
    }
    double elapsed = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    bool in_time = elapsed <= criterion.time_limit_s;
    bool pass = outcome.pass && in_time;
    if (!pass) ++failures;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (pass ? "PASS " : "FAIL ") << criterion.name << " (" << elapsed
         << "s/" << criterion.time_limit_s << "s): " << outcome.detail;
    if (!in_time) line << " [over time limit]";
    std::cout << line.str() << std::endl;
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all 12 acceptance criteria passed" << std::endl;
  return 0;
}
