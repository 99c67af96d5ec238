#include <doctest.h>

#include <cmath>
#include <random>

#include "soficlab/entropy.hpp"
#include "soficlab/microstate.hpp"

using namespace soficlab;

namespace {

const GroupSpec kZ = GroupSpec::lattice(1);

Microstate constant_microstate(const ActionSpec& action, const SoficMap& sigma,
                               int radius, int symbol) {
  Microstate phi;
  phi.sigma = &sigma;
  for (int a = 0; a < sigma.d(); ++a)
    phi.entries.push_back(constant_pattern(action, radius, symbol));
  return phi;
}

std::vector<int> random_omega(int k, int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, k - 1);
  std::vector<int> omega(d);
  for (auto& v : omega) v = dist(rng);
  return omega;
}

}  // namespace

TEST_CASE("map pseudometrics") {
  ActionSpec shift = full_shift(kZ, 3);
  SoficMap sigma = quotient_sofic(kZ, {4}, 2);

  Microstate phi = fullshift_microstate(shift, {0, 1, 2, 0}, sigma, 1);
  Microstate psi = fullshift_microstate(shift, {0, 1, 2, 1}, sigma, 1);

  CHECK(rho2_maps(shift, phi, phi) == 0.0);
  CHECK(rhoinf_maps(shift, phi, phi) == 0.0);
  // exactly one index differs on d = 4: rho_2 = 1/2, rho_inf = 1
  CHECK(rho2_maps(shift, phi, psi) == doctest::Approx(0.5));
  CHECK(rhoinf_maps(shift, phi, psi) == 1.0);
}

TEST_CASE("rho_2 squared times d equals the disagreement recount") {
  ActionSpec shift = full_shift(kZ, 2);
  SoficMap sigma = quotient_sofic(kZ, {20}, 1);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_omega(2, 20, rng);
    auto b = random_omega(2, 20, rng);
    Microstate phi = fullshift_microstate(shift, a, sigma, 1);
    Microstate psi = fullshift_microstate(shift, b, sigma, 1);
    int disagreements = 0;
    for (int i = 0; i < 20; ++i)
      if (a[i] != b[i]) ++disagreements;
    double r2 = rho2_maps(shift, phi, psi);
    CHECK(r2 * r2 * 20 == doctest::Approx(disagreements).epsilon(1e-9));
    CHECK(r2 <= rhoinf_maps(shift, phi, psi) + 1e-12);
  }
}

TEST_CASE("constant microstates are fixed points of the check") {
  ActionSpec shift = full_shift(kZ, 2);
  SoficMap sigma = quotient_sofic(kZ, {8}, 2);
  Microstate phi = constant_microstate(shift, sigma, 2, 1);
  auto f_set = ball(kZ, 2);
  for (double delta : {1e-6, 0.1, 0.9}) {
    MicrostateCheck check = is_microstate(shift, phi, f_set, delta);
    CHECK(check.ok);
    CHECK(check.max_defect == 0.0);
  }
}

TEST_CASE("fullshift microstates over exact quotients have zero defect") {
  ActionSpec shift = full_shift(kZ, 2);
  SoficMap sigma = quotient_sofic(kZ, {10}, 3);
  std::mt19937_64 rng(8);
  auto f_set = ball(kZ, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Microstate phi =
        fullshift_microstate(shift, random_omega(2, 10, rng), sigma, 2);
    MicrostateCheck check = is_microstate(shift, phi, f_set, 1e-9);
    CHECK(check.ok);
    for (const auto& [s, defect] : check.defects) CHECK(defect == 0.0);
  }
}

TEST_CASE("identity coordinate of phi_omega is omega") {
  ActionSpec shift = full_shift(kZ, 2);
  SoficMap sigma = quotient_sofic(kZ, {5}, 1);
  std::vector<int> omega = {1, 0, 1, 0, 1};
  Microstate phi = fullshift_microstate(shift, omega, sigma, 1);
  for (int a = 0; a < 5; ++a)
    CHECK(phi.at(a).symbol_at(identity(kZ)) == omega[a]);
}

TEST_CASE("equivariance violation is detected") {
  ActionSpec shift = full_shift(kZ, 2);
  SoficMap sigma = quotient_sofic(kZ, {6}, 1);
  // entries whose identity coordinate disagrees with every shift
  Microstate phi;
  phi.sigma = &sigma;
  for (int a = 0; a < 6; ++a) {
    PointPattern x;
    x.group = kZ;
    x.radius = 1;
    // act(+1, phi(a)) reads the -1 coordinate; make it disagree with the
    // identity coordinate of phi(a+1) at every index.
    x.symbols[GroupElement{{-1}}] = a % 2;
    x.symbols[GroupElement{{0}}] = a % 2;
    x.symbols[GroupElement{{1}}] = a % 2;
    phi.entries.push_back(x);
  }
  auto f_set = std::vector<GroupElement>{GroupElement{{1}}};
  MicrostateCheck check = is_microstate(shift, phi, f_set, 0.999);
  CHECK_FALSE(check.ok);
  CHECK(check.max_defect == 1.0);
}

TEST_CASE("rho_inf separates distinct omegas at distance one") {
  ActionSpec shift = full_shift(kZ, 2);
  SoficMap sigma = quotient_sofic(kZ, {6}, 1);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_omega(2, 6, rng);
    auto b = random_omega(2, 6, rng);
    Microstate phi = fullshift_microstate(shift, a, sigma, 1);
    Microstate psi = fullshift_microstate(shift, b, sigma, 1);
    CHECK(rhoinf_maps(shift, phi, psi) == (a == b ? 0.0 : 1.0));
  }
}

TEST_CASE("algebraic microstates for A = (2)") {
  RingMatrix two = RingMatrix::scalar(parse_ring_element(kZ, "2"));
  ActionSpec alg = algebraic_action(two);
  SoficMap sigma = quotient_sofic(kZ, {8}, 2);
  std::vector<std::vector<std::int64_t>> xi;
  for (int a = 0; a < 8; ++a) xi.push_back({a % 2});
  Microstate phi = algebraic_microstate(alg, xi, sigma, 2.0, 1);
  for (int a = 0; a < 8; ++a) {
    CHECK(phi.at(a).torus_at(identity(kZ))[0] ==
          doctest::Approx((a % 2) / 2.0));
    CHECK(phi.at(a).tail == 0.0);  // exact inverse for a constant
  }
  auto f_set = ball(kZ, 1);
  CHECK(is_microstate(alg, phi, f_set, 0.01).ok);
}

TEST_CASE("zero xi gives the zero microstate, in Map for every delta") {
  RingMatrix m = RingMatrix::scalar(parse_ring_element(kZ, "2-t"));
  ActionSpec alg = algebraic_action(m, 1e-9);
  SoficMap sigma = quotient_sofic(kZ, {16}, 40);
  std::vector<std::vector<std::int64_t>> xi(16, {0});
  Microstate phi = algebraic_microstate(alg, xi, sigma, 1.0, 1);
  for (int a = 0; a < 16; ++a)
    CHECK(phi.at(a).torus_at(identity(kZ))[0] == 0.0);
  CHECK(is_microstate(alg, phi, ball(kZ, 1), 1e-6).ok);
}

TEST_CASE("algebraic microstates for 2 - t pass the Map check") {
  RingMatrix m = RingMatrix::scalar(parse_ring_element(kZ, "2-t"));
  ActionSpec alg = algebraic_action(m, 1e-9);
  SoficMap sigma = quotient_sofic(kZ, {32}, 40);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> dist(-3, 3);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::vector<std::int64_t>> xi(32);
    for (auto& v : xi) v = {dist(rng)};
    Microstate phi = algebraic_microstate(alg, xi, sigma, 3.0, 1);
    MicrostateCheck check = is_microstate(alg, phi, ball(kZ, 1), 0.1);
    CHECK(check.ok);
    CHECK(check.max_defect < 1e-6);  // exact quotient: only truncation noise
  }
}

TEST_CASE("algebraic microstate rejects insufficient support") {
  RingMatrix m = RingMatrix::scalar(parse_ring_element(kZ, "2-t"));
  ActionSpec alg = algebraic_action(m, 1e-9);
  SoficMap sigma = quotient_sofic(kZ, {32}, 2);  // far too small a support
  std::vector<std::vector<std::int64_t>> xi(32, {1});
  CHECK_THROWS_AS(algebraic_microstate(alg, xi, sigma, 1.0, 1), MismatchError);
}

TEST_CASE("separated counting: exhaustive pairwise oracle on {1,2}^3") {
  ActionSpec shift = full_shift(kZ, 2);
  SoficMap sigma = quotient_sofic(kZ, {3}, 1);
  std::vector<Microstate> members;
  for (int bits = 0; bits < 8; ++bits)
    members.push_back(fullshift_microstate(
        shift, {bits & 1, (bits >> 1) & 1, (bits >> 2) & 1}, sigma, 1));

  // oracle: all pairwise rho_inf distances equal 1
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      CHECK(rhoinf_maps(shift, members[i], members[j]) == 1.0);

  MicrostateFamily family{members};
  SeparationReport report =
      separated_count(shift, family, 0.5, MapMetric::RhoInf);
  CHECK(report.bound == SeparationReport::Bound::Exact);
  CHECK(report.count == 8);
}

TEST_CASE("separated counting handles pseudometric collapse") {
  ActionSpec shift = full_shift(kZ, 2);
  SoficMap sigma = quotient_sofic(kZ, {3}, 1);
  std::vector<Microstate> members(4, fullshift_microstate(shift, {0, 1, 0}, sigma, 1));
  MicrostateFamily family{members};
  SeparationReport report =
      separated_count(shift, family, 0.5, MapMetric::RhoInf);
  CHECK(report.count == 1);
}

TEST_CASE("epsilon above the diameter leaves one point") {
  ActionSpec shift = full_shift(kZ, 2);
  SoficMap sigma = quotient_sofic(kZ, {4}, 1);
  std::vector<Microstate> members;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5; ++i)
    members.push_back(
        fullshift_microstate(shift, random_omega(2, 4, rng), sigma, 1));
  MicrostateFamily family{members};
  SeparationReport report =
      separated_count(shift, family, 1.5, MapMetric::RhoInf);
  CHECK(report.count == 1);
}

TEST_CASE("greedy packing is a lower bound and N is monotone in epsilon") {
  ActionSpec shift = full_shift(kZ, 2);
  SoficMap sigma = quotient_sofic(kZ, {8}, 1);
  std::vector<Microstate> members;
  std::mt19937_64 rng(9);
  for (int i = 0; i < 40; ++i)
    members.push_back(
        fullshift_microstate(shift, random_omega(2, 8, rng), sigma, 1));
  MicrostateFamily family{members};

  double last = std::numeric_limits<double>::infinity();
  for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    SeparationOptions exact_opts;
    SeparationReport exact =
        separated_count(shift, family, eps, MapMetric::Rho2, exact_opts);
    SeparationOptions greedy_opts;
    greedy_opts.mode = SeparationOptions::Mode::Greedy;
    greedy_opts.seed = 17;
    SeparationReport greedy =
        separated_count(shift, family, eps, MapMetric::Rho2, greedy_opts);
    CHECK(*greedy.count <= *exact.count);
    CHECK(*greedy.count >= 1);
    CHECK(static_cast<double>(*exact.count) <= last);
    last = static_cast<double>(*exact.count);
  }
}

TEST_CASE("power family counting matches the materialized family") {
  ActionSpec shift = full_shift(kZ, 3);
  SoficMap sigma = quotient_sofic(kZ, {4}, 1);
  MicrostateFamily fam = fullshift_family(shift, sigma, 1);
  SeparationReport implicit =
      separated_count(shift, fam, 0.5, MapMetric::RhoInf);
  CHECK(implicit.count == 81);
  REQUIRE(implicit.power_form.has_value());
  CHECK(implicit.power_form->first == 3);
  CHECK(implicit.power_form->second == 4);

  std::vector<Microstate> members;
  std::vector<int> omega(4, 0);
  for (int code = 0; code < 81; ++code) {
    int c = code;
    for (int i = 0; i < 4; ++i) {
      omega[i] = c % 3;
      c /= 3;
    }
    members.push_back(fullshift_microstate(shift, omega, sigma, 1));
  }
  SeparationOptions opts;
  opts.pair_budget = 81 * 80 / 2 + 1;
  SeparationReport exact = separated_count(shift, MicrostateFamily{members},
                                           0.5, MapMetric::RhoInf, opts);
  CHECK(*exact.count == 81);
}

TEST_CASE("exact mode respects the pair budget") {
  ActionSpec shift = full_shift(kZ, 2);
  SoficMap sigma = quotient_sofic(kZ, {4}, 1);
  std::vector<Microstate> members;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 30; ++i)
    members.push_back(
        fullshift_microstate(shift, random_omega(2, 4, rng), sigma, 1));
  SeparationOptions opts;
  opts.pair_budget = 10;
  CHECK_THROWS_AS(separated_count(shift, MicrostateFamily{members}, 0.5,
                                  MapMetric::RhoInf, opts),
                  BudgetExhausted);
}

TEST_CASE("constant omega yields a constant microstate") {
  ActionSpec shift = full_shift(kZ, 3);
  SoficMap sigma = quotient_sofic(kZ, {7}, 2);
  Microstate phi = fullshift_microstate(shift, std::vector<int>(7, 2), sigma, 2);
  for (int a = 0; a < 7; ++a)
    for (const auto& [g, sym] : phi.at(a).symbols) CHECK(sym == 2);
}
