#include <doctest.h>

#include <cmath>
#include <random>

#include "soficlab/ring.hpp"

using namespace soficlab;

namespace {

const GroupSpec kZ = GroupSpec::lattice(1);
const GroupSpec kF2 = GroupSpec::free_group(2);

RingElement random_ring_element(const GroupSpec& spec, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> terms(0, 3);
  RingElement f(spec, CoeffMode::Exact);
  int n = terms(rng);
  for (int i = 0; i < n; ++i) {
    GroupElement s = identity(spec);
    if (spec.kind == GroupSpec::Kind::FreeGroup) {
      std::uniform_int_distribution<int> len(0, 3);
      std::uniform_int_distribution<int> gen(1, spec.rank);
      std::uniform_int_distribution<int> sign(0, 1);
      int l = len(rng);
      for (int j = 0; j < l; ++j) {
        std::int64_t g = gen(rng) * (sign(rng) ? 1 : -1);
        if (!s.data.empty() && s.data.back() == -g)
          s.data.pop_back();
        else
          s.data.push_back(g);
      }
    } else {
      std::uniform_int_distribution<std::int64_t> step(-3, 3);
      for (auto& v : s.data) v = step(rng);
      if (spec.kind == GroupSpec::Kind::CyclicQuotient)
        for (int j = 0; j < spec.rank; ++j)
          s.data[j] = ((s.data[j] % spec.moduli[j]) + spec.moduli[j]) %
                      spec.moduli[j];
    }
    f.add_term(s, Int(coeff(rng)));
  }
  return f;
}

}  // namespace

TEST_CASE("convolution on Z[Z]") {
  // (1 + t)(1 + t^{-1}) = t^{-1} + 2 + t
  RingElement f = parse_ring_element(kZ, "1+t");
  RingElement g = parse_ring_element(kZ, "1+T");
  RingElement expect = parse_ring_element(kZ, "T+2+t");
  CHECK(f * g == expect);
}

TEST_CASE("identity is neutral") {
  std::mt19937_64 rng(3);
  RingElement f = random_ring_element(kZ, rng);
  CHECK(f * RingElement::one(kZ) == f);
}

TEST_CASE("noncommutative expansion over F2") {
  GroupSpec f2 = kF2;
  RingElement f = parse_ring_element(f2, "a+b");
  RingElement sq = f * f;
  CHECK(sq == parse_ring_element(f2, "aa+ab+ba+bb"));
}

TEST_CASE("ring laws on random triples across group kinds") {
  std::mt19937_64 rng(17);
  for (const GroupSpec& spec :
       {GroupSpec::lattice(1), GroupSpec::free_group(2),
        GroupSpec::cyclic_quotient({6})}) {
    for (int trial = 0; trial < 400; ++trial) {
      RingElement f = random_ring_element(spec, rng);
      RingElement g = random_ring_element(spec, rng);
      RingElement h = random_ring_element(spec, rng);
      CHECK((f * g) * h == f * (g * h));
      CHECK(f * (g + h) == f * g + f * h);
      CHECK((f + g) * h == f * h + g * h);
      // (fg)* = g* f*
      CHECK(involution(f * g) == involution(g) * involution(f));
      // submultiplicative l1 norm
      CHECK(l1_norm(f * g) <= l1_norm(f) * l1_norm(g) + 1e-12);
    }
  }
}

TEST_CASE("involution fixed points and words") {
  RingElement f = parse_ring_element(kZ, "2-t");
  CHECK(involution(f) == parse_ring_element(kZ, "2-T"));
  CHECK(involution(involution(f)) == f);
  CHECK(involution(RingElement::one(kZ)) == RingElement::one(kZ));
  RingElement ab = parse_ring_element(kF2, "3*ab");
  CHECK(involution(ab) == parse_ring_element(kF2, "3*BA"));
}

TEST_CASE("l1 norm") {
  CHECK(l1_norm(parse_ring_element(kZ, "2-t")) == 3.0);
  CHECK(l1_norm(RingElement::zero(kZ)) == 0.0);
  RingMatrix m = RingMatrix::scalar(parse_ring_element(kZ, "2-t"));
  CHECK(l1_norm(m) == 3.0);
}

TEST_CASE("l1 inverse of 2 - t matches the geometric series") {
  RingElement f = parse_ring_element(kZ, "2-t");
  L1InverseOptions opts;
  opts.tolerance = 1e-9;
  L1Inverse inv = l1_inverse(RingMatrix::scalar(f), opts);

  // oracle: (2 - t)^{-1} = sum_m 2^{-(m+1)} t^m
  const RingElement& g = inv.inverse.at(0, 0);
  for (const auto& [s, c] : g.float_coeffs()) {
    REQUIRE(s.data[0] >= 0);
    double expect = std::ldexp(1.0, -static_cast<int>(s.data[0]) - 1);
    CHECK(c == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(l1_norm(g) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(inv.series_tail <= 1e-9);
  CHECK(inv.residual <= 2e-9 * l1_norm(f));
}

TEST_CASE("l1 inverse of the identity is immediate") {
  L1Inverse inv = l1_inverse(RingMatrix::identity_matrix(kZ, 1));
  CHECK(inv.inverse.at(0, 0).float_at(identity(kZ)) == 1.0);
  CHECK(inv.series_tail == 0.0);
}

TEST_CASE("Neumann condition fails for 1 - t") {
  RingElement f = parse_ring_element(kZ, "1-t");
  CHECK_THROWS_AS(l1_inverse(RingMatrix::scalar(f)), NeumannConditionFailed);
}

TEST_CASE("l1 inverse residual bound on random dominant elements") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> off(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    RingElement f(kZ, CoeffMode::Exact);
    int a = off(rng), b = off(rng);
    f.add_term(GroupElement{{1}}, Int(a));
    f.add_term(GroupElement{{-1}}, Int(b));
    int diag = std::abs(a) + std::abs(b) + 1 + (trial % 3);
    f.add_term(GroupElement{{0}}, Int(diag));
    L1InverseOptions opts;
    opts.tolerance = 1e-8;
    L1Inverse inv = l1_inverse(RingMatrix::scalar(f), opts);
    CHECK(inv.residual <= 2 * opts.tolerance * l1_norm(f));
  }
}

TEST_CASE("matrix involution transposes") {
  RingMatrix m(kZ, 2, CoeffMode::Exact);
  m.at(0, 1) = parse_ring_element(kZ, "t");
  RingMatrix mi = involution(m);
  CHECK(mi.at(1, 0) == parse_ring_element(kZ, "T"));
  CHECK(mi.at(0, 1).is_zero());
}

TEST_CASE("mode mismatch is rejected") {
  RingElement f = parse_ring_element(kZ, "2-t");
  RingElement g = f.to_float();
  CHECK_THROWS_AS(f * g, MismatchError);
}

TEST_CASE("float-mode tail bound propagates through products") {
  RingElement f = parse_ring_element(kZ, "2-t").to_float();
  RingElement g = parse_ring_element(kZ, "1+t+T").to_float();
  RingElement fg = f * g;
  CHECK(fg.tail() == 0.0);

  RingElement ft = f;
  ft.set_tail(0.25);
  RingElement prod = ft * g;
  // ||f||_1 tail_g + tail_f ||g||_1 + tail_f tail_g = 0 + 0.25*3 + 0
  CHECK(prod.tail() == doctest::Approx(0.75));
}

TEST_CASE("ring element text round-trips") {
  RingElement f = parse_ring_element(kZ, "2-t");
  CHECK(format_ring_element(f) == "2*(0) + -1*(1)");
  CHECK(parse_ring_element(kZ, format_ring_element(f)) == f);
  CHECK(parse_ring_element(kZ, "3-t-T") ==
        parse_ring_element(kZ, "-1*(-1) + 3*(0) + -1*(1)"));
  CHECK(format_ring_element(RingElement::zero(kZ)) == "0");
}

TEST_CASE("Neumann scale override") {
  // 4 - 2t: the automatic split uses c = 4; overriding with c = 8 still
  // converges, with ||B||_1 = |1 - 4/8| + 2/8 = 0.75.
  RingElement f = parse_ring_element(kZ, "4-2t");
  L1InverseOptions opts;
  opts.tolerance = 1e-8;
  L1Inverse auto_split = l1_inverse(RingMatrix::scalar(f), opts);
  opts.scale = 8.0;
  L1Inverse forced = l1_inverse(RingMatrix::scalar(f), opts);
  CHECK(auto_split.neumann_norm == doctest::Approx(0.5));
  CHECK(forced.neumann_norm == doctest::Approx(0.75));
  CHECK(forced.residual <= 2 * opts.tolerance * l1_norm(f));
  GroupElement e = identity(kZ);
  CHECK(forced.inverse.at(0, 0).float_at(e) ==
        doctest::Approx(auto_split.inverse.at(0, 0).float_at(e)).epsilon(1e-6));
}
