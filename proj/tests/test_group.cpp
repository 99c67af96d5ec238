#include <doctest.h>

#include <random>

#include "soficlab/group.hpp"

using namespace soficlab;

namespace {

GroupElement random_element(const GroupSpec& spec, std::mt19937_64& rng) {
  switch (spec.kind) {
    case GroupSpec::Kind::IntegerLattice: {
      std::uniform_int_distribution<std::int64_t> dist(-5, 5);
      GroupElement a;
      a.data.resize(spec.rank);
      for (auto& v : a.data) v = dist(rng);
      return a;
    }
    case GroupSpec::Kind::CyclicQuotient: {
      GroupElement a;
      a.data.resize(spec.rank);
      for (int i = 0; i < spec.rank; ++i) {
        std::uniform_int_distribution<std::int64_t> dist(0, spec.moduli[i] - 1);
        a.data[i] = dist(rng);
      }
      return a;
    }
    case GroupSpec::Kind::FreeGroup: {
      std::uniform_int_distribution<int> len(0, 8);
      std::uniform_int_distribution<int> gen(1, spec.rank);
      std::uniform_int_distribution<int> sign(0, 1);
      GroupElement w{{}};
      int n = len(rng);
      for (int i = 0; i < n; ++i) {
        std::int64_t g = gen(rng) * (sign(rng) ? 1 : -1);
        if (!w.data.empty() && w.data.back() == -g)
          w.data.pop_back();
        else
          w.data.push_back(g);
      }
      return w;
    }
  }
  return GroupElement{};
}

}  // namespace

TEST_CASE("lattice multiplication is addition") {
  GroupSpec z = GroupSpec::lattice(1);
  CHECK(group_mul(z, GroupElement{{3}}, GroupElement{{4}}) ==
        GroupElement{{7}});
}

TEST_CASE("free multiplication reduces") {
  GroupSpec f2 = GroupSpec::free_group(2);
  // (ab)(b^{-1}a) = a^2
  GroupElement ab{{1, 2}};
  GroupElement binv_a{{-2, 1}};
  CHECK(group_mul(f2, ab, binv_a) == GroupElement{{1, 1}});
}

TEST_CASE("quotient multiplication wraps") {
  GroupSpec z5 = GroupSpec::cyclic_quotient({5});
  CHECK(group_mul(z5, GroupElement{{3}}, GroupElement{{4}}) ==
        GroupElement{{2}});
}

TEST_CASE("mismatched elements are rejected") {
  GroupSpec z2 = GroupSpec::lattice(2);
  CHECK_THROWS_AS(group_mul(z2, GroupElement{{1}}, GroupElement{{1, 2}}),
                  MismatchError);
  GroupSpec f1 = GroupSpec::free_group(1);
  CHECK_THROWS_AS(validate_element(f1, GroupElement{{1, -1}}), MismatchError);
}

TEST_CASE("group laws hold on random elements") {
  std::mt19937_64 rng(7);
  for (const GroupSpec& spec :
       {GroupSpec::lattice(2), GroupSpec::free_group(2),
        GroupSpec::cyclic_quotient({4, 9})}) {
    for (int trial = 0; trial < 300; ++trial) {
      GroupElement a = random_element(spec, rng);
      GroupElement b = random_element(spec, rng);
      GroupElement c = random_element(spec, rng);
      CHECK(group_mul(spec, group_mul(spec, a, b), c) ==
            group_mul(spec, a, group_mul(spec, b, c)));
      CHECK(group_mul(spec, a, group_inverse(spec, a)) == identity(spec));
      CHECK(group_mul(spec, group_inverse(spec, a), a) == identity(spec));
    }
  }
}

TEST_CASE("free word canonical form stays reduced") {
  GroupSpec f2 = GroupSpec::free_group(2);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    GroupElement w = random_element(f2, rng);
    validate_element(f2, w);  // no adjacent cancelling pair
    CHECK(group_mul(f2, w, group_inverse(f2, w)) == identity(f2));
  }
}

TEST_CASE("word length and balls") {
  GroupSpec z2 = GroupSpec::lattice(2);
  CHECK(word_length(z2, GroupElement{{2, -1}}) == 3);
  CHECK(ball(z2, 1).size() == 5);  // e and 4 unit steps
  CHECK(ball(z2, 2).size() == 13);

  GroupSpec f2 = GroupSpec::free_group(2);
  CHECK(ball(f2, 1).size() == 5);
  CHECK(ball(f2, 2).size() == 17);  // 1 + 4 + 12

  GroupSpec z6 = GroupSpec::cyclic_quotient({6});
  CHECK(word_length(z6, GroupElement{{5}}) == 1);
  CHECK(word_length(z6, GroupElement{{3}}) == 3);
}

TEST_CASE("quotient indexing is mixed-radix row-major") {
  GroupSpec q = GroupSpec::cyclic_quotient({2, 3});
  CHECK(quotient_index(q, GroupElement{{0, 0}}) == 0);
  CHECK(quotient_index(q, GroupElement{{0, 2}}) == 2);
  CHECK(quotient_index(q, GroupElement{{1, 0}}) == 3);
  for (std::int64_t i = 0; i < 6; ++i)
    CHECK(quotient_index(q, quotient_element(q, i)) == i);
}

TEST_CASE("element text round-trips") {
  GroupSpec z2 = GroupSpec::lattice(2);
  GroupElement a{{3, -2}};
  CHECK(format_element(z2, a) == "(3,-2)");
  CHECK(parse_element(z2, "(3,-2)") == a);

  GroupSpec f2 = GroupSpec::free_group(2);
  GroupElement w{{1, 2, -1}};
  CHECK(format_element(f2, w) == "abA");
  CHECK(parse_element(f2, "abA") == w);
  CHECK(parse_element(f2, "1") == identity(f2));

  GroupSpec z = GroupSpec::lattice(1);
  CHECK(parse_element(z, "t") == GroupElement{{1}});
  CHECK(parse_element(z, "T") == GroupElement{{-1}});
  CHECK(parse_element(z, "tt") == GroupElement{{2}});
}
