#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "soficlab/errors.hpp"

namespace soficlab {

/// Describes one of the three supported group families.
///
/// Elements are kept in canonical form: lattice elements are integer vectors,
/// quotient elements are residue vectors in [0, modulus), and free-group
/// elements are reduced words over the generators.
struct GroupSpec {
  enum class Kind { IntegerLattice, FreeGroup, CyclicQuotient };

  Kind kind = Kind::IntegerLattice;
  int rank = 1;                   // lattice / free rank
  std::vector<std::int64_t> moduli;  // CyclicQuotient only, componentwise >= 1

  static GroupSpec lattice(int rank);
  static GroupSpec free_group(int rank);
  static GroupSpec cyclic_quotient(std::vector<std::int64_t> moduli);

  bool operator==(const GroupSpec&) const = default;

  /// Number of elements for CyclicQuotient; throws for infinite groups.
  std::int64_t order() const;
};

/// A group element in canonical form.
///
/// Lattice/quotient: `data` is the coordinate/residue vector (size = rank).
/// Free group: `data` is the reduced word; entry +i is generator i, entry -i
/// its inverse (i in 1..rank), with no adjacent cancelling pair.
struct GroupElement {
  std::vector<std::int64_t> data;

  bool operator==(const GroupElement&) const = default;
  auto operator<=>(const GroupElement&) const = default;
};

GroupElement identity(const GroupSpec& spec);
bool is_identity(const GroupSpec& spec, const GroupElement& a);

/// Throws MismatchError unless `a` is a valid canonical element of `spec`.
void validate_element(const GroupSpec& spec, const GroupElement& a);

GroupElement group_mul(const GroupSpec& spec, const GroupElement& a,
                       const GroupElement& b);
GroupElement group_inverse(const GroupSpec& spec, const GroupElement& a);

/// Word length with respect to the canonical generators: l^1 norm on the
/// lattice, reduced word length on the free group, and the minimum over
/// coset representatives on a quotient.
std::int64_t word_length(const GroupSpec& spec, const GroupElement& a);

/// All elements of word length <= radius, sorted.
std::vector<GroupElement> ball(const GroupSpec& spec, int radius);

/// Mixed-radix row-major index of a quotient residue and its inverse.
std::int64_t quotient_index(const GroupSpec& spec, const GroupElement& a);
GroupElement quotient_element(const GroupSpec& spec, std::int64_t index);

/// Canonical text form: `(a,b,...)` for lattice/quotient, generator letters
/// (`a`..`z`, inverses `A`..`Z`) for free words, `1` for the identity.
/// For rank-1 lattices `t`/`T` are accepted as aliases for a/A on parse.
std::string format_element(const GroupSpec& spec, const GroupElement& a);
GroupElement parse_element(const GroupSpec& spec, const std::string& text);

struct GroupElementHash {
  std::size_t operator()(const GroupElement& a) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : a.data) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace soficlab
