#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "soficlab/group.hpp"

namespace soficlab {

/// A finite model sigma: G -> Sym(d) defined on an inverse-closed support
/// containing the identity. Permutations act on {0, ..., d-1}; the file
/// format uses 1-based images.
class SoficMap {
 public:
  enum class Provenance { ExactQuotient, Perturbed, Custom };

  SoficMap() = default;
  SoficMap(GroupSpec group, int d, Provenance provenance);

  const GroupSpec& group() const { return group_; }
  int d() const { return d_; }
  Provenance provenance() const { return provenance_; }
  const std::vector<GroupElement>& support() const { return support_; }
  bool in_support(const GroupElement& s) const;

  const std::vector<int>& permutation(const GroupElement& s) const;
  /// sigma_s(a); throws if s is outside the support.
  int image(const GroupElement& s, int a) const;

  /// Installs the permutation for s (and implicitly requires the caller to
  /// keep the support inverse-closed before use).
  void set_permutation(const GroupElement& s, std::vector<int> images);

  /// Throws unless every table entry is a bijection, the support is
  /// inverse-closed and contains the identity, and (for exact quotients) the
  /// identity maps to the identity permutation.
  void validate() const;

 private:
  GroupSpec group_;
  int d_ = 0;
  Provenance provenance_ = Provenance::Custom;
  std::vector<GroupElement> support_;
  std::map<GroupElement, std::vector<int>> table_;
};

struct QuotientSoficOptions {
  std::int64_t max_points = 1 << 22;
};

/// The translation action of a lattice on Z^r / N Z^r, restricted to the
/// word-length ball of the given radius. Multiplicativity and freeness
/// defects vanish for support pairs with distinct residues.
SoficMap quotient_sofic(const GroupSpec& lattice,
                        const std::vector<std::int64_t>& moduli,
                        int support_radius,
                        const QuotientSoficOptions& opts = {});

/// Composes every non-identity support permutation with an independent random
/// permutation moving at most m points. Deterministic for a fixed seed.
SoficMap perturb(const SoficMap& sigma, int m, std::uint64_t seed);

/// 1 - |{a : sigma_st(a) = sigma_s sigma_t(a)}| / d. Requires s, t, st in the
/// support.
double multiplicativity_defect(const SoficMap& sigma, const GroupElement& s,
                               const GroupElement& t);

/// |{a : sigma_s(a) = sigma_t(a)}| / d for distinct s, t in the support.
double freeness_defect(const SoficMap& sigma, const GroupElement& s,
                       const GroupElement& t);

/// Normalized Hamming distance on Sym(d).
double hamming(const std::vector<int>& tau, const std::vector<int>& tau_prime);

/// File format: `d=<int>` header, then one line per support element:
/// `<element>: i1 i2 ... id` with 1-based images. Round-trips bit-exactly.
void save_sofic(const SoficMap& sigma, std::ostream& os);
SoficMap load_sofic(const GroupSpec& group, std::istream& is);

}  // namespace soficlab
