#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soficlab/group.hpp"

namespace soficlab {

using Int = boost::multiprecision::cpp_int;

enum class CoeffMode { Exact, Float };

/// A finitely supported element of ZG (exact integer coefficients) or a
/// truncated element of l^1(G) (double coefficients plus a nonnegative bound
/// on the l^1 mass of the discarded tail). The tail bound is identically 0 in
/// exact mode.
class RingElement {
 public:
  RingElement() = default;
  explicit RingElement(GroupSpec group, CoeffMode mode = CoeffMode::Exact)
      : group_(std::move(group)), mode_(mode) {}

  static RingElement zero(const GroupSpec& group,
                          CoeffMode mode = CoeffMode::Exact);
  static RingElement one(const GroupSpec& group,
                         CoeffMode mode = CoeffMode::Exact);
  /// c * s as a single-term element.
  static RingElement monomial(const GroupSpec& group, Int c,
                              const GroupElement& s);

  const GroupSpec& group() const { return group_; }
  CoeffMode mode() const { return mode_; }
  double tail() const { return tail_; }
  bool is_zero() const { return exact_.empty() && approx_.empty(); }

  const std::map<GroupElement, Int>& exact_coeffs() const { return exact_; }
  const std::map<GroupElement, double>& float_coeffs() const { return approx_; }

  Int exact_at(const GroupElement& s) const;
  double float_at(const GroupElement& s) const;

  /// Adds c to the coefficient at s, dropping the term if it becomes zero.
  void add_term(const GroupElement& s, const Int& c);
  void add_term(const GroupElement& s, double c);
  void set_tail(double t);

  RingElement to_float() const;

  /// Largest word length in the support (0 for the zero element).
  std::int64_t support_radius() const;

  /// Drops float terms of word length > radius, folding their mass into the
  /// tail bound. Exact elements are returned unchanged if they fit.
  RingElement truncated(std::int64_t radius) const;

  friend RingElement operator+(const RingElement& f, const RingElement& g);
  friend RingElement operator-(const RingElement& f, const RingElement& g);
  friend RingElement operator*(const RingElement& f, const RingElement& g);
  bool operator==(const RingElement&) const = default;

 private:
  GroupSpec group_;
  CoeffMode mode_ = CoeffMode::Exact;
  std::map<GroupElement, Int> exact_;
  std::map<GroupElement, double> approx_;
  double tail_ = 0.0;

  void check_compatible(const RingElement& other) const;
};

/// (sum f_s s)* = sum f_s s^{-1}.
RingElement involution(const RingElement& f);

/// Sum of absolute coefficient values. The tail bound is reported separately
/// via RingElement::tail().
double l1_norm(const RingElement& f);
Int l1_norm_exact(const RingElement& f);

std::string format_ring_element(const RingElement& f);
RingElement parse_ring_element(const GroupSpec& group, const std::string& text);

/// An n x n matrix over the group ring, all entries in one coefficient mode.
class RingMatrix {
 public:
  RingMatrix() = default;
  RingMatrix(GroupSpec group, int n, CoeffMode mode = CoeffMode::Exact);
  static RingMatrix identity_matrix(const GroupSpec& group, int n,
                                    CoeffMode mode = CoeffMode::Exact);
  /// 1x1 matrix wrapping a scalar ring element.
  static RingMatrix scalar(RingElement f);

  int n() const { return n_; }
  const GroupSpec& group() const { return group_; }
  CoeffMode mode() const { return mode_; }

  const RingElement& at(int i, int j) const;
  RingElement& at(int i, int j);

  RingMatrix to_float() const;
  bool operator==(const RingMatrix&) const = default;

  friend RingMatrix operator+(const RingMatrix& a, const RingMatrix& b);
  friend RingMatrix operator-(const RingMatrix& a, const RingMatrix& b);
  friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b);

 private:
  GroupSpec group_;
  int n_ = 0;
  CoeffMode mode_ = CoeffMode::Exact;
  std::vector<RingElement> entries_;
};

/// Entrywise involution composed with the transpose.
RingMatrix involution(const RingMatrix& a);

/// ||A||_1 = sum of entry l^1 norms; submultiplicative.
double l1_norm(const RingMatrix& a);

struct L1InverseOptions {
  double tolerance = 1e-9;
  /// Override for the Neumann scale c in A = c(I - B); by default the
  /// identity coefficient of the (0,0) entry is used.
  std::optional<double> scale;
  std::int64_t max_terms = 4096;
};

struct L1Inverse {
  RingMatrix inverse;     // float mode, truncated series with tail bounds
  double series_tail;     // geometric bound on the truncated mass
  double residual;        // measured ||A * inverse - I||_1 (tails included)
  double neumann_norm;    // ||B||_1 of the detected split
  int terms;              // number of series terms accumulated
};

/// Truncated Neumann series inverse of A in M_n(l^1(G)).
///
/// Requires a split A = c(I - B) with ||B||_1 < 1; throws
/// NeumannConditionFailed otherwise. On success the result satisfies
/// ||A * inverse - I||_1 <= 2 * tolerance * ||A||_1, which is re-verified.
L1Inverse l1_inverse(const RingMatrix& a, const L1InverseOptions& opts = {});

}  // namespace soficlab
