#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "soficlab/ring.hpp"

namespace soficlab {

/// A finite partial labeling; it occurs at position g in x when
/// x(g * offset) lies in the cell's symbol set for every cell. User files
/// carry single symbols; product actions lift factor patterns to digit sets.
struct ForbiddenPattern {
  struct Cell {
    GroupElement offset;
    std::set<int> symbols;
  };
  std::vector<Cell> cells;
};

/// Full shift on {0..k-1}^G. `metric_factors` records a product structure:
/// symbols are mixed-radix digits over the factors and the identity-coordinate
/// pseudometric is the number of differing digits (a plain shift has the
/// single factor {k} and the usual 0/1 pseudometric).
struct FullShiftAction {
  int k = 2;
  std::vector<int> metric_factors;  // defaults to {k}
};

struct SftAction {
  int k = 2;
  std::vector<int> metric_factors;
  std::vector<ForbiddenPattern> forbidden;
};

/// The solution set X_A = {x : x A* = 0} in ((R/Z)^G)^n, carried together
/// with a certified truncated inverse of A*.
struct AlgebraicAction {
  RingMatrix matrix;          // A, exact mode
  RingMatrix adjoint_inverse; // (A*)^{-1}, float mode with tail bounds
  double inverse_residual = 0.0;
  int window_radius = 0;      // default working radius R_alg
  /// Coordinate block sizes; the pseudometric is the sum over blocks of the
  /// max circle distance within each block (a single block for plain X_A).
  std::vector<int> metric_blocks;
};

struct ActionSpec {
  GroupSpec group;
  std::variant<FullShiftAction, SftAction, AlgebraicAction> variant;

  bool is_symbolic() const {
    return !std::holds_alternative<AlgebraicAction>(variant);
  }
  int alphabet_size() const;
  const std::vector<int>& metric_factors() const;
  const std::vector<ForbiddenPattern>* forbidden() const;
  const AlgebraicAction& algebraic() const;
};

ActionSpec full_shift(const GroupSpec& group, int k);
ActionSpec sft(const GroupSpec& group, int k,
               std::vector<ForbiddenPattern> forbidden);
/// Builds the algebraic action for A, certifying (A*)^{-1} via l1_inverse.
/// The working radius defaults to where the inverse tail drops below
/// tol / (2 n ||A||_1).
ActionSpec algebraic_action(RingMatrix a, double tol = 1e-9);

/// Identity-coordinate pseudometric between symbols (digit disagreement
/// count under the metric factors).
double symbol_distance(const ActionSpec& action, int a, int b);

/// Circle metric max_j min_m |a_j - b_j - m| on (R/Z)^n.
double torus_distance(const std::vector<double>& a, const std::vector<double>& b);
/// Sum over coordinate blocks of the max circle distance within each block.
double torus_distance(const std::vector<int>& blocks,
                      const std::vector<double>& a,
                      const std::vector<double>& b);

/// A point of X known on the word-length ball of a given radius. Symbolic
/// actions store one symbol per window element; algebraic actions store a
/// vector in [0,1)^n per element plus an accumulated error bound.
struct PointPattern {
  GroupSpec group;
  int radius = 0;
  std::map<GroupElement, int> symbols;                  // symbolic
  std::map<GroupElement, std::vector<double>> torus;    // algebraic
  double tail = 0.0;

  bool is_symbolic() const { return torus.empty(); }
  int symbol_at(const GroupElement& g) const;
  const std::vector<double>& torus_at(const GroupElement& g) const;
};

/// Constant symbolic pattern on the ball of the given radius.
PointPattern constant_pattern(const ActionSpec& action, int radius, int symbol);

/// Left translation (sx)_t = x_{s^{-1} t}; the window shrinks by |s|.
PointPattern act(const ActionSpec& action, const GroupElement& s,
                 const PointPattern& x);

/// Identity-coordinate pseudometric between two window points.
double rho(const ActionSpec& action, const PointPattern& x,
           const PointPattern& y);
/// Combined error bound accompanying rho (0 for symbolic actions).
double rho_tail(const PointPattern& x, const PointPattern& y);

/// True when every coordinate of x A* checkable from the window of x is
/// within tol of 0 mod 1. Throws WindowExhausted when not even the identity
/// position is checkable.
bool membership_xa(const PointPattern& x, const AlgebraicAction& action,
                   double tol);

/// Scans the window for forbidden-pattern occurrences (fully contained ones).
bool pattern_violates(const ActionSpec& action, const PointPattern& x);

/// SFT forbidden-pattern file: one pattern per line, `offset=symbol` pairs
/// separated by `;`.
std::vector<ForbiddenPattern> load_forbidden_patterns(const GroupSpec& group,
                                                      std::istream& is);
void save_forbidden_patterns(const GroupSpec& group,
                             const std::vector<ForbiddenPattern>& patterns,
                             std::ostream& os);

/// Cylinder constraint: the coordinate at `pos` must lie in `allowed`.
struct CylinderConstraint {
  GroupElement pos;
  std::set<int> allowed;
};

/// Metric-ball constraint for algebraic actions.
struct MetricBall {
  PointPattern center;
  double radius = 0.0;
};

using ConstraintSet = std::variant<std::vector<CylinderConstraint>, MetricBall>;

/// The tuple (A_1, ..., A_k) of target sets.
struct SetTuple {
  std::vector<ConstraintSet> sets;
  int k() const { return static_cast<int>(sets.size()); }
};

/// Single-coordinate cylinder {x : x_pos = symbol}.
ConstraintSet cylinder(const GroupElement& pos, int symbol);
ConstraintSet cylinder(const GroupElement& pos, std::set<int> allowed);

/// Whether the (symbolic) point satisfies every constraint; constraints
/// outside the window throw WindowExhausted.
bool satisfies(const ActionSpec& action, const PointPattern& x,
               const ConstraintSet& constraints);

}  // namespace soficlab
