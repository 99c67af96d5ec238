#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "soficlab/entropy.hpp"
#include "soficlab/ring.hpp"

namespace soficlab {

using IntMatrix = std::vector<std::vector<Int>>;

/// The convolution action of f on the group algebra of a finite quotient:
/// entry (a, b) = sum of f_s over s with (residue of a) + s = b.
IntMatrix quotient_matrix(const RingElement& f, const GroupSpec& quotient);

/// Fraction-free Bareiss determinant (exact).
Int bareiss_determinant(IntMatrix m);

struct LogAbs {
  double value = 0.0;  // log |v|
  /// Present when |v| = base^exp exactly (then value = exp * log(base)).
  std::optional<std::pair<std::int64_t, int>> power_form;
};

/// log |v| with perfect-power detection against the given exponent.
LogAbs log_abs(const Int& v, int try_exponent);

struct FkOptions {
  int exact_cap = 512;       // exact integer determinants up to this dimension
  int aggregate_window = 5;  // last-K mean
};

struct DetLevel {
  std::vector<std::int64_t> moduli;
  std::int64_t dim = 0;
  bool exact = true;       // integer Bareiss vs floating LU
  bool singular = false;   // flagged and excluded from aggregation
  double log_abs_det = 0.0;
  double value = 0.0;      // log|det| / dim
  bool value_is_exact_log = false;
  double condition = 0.0;  // pivot-ratio diagnostic for the float path
};

struct DetReport {
  std::string f_text;
  std::vector<DetLevel> levels;
  double estimate = 0.0;  // last-K mean over nonsingular levels
  double spread = 0.0;    // max - min over the window
  int aggregated_from = 0;
};

/// Per-quotient normalized log-determinants (1/d) log |det| approximating
/// log det_{LG} f = tr log |f|, exact in integers up to the cap.
DetReport fk_det_estimate(const RingElement& f,
                          const std::vector<std::vector<std::int64_t>>& moduli,
                          const FkOptions& opts = {});

enum class DeningerVerdict { ConsistentWithCorollary, UnitDetected, Inconclusive };

struct DeningerReport {
  DeningerVerdict verdict = DeningerVerdict::Inconclusive;
  bool l1_certified = false;
  double det_estimate = 0.0;     // log det
  double margin = 0.0;           // det_estimate - spread
  double inverse_integrality = 0.0;  // max coeff distance from integers
  bool unit_exact = false;       // rounded inverse verified in ZG
  DetReport det;
  std::string notes;
};

/// The det > 1 screening: l^1 invertibility via the Neumann route, the
/// unit-in-ZG check via integer rounding of the inverse (verified exactly
/// when it fires), and the determinant margin. Evidence, not proof.
DeningerReport deninger_check(const RingElement& f,
                              const std::vector<std::vector<std::int64_t>>& moduli,
                              double tol = 1e-9);

/// Periodic-point microstate family for a principal algebraic action at one
/// quotient level: size |det|, realized through algebraic microstates, with
/// the pairwise separation 1/(2 ||f||_1) certified by coefficient dominance.
MicrostateFamily periodic_point_family(const ActionSpec& action,
                                       const SoficMap& sigma,
                                       const GroupSpec& quotient, int radius);

struct DetEntropyLevel {
  std::vector<std::int64_t> moduli;
  std::int64_t dim = 0;
  double det_value = 0.0;
  double entropy_lower = 0.0;
  bool entropy_exact_log = false;
  bool det_exact_log = false;
  int witnesses_checked = 0;
};

struct DetEntropyComparison {
  DetReport det;
  std::vector<DetEntropyLevel> levels;
  double tolerance = 0.0;
  bool consistent = false;  // entropy_lower <= det_value + tol at every level
  bool lower_bound_only = true;
};

/// Juxtaposes the determinant estimate with entropy lower bounds from the
/// L-point periodic families; asserts the one-sided inequality.
DetEntropyComparison det_vs_entropy(
    const RingElement& f, const std::vector<std::vector<std::int64_t>>& moduli,
    double tol = 1e-6);

}  // namespace soficlab
