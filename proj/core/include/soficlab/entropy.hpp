#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "soficlab/microstate.hpp"

namespace soficlab {

/// Which family of microstates to enumerate per level.
struct GeneratorPolicy {
  enum class Kind { Auto, FullShift, AlgebraicConstant, Custom };
  Kind kind = Kind::Auto;
  std::int64_t budget = 1'000'000;  // explicit-family size cap
  int certification_samples = 8;    // spot checks for implicit families
  std::function<MicrostateFamily(const ActionSpec&, const SoficMap&, int)>
      custom;
};

/// Grids for the inf/sup structure of h_Sigma: levels with increasing d,
/// an increasing F-chain (balls of the given radii), decreasing delta and
/// epsilon grids.
struct EntropySchedule {
  ActionSpec action;
  std::vector<SoficMap> levels;
  std::vector<int> f_radii;
  std::vector<double> deltas;
  std::vector<double> epsilons;
  MapMetric metric = MapMetric::RhoInf;
  GeneratorPolicy policy;
  std::uint64_t seed = 0;

  void validate() const;
};

inline constexpr double kNegInfinity = -std::numeric_limits<double>::infinity();

struct EntropyCell {
  int level = 0;  // index into schedule.levels
  int d = 0;
  int f_radius = 0;
  double delta = 0.0;
  double epsilon = 0.0;
  double family_log_size = kNegInfinity;
  bool family_empty = true;
  bool certified = false;  // every counted member verified in Map(...)
  int samples_checked = 0;
  SeparationReport separation;
  /// (1/d) log N_epsilon, or -infinity for an empty family.
  double value = kNegInfinity;
  /// Set when the value is structurally (exp/d) log(base) with exp == d.
  bool value_is_exact_log = false;
  std::string flags;
};

struct EntropyReport {
  std::vector<EntropyCell> cells;
  bool monotone_in_epsilon = true;  // N nonincreasing as epsilon grows
  bool monotone_in_delta = true;    // value nondecreasing as delta grows
  bool partial = false;             // some cells hit a budget cap
  /// max/min/last over levels for the finest (F, delta, epsilon) cell.
  double summary_max = kNegInfinity;
  double summary_min = kNegInfinity;
  double summary_last = kNegInfinity;
  /// -infinity as soon as any level's family at the finest cell is empty,
  /// otherwise the last level's value.
  double summary_aggregate = kNegInfinity;
};

/// Runs the full grid. Budget exhaustion inside a cell marks the report
/// partial instead of aborting the run.
EntropyReport estimate(const EntropySchedule& schedule);

/// Product action with the sum pseudometric of the proposition
/// h_Sigma(X x Y) = h_Sigma(X) + h_Sigma(Y): product alphabet for symbolic
/// actions (metric factors concatenate), block-diagonal matrix for algebraic
/// ones. Mixed variants are rejected.
ActionSpec product_action(const ActionSpec& a, const ActionSpec& b);

/// The phi_omega family over {0..k-1}^d for a full shift.
MicrostateFamily fullshift_family(const ActionSpec& action,
                                  const SoficMap& sigma, int radius);

/// The Lemma L-point family {xi : {1..d} -> {0..m-1}} for X_(m), m constant.
MicrostateFamily algebraic_constant_family(const ActionSpec& action,
                                           const SoficMap& sigma, int radius);

}  // namespace soficlab
