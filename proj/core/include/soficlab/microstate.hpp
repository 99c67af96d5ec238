#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "soficlab/action.hpp"
#include "soficlab/sofic.hpp"

namespace soficlab {

/// A map phi: {1..d} -> X stored as d window patterns, tied to the sofic map
/// it is measured against (non-owning).
struct Microstate {
  const SoficMap* sigma = nullptr;
  std::vector<PointPattern> entries;

  int d() const { return static_cast<int>(entries.size()); }
  const PointPattern& at(int a) const { return entries.at(a); }
};

enum class MapMetric { Rho2, RhoInf };

double rho2_maps(const ActionSpec& action, const Microstate& phi,
                 const Microstate& psi);
double rhoinf_maps(const ActionSpec& action, const Microstate& phi,
                   const Microstate& psi);
double map_distance(const ActionSpec& action, MapMetric metric,
                    const Microstate& phi, const Microstate& psi);

struct MicrostateCheck {
  bool ok = false;
  double delta = 0.0;
  double max_defect = 0.0;
  double max_tail = 0.0;  // error bound accompanying the defects
  std::vector<std::pair<GroupElement, double>> defects;  // per s in F
};

/// Membership test for Map(rho, F, delta, sigma): rho_2(phi sigma_s, alpha_s
/// phi) < delta for all s in F (strict, matching the definition).
MicrostateCheck is_microstate(const ActionSpec& action, const Microstate& phi,
                              const std::vector<GroupElement>& f_set,
                              double delta);

/// phi_omega(a)(s^{-1}) = omega(sigma_s(a)) restricted to |s| <= radius.
/// With an exact quotient sigma this lies in Map(rho, F, delta, sigma) with
/// defect exactly 0 for every F inside the support.
Microstate fullshift_microstate(const ActionSpec& action,
                                const std::vector<int>& omega,
                                const SoficMap& sigma, int radius);

/// The algebraic microstate of Lemma L-point: h(a) is the sigma-orbit data
/// (h(a))_{t^{-1}} = xi(t a) and phi(a) = P(h(a) (A*)^{-1}), evaluated on the
/// window ball of the given radius with propagated truncation tails.
Microstate algebraic_microstate(const ActionSpec& action,
                                const std::vector<std::vector<std::int64_t>>& xi,
                                const SoficMap& sigma, double bound_m,
                                int radius);

/// A family of microstates: either materialized, or the implicit power
/// family {phi_omega : omega in {0..base-1}^d} whose distinct members are
/// pairwise at the same known distance (identity-coordinate argument).
struct PowerFamily {
  int base = 2;
  int d = 0;
  /// Minimum rho distance between entries of distinct members at a
  /// disagreeing index, and the largest possible entry distance.
  double unit_distance = 1.0;
  double max_unit_distance = 1.0;
  /// Materializes one member for spot checks and witnesses.
  std::function<Microstate(const std::vector<int>&)> realize;
};

/// An implicit family of known size with a certified pairwise rho_inf
/// separation (e.g. the periodic points of an algebraic action at a finite
/// quotient level).
struct CertifiedFamily {
  double log_size = 0.0;
  std::optional<std::int64_t> size;  // exact size when it fits
  /// Present when the size is structurally base^exp.
  std::optional<std::pair<std::int64_t, int>> power_form;
  /// Certified lower bound on pairwise rho_inf distances (tails deducted).
  double min_distance = 0.0;
  int d = 0;
  /// Materializes a pseudo-random member for spot checks.
  std::function<Microstate(std::uint64_t)> sample;
};

struct MicrostateFamily {
  std::variant<std::vector<Microstate>, PowerFamily, CertifiedFamily> members;

  bool is_power() const { return std::holds_alternative<PowerFamily>(members); }
  bool is_certified() const {
    return std::holds_alternative<CertifiedFamily>(members);
  }
  const std::vector<Microstate>& explicit_members() const {
    return std::get<std::vector<Microstate>>(members);
  }
  const PowerFamily& power() const { return std::get<PowerFamily>(members); }
  const CertifiedFamily& certified() const {
    return std::get<CertifiedFamily>(members);
  }
  /// log of the family size.
  double log_size() const;
  bool empty() const;
};

struct SeparationOptions {
  enum class Mode { Exact, Greedy };
  Mode mode = Mode::Exact;
  /// Exact conflict-graph search cap: |S| (|S|-1) / 2 <= pair_budget.
  std::int64_t pair_budget = 1 << 14;
  std::uint64_t seed = 0;  // greedy order seed
};

struct SeparationReport {
  double epsilon = 0.0;
  MapMetric metric = MapMetric::RhoInf;
  enum class Bound { Exact, GreedyLower } bound = Bound::Exact;
  double log_count = 0.0;
  std::optional<std::int64_t> count;  // present when it fits
  /// Present when the count is structurally base^exp (value = exp*log(base)).
  std::optional<std::pair<int, int>> power_form;
  std::uint64_t seed = 0;
};

/// N_epsilon via maximum independent set of the "< epsilon" conflict graph
/// (exact mode) or a deterministic greedy packing lower bound. Power families
/// are counted in closed form when the metric admits it.
SeparationReport separated_count(const ActionSpec& action,
                                 const MicrostateFamily& family, double epsilon,
                                 MapMetric metric,
                                 const SeparationOptions& opts = {});

}  // namespace soficlab
