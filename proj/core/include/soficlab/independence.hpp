#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "soficlab/microstate.hpp"

namespace soficlab {

/// Verdict of a witness search that is sound but may time out.
enum class Tristate { False, True, Unknown };

struct SearchOptions {
  enum class Mode { Exact, Greedy };
  Mode mode = Mode::Exact;
  int exact_cap = 20;                    // |F| cap for exact density search
  std::int64_t fill_budget = 1'000'000;  // backtracking nodes per omega
  int window_margin = -1;                // SFT fill margin; -1 = auto
  std::int64_t omega_cap = 1 << 20;      // exhaustive omega enumeration cap
  int sample_count = 256;                // sampled-omega mode size
  bool allow_sampling = false;
  std::uint64_t seed = 0;
};

/// Is J an independence set for the tuple: does every omega: J -> sets admit
/// a point of the action realizing all translated constraints? Symbolic
/// actions only; satisfiability is checked by exhaustive window filling with
/// forbidden-pattern pruning (Unknown on budget exhaustion, never a false
/// negative).
Tristate is_independence_set(const ActionSpec& action,
                             const std::vector<GroupElement>& j_set,
                             const SetTuple& tuple,
                             const SearchOptions& opts = {});

struct DensityResult {
  double q = 0.0;                     // |J| / |F|
  std::vector<GroupElement> j_set;    // the independence subset found
  bool exact = false;                 // maximum (not just maximal)
  bool hit_unknown = false;           // some candidate searches timed out
};

/// Largest (exact mode) or maximal (greedy) independence subset of F.
DensityResult independence_density(const ActionSpec& action,
                                   const std::vector<GroupElement>& f_set,
                                   const SetTuple& tuple,
                                   const SearchOptions& opts = {});

struct ProductDensityReport {
  DensityResult stage1;               // q for A on F
  DensityResult stage2;               // r for B on J
  std::vector<GroupElement> j1;       // final certificate
  double bound = 0.0;                 // q * r * |F|
  bool validated = false;             // J1 checked on the product action
};

/// Two-stage certificate from the product-formula proof: J for A inside F,
/// J1 for B inside J; validates J1 against A x B on the product action.
ProductDensityReport product_density_check(const ActionSpec& action_x,
                                           const ActionSpec& action_y,
                                           const std::vector<GroupElement>& f_set,
                                           const SetTuple& a, const SetTuple& b,
                                           const SearchOptions& opts = {});

/// Builds a microstate whose entry at every assigned index lies in the
/// assigned target set; returns nullopt when this generator cannot realize
/// the assignment.
using WitnessGenerator = std::function<std::optional<Microstate>(
    const std::map<int, int>& assignment)>;

/// phi_omega-based witnesses for symbolic actions with cylinder tuples.
WitnessGenerator fullshift_witness_generator(const ActionSpec& action,
                                             const SetTuple& tuple,
                                             const SoficMap& sigma, int radius);

struct SoficIndependenceResult {
  Tristate verdict = Tristate::Unknown;
  bool sampled = false;
  std::int64_t omegas_checked = 0;
  std::int64_t failures = 0;
  /// An omega that could not be realized (empty when verdict is True).
  std::map<int, int> failing_assignment;
};

/// (rho, F, delta, sigma)-independence of the index set J: every assignment
/// omega: J -> sets is realized by a generated microstate that passes
/// is_microstate and the per-index memberships.
SoficIndependenceResult sofic_independence_check(
    const ActionSpec& action, const std::vector<int>& j_set,
    const SetTuple& tuple, const std::vector<GroupElement>& f_set, double delta,
    const SoficMap& sigma, const WitnessGenerator& generator,
    const SearchOptions& opts = {});

/// A finitely supported element z of (Z^n)^G, the base point data of the
/// UPE construction.
struct BasePoint {
  std::map<GroupElement, std::vector<std::int64_t>> values;
};

struct AlgebraicIndependenceOptions {
  double delta = 0.1;
  int f_radius = 1;
  int witness_samples = 32;
  std::uint64_t seed = 0;
  int radius = -1;  // microstate window radius; -1 = F radius
};

struct AlgebraicIndependenceCertificate {
  std::vector<int> j_set;
  double density = 0.0;        // |J| / d
  double guarantee = 0.0;      // d / (2 |K|^2) / d
  std::int64_t lambda_size = 0;
  SoficIndependenceResult validation;  // sampled-omega witness checks
};

/// The independence-set construction from the proof that every tuple in X_A
/// is a Sigma-IE-tuple: J is a maximal subset of the injectivity locus
/// Lambda with pairwise disjoint sigma(K^{-1})-translates, witnessed through
/// algebraic microstates built from the base points.
AlgebraicIndependenceCertificate algebraic_independence_set(
    const ActionSpec& action, const std::vector<GroupElement>& k_set,
    const SoficMap& sigma, const std::vector<BasePoint>& base_points,
    const std::optional<SetTuple>& targets = std::nullopt,
    const AlgebraicIndependenceOptions& opts = {});

struct KmOptions {
  enum class Mode { Exact, Greedy };
  Mode mode = Mode::Exact;
  int exact_cap = 16;  // coordinate count cap for the exact search
};

struct KmResult {
  std::vector<int> coords;  // shattered coordinate set I, ascending
  /// witness[p] = index into S realizing the p-th pattern of {0..k-1}^I
  /// (patterns in mixed-radix order over I).
  std::vector<std::int64_t> witnesses;
  bool exact = false;
  double achieved_ratio = 0.0;  // |I| / n
};

/// Karpovsky-Milman extraction: a maximum (exact) or greedily grown
/// coordinate set I with S|_I = {0..k-1}^I.
KmResult km_extract(const std::vector<std::vector<int>>& s_tuples, int k,
                    const KmOptions& opts = {});

struct DecompositionResult {
  int branch = 0;                 // 1 -> A_{1,1}, 2 -> A_{1,2}
  std::vector<int> sub_j;         // I, subset of J
  double ratio = 0.0;             // |I| / |J|
  SoficIndependenceResult validation;
};

/// Splits A_1 = A_{1,1} u A_{1,2} along stored witnesses and extracts the
/// larger surviving sub-independence set, revalidated on the chosen branch.
DecompositionResult decomposition_split(
    const ActionSpec& action, const std::vector<int>& j_set,
    const SetTuple& tuple, const ConstraintSet& a11, const ConstraintSet& a12,
    const std::vector<GroupElement>& f_set, double delta,
    const SoficMap& sigma, const WitnessGenerator& generator,
    const SearchOptions& opts = {});

struct LiYorkeAnnulus {
  int radius = 0;
  double sup = 0.0;
  double inf = 0.0;
  std::optional<GroupElement> sup_witness;  // rho(sx, sy) >= a
  std::optional<GroupElement> inf_witness;  // rho(sx, sy) <= b
};

struct LiYorkeReport {
  double threshold_a = 0.0;
  double threshold_b = 0.0;
  std::vector<LiYorkeAnnulus> annuli;
  /// Finite-radius evidence only; no limit claim.
  bool separation_evidence = false;  // some annulus with sup >= a
  bool proximality_evidence = false; // some annulus with inf <= b
};

/// Scans rho(sx, sy) over word-length annuli up to the given radius.
LiYorkeReport li_yorke_scan(const ActionSpec& action, const PointPattern& x,
                            const PointPattern& y, int radius, double a,
                            double b);

}  // namespace soficlab
