#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "soficlab/sofic.hpp"

namespace soficlab {

using IndexSet = std::vector<int>;  // sorted indices into {0..d-1}

/// V = {a in B : |sigma(F)a n J| > lambda |F|}, with the counting bound
/// |V| >= (|B|(1-lambda) - d + |J|) / (1-lambda) asserted on return.
/// Requires sigma_s(a) != sigma_t(a) for distinct s, t in F and a in B.
IndexSet density_select(const SoficMap& sigma,
                        const std::vector<GroupElement>& f_set,
                        const IndexSet& b_set, const IndexSet& j_set,
                        double lambda);

struct EvenCoverRefineResult {
  std::vector<int> selected;               // indices into the input family
  std::vector<IndexSet> witnesses;         // disjointified subsets, aligned
  double cover_fraction = 0.0;             // |union of witnesses| / d
  int multiplicity = 0;                    // measured cover multiplicity
};

/// Enlarges a given eta-disjoint subcollection of a delta-even cover to an
/// eta-disjoint subcollection that eta(1-delta)-covers {1..d} (greedy, in
/// family order). `stop_cover` ends the enlargement early once the
/// disjointified union reaches that fraction.
EvenCoverRefineResult even_cover_refine(
    const std::vector<IndexSet>& family, int d, double eta, double delta,
    const std::vector<int>& preselected = {},
    std::optional<double> stop_cover = std::nullopt);

struct TileSystem {
  std::vector<std::vector<GroupElement>> shapes;  // nested F_1 c ... c F_l
  std::vector<IndexSet> centers;                  // C_k per shape
  /// Disjointified witness per shape per center (aligned with centers).
  std::vector<std::vector<IndexSet>> witnesses;
  double tau = 0.0;
  double eta = 0.0;
  double cover_fraction = 0.0;   // |union of all tiles| / d
  std::vector<double> occupancy; // lambda_k = |sigma(F_k) C_k| / d
};

/// Exact recount of every TileSystem invariant: per-tile injectivity,
/// cross-shape disjointness, eta-disjointness witnesses, cover fraction.
/// Throws on any violation.
void validate_tile_system(const TileSystem& tiles, const SoficMap& sigma);

/// sum_k | |sigma(F_k) C_k| / d - lambda_k | against a reference occupancy
/// vector (e.g. from another level of the same schedule).
double occupancy_deviation(const TileSystem& tiles,
                           const std::vector<double>& reference);

struct QuasitileOptions {
  bool want_occupancy = false;
  /// Tiles must avoid these points entirely (used for two-scale tilings).
  std::vector<char> blocked;
};

/// Greedy quasitiling: centers chosen from the largest shape down, ascending
/// index, keeping translates eta-disjoint within a shape and fully disjoint
/// across shapes. With V >= (1-tau) d and a good enough sigma the system
/// (1 - tau - eta)-covers {1..d}; a shortfall throws SigmaQualityError with
/// the measured defects.
TileSystem quasitile(const SoficMap& sigma,
                     const std::vector<std::vector<GroupElement>>& shapes,
                     const IndexSet& v_set, double tau, double eta,
                     const QuasitileOptions& opts = {});

struct MatchedTiles {
  IndexSet c1, c2;                      // aligned: c1[i] is matched to c2[i]
  std::vector<IndexSet> witnesses1, witnesses2;  // eta-disjoint tile pieces
  double cover1 = 0.0, cover2 = 0.0;    // |sigma(F) C_i| / d
  /// min over pairs of |{s in F : sigma_s(c) in J1, sigma_s(match(c)) in J2}|.
  std::int64_t min_pair_overlap = 0;
  double overlap_guarantee = 0.0;       // (tau/2)^2 |F|
  bool conclusions_met = false;         // both covers and the overlap bound
  std::vector<std::string> diagnostics;
};

/// The matched-tile construction: density selection on both sides, even-cover
/// refinement, bucketing by the subsets F_j c F with |F_j| = ceil(|F| tau/2)
/// landing in J_1, and cardinality-matched center sets with a bijection
/// realizing the overlap guarantee. Precondition failures throw; conclusions
/// that fail at small d are reported via `conclusions_met` and diagnostics.
MatchedTiles matched_tiles(const SoficMap& sigma,
                           const std::vector<GroupElement>& f_set,
                           const IndexSet& b1, const IndexSet& b2,
                           const IndexSet& j1, const IndexSet& j2, double tau,
                           double eta);

struct CommutingBijectionOptions {
  double eta = 0.02;
  int big_radius = -1;      // matched-tile shape radius; -1 = auto
  std::vector<int> small_radii;  // small-scale shape radii; empty = auto
  int f_radius = 1;         // F = ball(f_radius) for the defect
  std::uint64_t seed = 0;
};

struct CommutingBijectionResult {
  std::vector<int> permutation;  // phi, verified bijection
  double max_defect = 1.0;       // max_{s in F} hamming(phi sigma_s, sigma_s phi)
  std::vector<std::pair<GroupElement, double>> defects;
  double overlap = 0.0;          // |phi(Y) n Z| / d
  double lambda_bound = 0.0;     // tau^2 (1 - tau') / 384
  double tau = 0.0, tau_prime = 0.0;
  bool defect_ok = false;        // max_defect < epsilon
  bool overlap_ok = false;       // overlap >= lambda_bound
  std::vector<std::string> diagnostics;
};

/// The approximately commuting permutation from the amenable-case ergodicity
/// argument: matched big tiles carry Y-mass onto Z-mass, a small-scale
/// quasitiling of both complements is matched shape-by-shape, and phi acts
/// tile-to-tile (identity assembly on the remainder). Output is always a true
/// permutation; threshold failures are reported, not thrown.
CommutingBijectionResult commuting_bijection(
    const SoficMap& sigma, const IndexSet& y_set, const IndexSet& z_set,
    double tau, double epsilon, const CommutingBijectionOptions& opts = {});

struct RfMixingReport {
  std::int64_t group_order = 0;        // D = |G/G_i|
  std::int64_t y_size = 0;
  GroupElement witness;                // s with |sigma'(s)Y dY| >= bound
  std::int64_t witness_sym_diff = 0;
  /// sum_s |sigma'(s)Y d Y| == 2 |Y| (D - |Y|), exact in integers.
  bool identity_exact = false;
  std::int64_t sym_diff_total = 0;
};

/// The mixing inequality for the right-multiplication action
/// sigma'(s)(t) = t s^{-1} on a finite quotient: verifies the averaged
/// symmetric-difference identity exactly and returns a witness achieving the
/// average.
RfMixingReport rf_mixing_check(const GroupSpec& quotient, const IndexSet& y_set);

}  // namespace soficlab
