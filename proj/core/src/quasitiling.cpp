#include "soficlab/quasitiling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace soficlab {

namespace {

std::vector<char> to_mask(const IndexSet& set, int d) {
  std::vector<char> mask(d, 0);
  for (int a : set) {
    if (a < 0 || a >= d) throw MismatchError("index set out of range");
    mask[a] = 1;
  }
  return mask;
}

void check_f_injectivity(const SoficMap& sigma,
                         const std::vector<GroupElement>& f_set,
                         const IndexSet& b_set, const char* where) {
  for (std::size_t i = 0; i < f_set.size(); ++i)
    for (std::size_t j = i + 1; j < f_set.size(); ++j) {
      const auto& pi = sigma.permutation(f_set[i]);
      const auto& pj = sigma.permutation(f_set[j]);
      for (int a : b_set)
        if (pi[a] == pj[a]) {
          std::ostringstream os;
          os << where << ": F-injectivity precondition fails at index " << a;
          throw MismatchError(os.str());
        }
    }
}

IndexSet tile_of(const SoficMap& sigma,
                 const std::vector<GroupElement>& shape, int center) {
  IndexSet tile;
  tile.reserve(shape.size());
  for (const auto& s : shape) tile.push_back(sigma.image(s, center));
  std::sort(tile.begin(), tile.end());
  return tile;
}

bool tile_injective(const IndexSet& sorted_tile, std::size_t shape_size) {
  if (sorted_tile.size() != shape_size) return false;
  return std::adjacent_find(sorted_tile.begin(), sorted_tile.end()) ==
         sorted_tile.end();
}

}  // namespace

IndexSet density_select(const SoficMap& sigma,
                        const std::vector<GroupElement>& f_set,
                        const IndexSet& b_set, const IndexSet& j_set,
                        double lambda) {
  if (lambda <= 0.0 || lambda >= 1.0)
    throw MismatchError("density_select needs lambda in (0,1)");
  if (f_set.empty()) throw MismatchError("density_select needs nonempty F");
  check_f_injectivity(sigma, f_set, b_set, "density_select");

  int d = sigma.d();
  std::vector<char> in_j = to_mask(j_set, d);
  IndexSet v_set;
  for (int a : b_set) {
    int hit = 0;
    for (const auto& s : f_set)
      if (in_j[sigma.image(s, a)]) ++hit;
    if (hit > lambda * static_cast<double>(f_set.size())) v_set.push_back(a);
  }

  double bound = (b_set.size() * (1.0 - lambda) - d +
                  static_cast<double>(j_set.size())) /
                 (1.0 - lambda);
  if (static_cast<double>(v_set.size()) + 1e-9 < bound)
    throw Error("density_select cardinality bound violated");
  return v_set;
}

EvenCoverRefineResult even_cover_refine(const std::vector<IndexSet>& family,
                                        int d, double eta, double delta,
                                        const std::vector<int>& preselected,
                                        std::optional<double> stop_cover) {
  if (eta < 0.0 || eta >= 1.0 || delta < 0.0 || delta >= 1.0)
    throw MismatchError("even_cover_refine needs eta, delta in [0,1)");
  // Verify the delta-even covering claim with the measured multiplicity.
  std::vector<int> mult(d, 0);
  std::int64_t mass = 0;
  for (const auto& tile : family) {
    for (int a : tile) {
      if (a < 0 || a >= d) throw MismatchError("tile index out of range");
      ++mult[a];
    }
    mass += static_cast<std::int64_t>(tile.size());
  }
  int m = *std::max_element(mult.begin(), mult.end());
  if (static_cast<double>(mass) + 1e-9 < (1.0 - delta) * m * d)
    throw MismatchError("input family is not a delta-even cover");

  EvenCoverRefineResult out;
  out.multiplicity = m;
  std::vector<char> covered(d, 0);
  std::int64_t covered_count = 0;

  auto try_add = [&](int index, bool required) {
    const IndexSet& tile = family.at(index);
    IndexSet fresh;
    for (int a : tile)
      if (!covered[a]) fresh.push_back(a);
    if (static_cast<double>(fresh.size()) + 1e-9 <
        (1.0 - eta) * static_cast<double>(tile.size())) {
      if (required)
        throw MismatchError("preselected subfamily is not eta-disjoint");
      return false;
    }
    for (int a : fresh) covered[a] = 1;
    covered_count += static_cast<std::int64_t>(fresh.size());
    out.selected.push_back(index);
    out.witnesses.push_back(std::move(fresh));
    return true;
  };

  std::set<int> pre(preselected.begin(), preselected.end());
  for (int index : preselected) try_add(index, true);

  for (std::size_t i = 0; i < family.size(); ++i) {
    if (stop_cover &&
        static_cast<double>(covered_count) >= *stop_cover * d)
      break;
    if (pre.count(static_cast<int>(i))) continue;
    try_add(static_cast<int>(i), false);
  }

  out.cover_fraction = static_cast<double>(covered_count) / d;
  if (!stop_cover && eta <= 0.5 &&
      out.cover_fraction + 1e-9 < eta * (1.0 - delta))
    throw Error("even_cover_refine cover guarantee violated");
  return out;
}

void validate_tile_system(const TileSystem& tiles, const SoficMap& sigma) {
  int d = sigma.d();
  if (tiles.shapes.size() != tiles.centers.size() ||
      tiles.shapes.size() != tiles.witnesses.size())
    throw MismatchError("tile system arrays misaligned");

  // nesting
  for (std::size_t k = 1; k < tiles.shapes.size(); ++k) {
    std::set<GroupElement> larger(tiles.shapes[k].begin(),
                                  tiles.shapes[k].end());
    for (const auto& s : tiles.shapes[k - 1])
      if (!larger.count(s)) throw MismatchError("shapes are not nested");
  }

  std::vector<char> witness_union(d, 0);
  std::vector<std::vector<char>> shape_regions;
  std::int64_t union_count = 0;
  std::vector<char> all_region(d, 0);

  for (std::size_t k = 0; k < tiles.shapes.size(); ++k) {
    const auto& shape = tiles.shapes[k];
    std::vector<char> region(d, 0);
    if (tiles.centers[k].size() != tiles.witnesses[k].size())
      throw MismatchError("witnesses misaligned with centers");
    for (std::size_t ci = 0; ci < tiles.centers[k].size(); ++ci) {
      int c = tiles.centers[k][ci];
      IndexSet tile = tile_of(sigma, shape, c);
      if (!tile_injective(tile, shape.size()))
        throw MismatchError("per-tile injectivity fails");
      // witness must sit inside the tile and carry >= (1-eta) of it
      const IndexSet& w = tiles.witnesses[k][ci];
      for (int a : w) {
        if (!std::binary_search(tile.begin(), tile.end(), a))
          throw MismatchError("witness leaves its tile");
        if (witness_union[a])
          throw MismatchError("witness subsets are not pairwise disjoint");
      }
      if (static_cast<double>(w.size()) + 1e-9 <
          (1.0 - tiles.eta) * static_cast<double>(tile.size()))
        throw MismatchError("witness smaller than (1-eta) of its tile");
      for (int a : w) witness_union[a] = 1;
      for (int a : tile) region[a] = 1;
    }
    shape_regions.push_back(std::move(region));
  }

  // cross-shape full disjointness
  for (std::size_t k = 0; k < shape_regions.size(); ++k)
    for (std::size_t l = k + 1; l < shape_regions.size(); ++l)
      for (int a = 0; a < d; ++a)
        if (shape_regions[k][a] && shape_regions[l][a])
          throw MismatchError("tile regions overlap across shapes");

  for (std::size_t k = 0; k < shape_regions.size(); ++k)
    for (int a = 0; a < d; ++a)
      if (shape_regions[k][a] && !all_region[a]) {
        all_region[a] = 1;
        ++union_count;
      }
  double cover = static_cast<double>(union_count) / d;
  if (std::abs(cover - tiles.cover_fraction) > 1e-9)
    throw MismatchError("stored cover fraction does not match recount");

  if (!tiles.occupancy.empty()) {
    if (tiles.occupancy.size() != tiles.shapes.size())
      throw MismatchError("occupancy vector misaligned");
    for (std::size_t k = 0; k < shape_regions.size(); ++k) {
      std::int64_t count =
          std::count(shape_regions[k].begin(), shape_regions[k].end(), 1);
      if (std::abs(tiles.occupancy[k] - static_cast<double>(count) / d) > 1e-9)
        throw MismatchError("occupancy entry does not match recount");
    }
  }
}

double occupancy_deviation(const TileSystem& tiles,
                           const std::vector<double>& reference) {
  if (tiles.occupancy.empty())
    throw MismatchError("tile system carries no occupancy vector");
  if (tiles.occupancy.size() != reference.size())
    throw MismatchError("occupancy reference length mismatch");
  double dev = 0.0;
  for (std::size_t k = 0; k < reference.size(); ++k)
    dev += std::abs(tiles.occupancy[k] - reference[k]);
  return dev;
}

TileSystem quasitile(const SoficMap& sigma,
                     const std::vector<std::vector<GroupElement>>& shapes,
                     const IndexSet& v_set, double tau, double eta,
                     const QuasitileOptions& opts) {
  if (shapes.empty()) throw MismatchError("quasitile needs at least one shape");
  for (std::size_t k = 1; k < shapes.size(); ++k) {
    std::set<GroupElement> larger(shapes[k].begin(), shapes[k].end());
    for (const auto& s : shapes[k - 1])
      if (!larger.count(s)) throw MismatchError("shapes are not nested");
  }
  int d = sigma.d();
  if (!opts.blocked.empty() &&
      static_cast<int>(opts.blocked.size()) != d)
    throw MismatchError("blocked mask size mismatch");

  TileSystem tiles;
  tiles.shapes = shapes;
  tiles.centers.resize(shapes.size());
  tiles.witnesses.resize(shapes.size());
  tiles.tau = tau;
  tiles.eta = eta;

  std::vector<char> cross_region(d, 0);   // full tiles of other shapes
  std::vector<char> all_region(d, 0);
  std::int64_t skipped_injectivity = 0;

  // Largest shape first, ascending center index within a shape.
  for (int k = static_cast<int>(shapes.size()) - 1; k >= 0; --k) {
    const auto& shape = shapes[k];
    std::vector<char> disjointified(d, 0);  // within-shape witness union
    std::vector<char> shape_region(d, 0);
    for (int c : v_set) {
      IndexSet tile = tile_of(sigma, shape, c);
      if (!tile_injective(tile, shape.size())) {
        ++skipped_injectivity;
        continue;
      }
      bool clash = false;
      for (int a : tile) {
        if (cross_region[a] || (!opts.blocked.empty() && opts.blocked[a])) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      IndexSet fresh;
      for (int a : tile)
        if (!disjointified[a]) fresh.push_back(a);
      if (static_cast<double>(fresh.size()) + 1e-9 <
          (1.0 - eta) * static_cast<double>(tile.size()))
        continue;
      for (int a : fresh) disjointified[a] = 1;
      for (int a : tile) shape_region[a] = 1;
      tiles.centers[k].push_back(c);
      tiles.witnesses[k].push_back(std::move(fresh));
    }
    for (int a = 0; a < d; ++a)
      if (shape_region[a]) {
        cross_region[a] = 1;
        all_region[a] = 1;
      }
  }

  std::int64_t covered = std::count(all_region.begin(), all_region.end(), 1);
  tiles.cover_fraction = static_cast<double>(covered) / d;

  if (opts.want_occupancy) {
    tiles.occupancy.resize(shapes.size(), 0.0);
    for (std::size_t k = 0; k < shapes.size(); ++k) {
      std::vector<char> region(d, 0);
      for (int c : tiles.centers[k])
        for (const auto& s : shapes[k]) region[sigma.image(s, c)] = 1;
      tiles.occupancy[k] =
          static_cast<double>(std::count(region.begin(), region.end(), 1)) / d;
    }
  }

  validate_tile_system(tiles, sigma);

  if (tiles.cover_fraction + 1e-9 < 1.0 - tau - eta) {
    std::ostringstream os;
    os << "quasitile cover " << tiles.cover_fraction << " short of "
       << 1.0 - tau - eta << " (|V|/d = "
       << static_cast<double>(v_set.size()) / d
       << ", centers skipped for injectivity: " << skipped_injectivity << ")";
    throw SigmaQualityError(os.str());
  }
  return tiles;
}

MatchedTiles matched_tiles(const SoficMap& sigma,
                           const std::vector<GroupElement>& f_set,
                           const IndexSet& b1, const IndexSet& b2,
                           const IndexSet& j1, const IndexSet& j2, double tau,
                           double eta) {
  if (tau <= 0.0 || tau > 1.0) throw MismatchError("tau must lie in (0,1]");
  if (eta <= 0.0 || eta >= 0.5) throw MismatchError("eta must lie in (0,1/2)");
  int d = sigma.d();
  double tau_prime = tau / 2.0 + (2.0 - 2.0 * tau) / (2.0 - tau);
  for (const IndexSet* b : {&b1, &b2})
    if (static_cast<double>(b->size()) + 1e-9 < tau_prime * d)
      throw MismatchError("|B_i| below (tau/2 + (2-2tau)/(2-tau)) d");
  for (const IndexSet* j : {&j1, &j2})
    if (static_cast<double>(j->size()) + 1e-9 < tau * d)
      throw MismatchError("|J_i| below tau d");
  check_f_injectivity(sigma, f_set, b1, "matched_tiles B1");
  check_f_injectivity(sigma, f_set, b2, "matched_tiles B2");

  MatchedTiles out;
  double lambda = tau / 2.0;
  double delta_cover = (2.0 - tau) / 2.0;
  double stop = eta * tau / 2.0;
  std::vector<char> in_j1 = to_mask(j1, d);
  std::vector<char> in_j2 = to_mask(j2, d);

  // Side 1: density selection, then eta-disjoint refinement stopped at
  // (eta tau / 2)-cover.
  IndexSet v1 = density_select(sigma, f_set, b1, j1, lambda);
  std::vector<IndexSet> family1;
  family1.reserve(v1.size());
  for (int c : v1) family1.push_back(tile_of(sigma, f_set, c));
  EvenCoverRefineResult r1 =
      even_cover_refine(family1, d, eta, delta_cover, {}, stop);

  // Bucket the side-1 centers by the first ceil(|F| tau / 2) positions of F
  // landing in J_1.
  std::size_t m = static_cast<std::size_t>(
      std::ceil(static_cast<double>(f_set.size()) * tau / 2.0));
  std::vector<std::vector<int>> bucket_keys;  // F-position subsets
  std::vector<IndexSet> w1_buckets;           // center lists (into v1 index)
  std::vector<std::vector<IndexSet>> w1_bucket_witness;
  std::map<std::vector<int>, std::size_t> key_index;
  for (std::size_t sel = 0; sel < r1.selected.size(); ++sel) {
    int c = v1[r1.selected[sel]];
    std::vector<int> hits;
    for (std::size_t fi = 0; fi < f_set.size(); ++fi)
      if (in_j1[sigma.image(f_set[fi], c)]) hits.push_back(static_cast<int>(fi));
    if (hits.size() < m)
      throw Error("density-selected center lost its J_1 hits");
    hits.resize(m);
    auto [it, inserted] = key_index.emplace(hits, bucket_keys.size());
    if (inserted) {
      bucket_keys.push_back(hits);
      w1_buckets.emplace_back();
      w1_bucket_witness.emplace_back();
    }
    w1_buckets[it->second].push_back(c);
    w1_bucket_witness[it->second].push_back(r1.witnesses[sel]);
  }

  // Side 2: per bucket, density-select against J_2 over the bucket's F_j,
  // then refine keeping everything chosen so far eta-disjoint.
  std::vector<int> chosen2;                 // flat center list
  std::vector<IndexSet> chosen2_witness;
  std::vector<std::size_t> chosen2_bucket;
  for (std::size_t bj = 0; bj < bucket_keys.size(); ++bj) {
    std::vector<GroupElement> f_j;
    for (int fi : bucket_keys[bj]) f_j.push_back(f_set[fi]);
    IndexSet v2j = density_select(sigma, f_j, b2, j2, lambda);

    // family: tiles of already-chosen centers first (preselected), then the
    // new candidates not already chosen.
    std::set<int> taken(chosen2.begin(), chosen2.end());
    std::vector<IndexSet> family;
    std::vector<int> centers_flat;
    std::vector<int> preselected;
    for (std::size_t i = 0; i < chosen2.size(); ++i) {
      family.push_back(tile_of(sigma, f_set, chosen2[i]));
      centers_flat.push_back(chosen2[i]);
      preselected.push_back(static_cast<int>(i));
    }
    for (int c : v2j)
      if (!taken.count(c)) {
        family.push_back(tile_of(sigma, f_set, c));
        centers_flat.push_back(c);
      }
    EvenCoverRefineResult r2 =
        even_cover_refine(family, d, eta, delta_cover, preselected, stop);

    std::size_t want = w1_buckets[bj].size();
    std::size_t got = 0;
    for (std::size_t si = 0; si < r2.selected.size() && got < want; ++si) {
      int index = r2.selected[si];
      if (index < static_cast<int>(chosen2.size())) continue;  // preselected
      chosen2.push_back(centers_flat[index]);
      chosen2_witness.push_back(r2.witnesses[si]);
      chosen2_bucket.push_back(bj);
      ++got;
    }
    if (got < want) {
      std::ostringstream os;
      os << "bucket " << bj << ": side-2 supply " << got << " short of "
         << want << " (d below the construction's threshold)";
      out.diagnostics.push_back(os.str());
    }
  }

  // Pair bucket-by-bucket; trim side 1 down to the side-2 supply.
  std::vector<std::size_t> used_per_bucket(bucket_keys.size(), 0);
  for (std::size_t i = 0; i < chosen2.size(); ++i) {
    std::size_t bj = chosen2_bucket[i];
    std::size_t take = used_per_bucket[bj]++;
    out.c1.push_back(w1_buckets[bj][take]);
    out.witnesses1.push_back(w1_bucket_witness[bj][take]);
    out.c2.push_back(chosen2[i]);
    out.witnesses2.push_back(chosen2_witness[i]);
  }

  // Measure the lemma's conclusions.
  std::vector<char> region1(d, 0), region2(d, 0);
  for (std::size_t i = 0; i < out.c1.size(); ++i) {
    for (const auto& s : f_set) {
      region1[sigma.image(s, out.c1[i])] = 1;
      region2[sigma.image(s, out.c2[i])] = 1;
    }
  }
  out.cover1 = static_cast<double>(
                   std::count(region1.begin(), region1.end(), 1)) / d;
  out.cover2 = static_cast<double>(
                   std::count(region2.begin(), region2.end(), 1)) / d;
  out.overlap_guarantee =
      (tau / 2.0) * (tau / 2.0) * static_cast<double>(f_set.size());
  out.min_pair_overlap = out.c1.empty() ? 0 : std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < out.c1.size(); ++i) {
    std::int64_t hits = 0;
    for (const auto& s : f_set)
      if (in_j1[sigma.image(s, out.c1[i])] &&
          in_j2[sigma.image(s, out.c2[i])])
        ++hits;
    out.min_pair_overlap = std::min(out.min_pair_overlap, hits);
  }

  double target = eta * tau / 16.0;
  bool covers_ok = out.cover1 + 1e-9 >= target && out.cover2 + 1e-9 >= target;
  bool overlap_ok =
      !out.c1.empty() &&
      static_cast<double>(out.min_pair_overlap) + 1e-9 >= out.overlap_guarantee;
  if (!covers_ok)
    out.diagnostics.push_back("eta tau/16 cover conclusion not met");
  if (!overlap_ok)
    out.diagnostics.push_back("per-pair overlap guarantee not met");
  out.conclusions_met = covers_ok && overlap_ok;
  return out;
}

namespace {

struct PairedTiles {
  // aligned: domain center, range center, shape elements, trimmed s-set
  std::vector<int> dom, ran;
  std::vector<std::vector<GroupElement>> moves;
};

}  // namespace

CommutingBijectionResult commuting_bijection(
    const SoficMap& sigma, const IndexSet& y_set, const IndexSet& z_set,
    double tau, double epsilon, const CommutingBijectionOptions& opts) {
  int d = sigma.d();
  CommutingBijectionResult result;
  result.tau = tau;
  double tau_prime = tau / 2.0 + (2.0 - 2.0 * tau) / (2.0 - tau);
  result.tau_prime = tau_prime;
  result.lambda_bound = tau * tau * (1.0 - tau_prime) / 384.0;

  if (static_cast<double>(y_set.size()) + 1e-9 < 2.0 * tau * d ||
      static_cast<double>(z_set.size()) + 1e-9 < 2.0 * tau * d)
    throw MismatchError("|Y|/d and |Z|/d must be >= 2 tau");

  double eta = std::min(opts.eta, 0.49);
  double eta_cap = (1.0 - tau_prime) / 24.0 * 16.0 / tau;
  if (eta >= eta_cap) eta = eta_cap / 2.0;

  // Big scale: matched tiles carrying Y onto Z. The shape is a ball large
  // enough that the per-pair overlap guarantee (tau/2)^2 |F| exceeds one
  // point.
  int big_radius = opts.big_radius;
  if (big_radius < 0) {
    big_radius = 1;
    while (static_cast<double>(
               ball(sigma.group(), big_radius).size()) *
               (tau / 2.0) * (tau / 2.0) <
           2.0)
      ++big_radius;
  }
  auto f_big = ball(sigma.group(), big_radius);
  if (static_cast<int>(f_big.size()) > d)
    throw MismatchError("big shape exceeds the point set");

  // B: indices where sigma behaves like a quotient on the needed support.
  IndexSet b_all;
  {
    std::vector<char> good(d, 1);
    for (std::size_t i = 0; i < f_big.size(); ++i)
      for (std::size_t j = i + 1; j < f_big.size(); ++j) {
        const auto& pi = sigma.permutation(f_big[i]);
        const auto& pj = sigma.permutation(f_big[j]);
        for (int a = 0; a < d; ++a)
          if (pi[a] == pj[a]) good[a] = 0;
      }
    for (int a = 0; a < d; ++a)
      if (good[a]) b_all.push_back(a);
  }
  {
    std::ostringstream os;
    os << "quality locus |B|/d = " << static_cast<double>(b_all.size()) / d;
    result.diagnostics.push_back(os.str());
  }

  MatchedTiles big =
      matched_tiles(sigma, f_big, b_all, b_all, y_set, z_set, tau, eta);
  for (const auto& diag : big.diagnostics)
    result.diagnostics.push_back("matched_tiles: " + diag);

  PairedTiles pairs;
  std::vector<char> big_region1(d, 0), big_region2(d, 0);
  for (std::size_t i = 0; i < big.c1.size(); ++i) {
    std::vector<char> w1(d, 0), w2(d, 0);
    for (int a : big.witnesses1[i]) w1[a] = 1;
    for (int a : big.witnesses2[i]) w2[a] = 1;
    std::vector<GroupElement> moves;
    for (const auto& s : f_big) {
      int p = sigma.image(s, big.c1[i]);
      int q = sigma.image(s, big.c2[i]);
      big_region1[p] = 1;
      big_region2[q] = 1;
      if (w1[p] && w2[q]) moves.push_back(s);
    }
    pairs.dom.push_back(big.c1[i]);
    pairs.ran.push_back(big.c2[i]);
    pairs.moves.push_back(std::move(moves));
  }

  // Small scale: quasitile both complements with nested ball shapes and
  // match the center lists shape by shape.
  std::vector<int> small_radii = opts.small_radii;
  if (small_radii.empty())
    small_radii = {2 * opts.f_radius, 8 * opts.f_radius};
  std::sort(small_radii.begin(), small_radii.end());
  std::vector<std::vector<GroupElement>> small_shapes;
  for (int r : small_radii) small_shapes.push_back(ball(sigma.group(), r));

  auto small_system = [&](const std::vector<char>& blocked) {
    IndexSet v;
    for (int a : b_all) {
      bool free_center = true;
      for (const auto& s : small_shapes.back())
        if (blocked[sigma.image(s, a)]) {
          free_center = false;
          break;
        }
      if (free_center) v.push_back(a);
    }
    double theta = 1.0 - static_cast<double>(v.size()) / d;
    QuasitileOptions qopts;
    qopts.blocked = blocked;
    return quasitile(sigma, small_shapes, v, theta, eta, qopts);
  };
  TileSystem small1 = small_system(big_region1);
  TileSystem small2 = small_system(big_region2);

  for (std::size_t k = 0; k < small_shapes.size(); ++k) {
    std::size_t count =
        std::min(small1.centers[k].size(), small2.centers[k].size());
    if (small1.centers[k].size() != small2.centers[k].size()) {
      std::ostringstream os;
      os << "small shape " << k << ": center counts "
         << small1.centers[k].size() << " vs " << small2.centers[k].size()
         << "; pairing the first " << count;
      result.diagnostics.push_back(os.str());
    }
    for (std::size_t i = 0; i < count; ++i) {
      int c = small1.centers[k][i];
      int c2 = small2.centers[k][i];
      std::vector<char> w1(d, 0), w2(d, 0);
      for (int a : small1.witnesses[k][i]) w1[a] = 1;
      for (int a : small2.witnesses[k][i]) w2[a] = 1;
      std::vector<GroupElement> moves;
      for (const auto& s : small_shapes[k]) {
        int p = sigma.image(s, c);
        int q = sigma.image(s, c2);
        if (w1[p] && w2[q]) moves.push_back(s);
      }
      pairs.dom.push_back(c);
      pairs.ran.push_back(c2);
      pairs.moves.push_back(std::move(moves));
    }
  }

  // Assemble phi tile-to-tile, then extend over the leftovers in index order.
  std::vector<int> phi(d, -1);
  std::vector<char> range_used(d, 0);
  for (std::size_t i = 0; i < pairs.dom.size(); ++i)
    for (const auto& s : pairs.moves[i]) {
      int p = sigma.image(s, pairs.dom[i]);
      int q = sigma.image(s, pairs.ran[i]);
      if (phi[p] != -1 || range_used[q])
        throw Error("tile pieces overlap during assembly");
      phi[p] = q;
      range_used[q] = 1;
    }
  {
    std::vector<int> free_range;
    for (int q = 0; q < d; ++q)
      if (!range_used[q]) free_range.push_back(q);
    std::size_t next = 0;
    for (int p = 0; p < d; ++p)
      if (phi[p] == -1) phi[p] = free_range[next++];
    if (next != free_range.size()) throw Error("assembly lost points");
  }
  {
    std::vector<char> seen(d, 0);
    for (int q : phi) {
      if (q < 0 || q >= d || seen[q]) throw Error("phi is not a permutation");
      seen[q] = 1;
    }
  }
  result.permutation = phi;

  // Defect and overlap.
  auto f_eps = ball(sigma.group(), opts.f_radius);
  result.max_defect = 0.0;
  for (const auto& s : f_eps) {
    const auto& ps = sigma.permutation(s);
    std::vector<int> lhs(d), rhs(d);
    for (int a = 0; a < d; ++a) {
      lhs[a] = phi[ps[a]];
      rhs[a] = ps[phi[a]];
    }
    double defect = hamming(lhs, rhs);
    result.defects.emplace_back(s, defect);
    result.max_defect = std::max(result.max_defect, defect);
  }
  std::vector<char> in_z = to_mask(z_set, d);
  std::int64_t overlap_count = 0;
  for (int a : y_set)
    if (in_z[phi[a]]) ++overlap_count;
  result.overlap = static_cast<double>(overlap_count) / d;
  result.defect_ok = result.max_defect < epsilon;
  result.overlap_ok = result.overlap + 1e-12 >= result.lambda_bound;
  if (!result.defect_ok) {
    std::ostringstream os;
    os << "defect " << result.max_defect << " >= epsilon " << epsilon;
    result.diagnostics.push_back(os.str());
  }
  if (!result.overlap_ok) {
    std::ostringstream os;
    os << "overlap " << result.overlap << " < lambda " << result.lambda_bound;
    result.diagnostics.push_back(os.str());
  }
  return result;
}

RfMixingReport rf_mixing_check(const GroupSpec& quotient,
                               const IndexSet& y_set) {
  if (quotient.kind != GroupSpec::Kind::CyclicQuotient)
    throw MismatchError("rf_mixing_check needs a finite quotient");
  std::int64_t order = quotient.order();
  RfMixingReport report;
  report.group_order = order;
  report.y_size = static_cast<std::int64_t>(y_set.size());
  std::vector<char> in_y(order, 0);
  for (int a : y_set) {
    if (a < 0 || a >= order) throw MismatchError("Y index out of range");
    in_y[a] = 1;
  }

  // sigma'(s)(t) = t s^{-1}
  std::int64_t best = -1;
  report.sym_diff_total = 0;
  for (std::int64_t si = 0; si < order; ++si) {
    GroupElement s = quotient_element(quotient, si);
    std::int64_t diff = 0;
    for (std::int64_t t = 0; t < order; ++t) {
      // t in sigma'(s)Y = Y s^{-1} iff t s in Y.
      GroupElement moved =
          group_mul(quotient, quotient_element(quotient, t), s);
      bool in_translated = in_y[quotient_index(quotient, moved)];
      if (in_translated != static_cast<bool>(in_y[t])) ++diff;
    }
    report.sym_diff_total += diff;
    if (diff > best) {
      best = diff;
      report.witness = s;
      report.witness_sym_diff = diff;
    }
  }

  // Exact integer identity: sum_s |sigma'(s)Y d Y| = 2 |Y| (D - |Y|).
  report.identity_exact =
      report.sym_diff_total == 2 * report.y_size * (order - report.y_size);
  if (!report.identity_exact)
    throw Error("rf mixing averaged identity failed exact check");

  // The witness achieves the average: |sigma'(s)Y d Y| * D >= 2|Y|(D - |Y|).
  if (report.witness_sym_diff * order <
      2 * report.y_size * (order - report.y_size))
    throw Error("rf mixing witness below the averaged bound");
  return report;
}

}  // namespace soficlab
