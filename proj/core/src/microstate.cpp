#include "soficlab/microstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

namespace soficlab {

namespace {

void check_same_shape(const Microstate& phi, const Microstate& psi) {
  if (phi.d() != psi.d()) throw MismatchError("microstate size mismatch");
  if (phi.d() == 0) throw MismatchError("empty microstate");
}

}  // namespace

double rho2_maps(const ActionSpec& action, const Microstate& phi,
                 const Microstate& psi) {
  check_same_shape(phi, psi);
  double acc = 0.0;
  for (int a = 0; a < phi.d(); ++a) {
    double r = rho(action, phi.at(a), psi.at(a));
    acc += r * r;
  }
  return std::sqrt(acc / phi.d());
}

double rhoinf_maps(const ActionSpec& action, const Microstate& phi,
                   const Microstate& psi) {
  check_same_shape(phi, psi);
  double m = 0.0;
  for (int a = 0; a < phi.d(); ++a)
    m = std::max(m, rho(action, phi.at(a), psi.at(a)));
  return m;
}

double map_distance(const ActionSpec& action, MapMetric metric,
                    const Microstate& phi, const Microstate& psi) {
  return metric == MapMetric::Rho2 ? rho2_maps(action, phi, psi)
                                   : rhoinf_maps(action, phi, psi);
}

MicrostateCheck is_microstate(const ActionSpec& action, const Microstate& phi,
                              const std::vector<GroupElement>& f_set,
                              double delta) {
  if (!phi.sigma) throw MismatchError("microstate has no sofic map attached");
  const SoficMap& sigma = *phi.sigma;
  MicrostateCheck report;
  report.delta = delta;
  report.ok = true;
  for (const auto& s : f_set) {
    if (!sigma.in_support(s))
      throw MismatchError("F element outside sofic support: " +
                          format_element(action.group, s));
    double acc = 0.0;
    double tail = 0.0;
    for (int a = 0; a < phi.d(); ++a) {
      PointPattern moved = act(action, s, phi.at(a));
      const PointPattern& target = phi.at(sigma.image(s, a));
      double r = rho(action, moved, target);
      acc += r * r;
      tail = std::max(tail, rho_tail(moved, target));
    }
    double defect = std::sqrt(acc / phi.d());
    report.defects.emplace_back(s, defect);
    report.max_defect = std::max(report.max_defect, defect);
    report.max_tail = std::max(report.max_tail, tail);
    if (!(defect < delta)) report.ok = false;
  }
  return report;
}

Microstate fullshift_microstate(const ActionSpec& action,
                                const std::vector<int>& omega,
                                const SoficMap& sigma, int radius) {
  if (!action.is_symbolic())
    throw MismatchError("fullshift_microstate needs a symbolic action");
  if (static_cast<int>(omega.size()) != sigma.d())
    throw MismatchError("omega length must equal d");
  int k = action.alphabet_size();
  for (int v : omega)
    if (v < 0 || v >= k) throw MismatchError("omega symbol out of range");

  auto window = ball(action.group, radius);
  for (const auto& g : window)
    if (!sigma.in_support(group_inverse(action.group, g)))
      throw MismatchError("radius exceeds sofic support");

  Microstate phi;
  phi.sigma = &sigma;
  phi.entries.resize(sigma.d());
  for (int a = 0; a < sigma.d(); ++a) {
    PointPattern& x = phi.entries[a];
    x.group = action.group;
    x.radius = radius;
    for (const auto& g : window) {
      GroupElement s = group_inverse(action.group, g);
      x.symbols[g] = omega[sigma.image(s, a)];
    }
  }
  return phi;
}

Microstate algebraic_microstate(const ActionSpec& action,
                                const std::vector<std::vector<std::int64_t>>& xi,
                                const SoficMap& sigma, double bound_m,
                                int radius) {
  const AlgebraicAction& alg = action.algebraic();
  int n = alg.matrix.n();
  if (static_cast<int>(xi.size()) != sigma.d())
    throw MismatchError("xi length must equal d");
  for (const auto& v : xi) {
    if (static_cast<int>(v.size()) != n) throw MismatchError("xi rank mismatch");
    for (auto c : v)
      if (std::abs(static_cast<double>(c)) > bound_m)
        throw MismatchError("||xi||_inf exceeds the declared bound");
  }

  const RingMatrix& b = alg.adjoint_inverse;  // truncated (A*)^{-1}
  std::int64_t b_radius = 0;
  double tail_mass = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      b_radius = std::max(b_radius, b.at(i, j).support_radius());
      tail_mass += b.at(i, j).tail();
    }
  double value_tail = bound_m * tail_mass;

  auto window = ball(action.group, radius);
  // phi(a)_j(g) = sum_i sum_s xi((s g^{-1}) a)_i * B_ij(s); every s g^{-1}
  // must lie in the sofic support.
  for (const auto& g : window) {
    GroupElement g_inv = group_inverse(action.group, g);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const auto& [s, c] : b.at(i, j).float_coeffs())
          if (!sigma.in_support(group_mul(action.group, s, g_inv)))
            throw MismatchError(
                "sofic support does not cover the convolution radius");
  }

  Microstate phi;
  phi.sigma = &sigma;
  phi.entries.resize(sigma.d());
  for (int a = 0; a < sigma.d(); ++a) {
    PointPattern& x = phi.entries[a];
    x.group = action.group;
    x.radius = radius;
    x.tail = value_tail;
    for (const auto& g : window) {
      GroupElement g_inv = group_inverse(action.group, g);
      std::vector<double> value(n, 0.0);
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
          for (const auto& [s, c] : b.at(i, j).float_coeffs()) {
            int idx = sigma.image(group_mul(action.group, s, g_inv), a);
            acc += static_cast<double>(xi[idx][i]) * c;
          }
        }
        value[j] = acc - std::floor(acc);
      }
      x.torus[g] = std::move(value);
    }
  }
  return phi;
}

double MicrostateFamily::log_size() const {
  if (is_power()) {
    const auto& p = power();
    return p.d * std::log(static_cast<double>(p.base));
  }
  if (is_certified()) return certified().log_size;
  return std::log(static_cast<double>(explicit_members().size()));
}

bool MicrostateFamily::empty() const {
  if (is_power()) return power().d == 0 || power().base == 0;
  if (is_certified()) return certified().log_size <= 0.0;
  return explicit_members().empty();
}

namespace {

// Branch-and-bound maximum independent set on the conflict graph, adjacency
// given as bitsets.
struct MisSolver {
  int n;
  std::vector<std::vector<std::uint64_t>> adj;
  int best = 0;

  bool test(const std::vector<std::uint64_t>& set, int v) const {
    return (set[v >> 6] >> (v & 63)) & 1;
  }
  void clear(std::vector<std::uint64_t>& set, int v) const {
    set[v >> 6] &= ~(1ull << (v & 63));
  }
  int count(const std::vector<std::uint64_t>& set) const {
    int c = 0;
    for (auto w : set) c += std::popcount(w);
    return c;
  }

  void solve(std::vector<std::uint64_t> candidates, int size) {
    int remaining = count(candidates);
    if (size + remaining <= best) return;
    if (remaining == 0) {
      best = std::max(best, size);
      return;
    }
    // pick the candidate of highest degree within the candidate set
    int pick = -1, pick_deg = -1;
    for (int v = 0; v < n; ++v) {
      if (!test(candidates, v)) continue;
      int deg = 0;
      for (std::size_t w = 0; w < adj[v].size(); ++w)
        deg += std::popcount(adj[v][w] & candidates[w]);
      if (deg > pick_deg) {
        pick_deg = deg;
        pick = v;
      }
    }
    // include pick
    auto with = candidates;
    clear(with, pick);
    for (std::size_t w = 0; w < adj[pick].size(); ++w) with[w] &= ~adj[pick][w];
    solve(std::move(with), size + 1);
    // exclude pick
    clear(candidates, pick);
    solve(std::move(candidates), size);
  }
};

}  // namespace

SeparationReport separated_count(const ActionSpec& action,
                                 const MicrostateFamily& family, double epsilon,
                                 MapMetric metric,
                                 const SeparationOptions& opts) {
  SeparationReport report;
  report.epsilon = epsilon;
  report.metric = metric;
  report.seed = opts.seed;

  if (family.empty()) throw MismatchError("separated_count needs a nonempty family");

  if (family.is_power()) {
    const auto& p = family.power();
    // All distinct members are at rho_inf distance exactly unit_distance and
    // rho_2 distance >= unit_distance / sqrt(d).
    double min_dist = metric == MapMetric::RhoInf
                          ? p.unit_distance
                          : p.unit_distance / std::sqrt(static_cast<double>(p.d));
    if (epsilon <= min_dist) {
      report.bound = SeparationReport::Bound::Exact;
      report.power_form = std::make_pair(p.base, p.d);
      report.log_count = p.d * std::log(static_cast<double>(p.base));
      double exact = std::pow(static_cast<double>(p.base), p.d);
      if (exact < 9e18) report.count = static_cast<std::int64_t>(exact);
      return report;
    }
    if (metric == MapMetric::RhoInf && epsilon > p.max_unit_distance) {
      // every pair is closer than epsilon: a single element is maximal
      report.bound = SeparationReport::Bound::Exact;
      report.log_count = 0.0;
      report.count = 1;
      return report;
    }
    throw BudgetExhausted(
        "implicit power family cannot be counted at this epsilon; materialize "
        "the family explicitly");
  }

  if (family.is_certified()) {
    const auto& c = family.certified();
    double min_dist = metric == MapMetric::RhoInf
                          ? c.min_distance
                          : c.min_distance / std::sqrt(static_cast<double>(c.d));
    if (epsilon <= min_dist) {
      report.bound = SeparationReport::Bound::Exact;
      report.log_count = c.log_size;
      if (c.power_form && c.power_form->first <= INT32_MAX)
        report.power_form = std::make_pair(
            static_cast<int>(c.power_form->first), c.power_form->second);
      report.count = c.size;
      return report;
    }
    throw BudgetExhausted(
        "certified family only counts below its separation bound");
  }

  const auto& members = family.explicit_members();
  int n = static_cast<int>(members.size());

  if (opts.mode == SeparationOptions::Mode::Exact) {
    if (static_cast<std::int64_t>(n) * (n - 1) / 2 > opts.pair_budget)
      throw BudgetExhausted("exact separated_count pair budget exceeded");
    int words = (n + 63) / 64;
    MisSolver solver;
    solver.n = n;
    solver.adj.assign(n, std::vector<std::uint64_t>(words, 0));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double dist = map_distance(action, metric, members[i], members[j]);
        if (dist < epsilon) {
          solver.adj[i][j >> 6] |= 1ull << (j & 63);
          solver.adj[j][i >> 6] |= 1ull << (i & 63);
        }
      }
    std::vector<std::uint64_t> all(words, 0);
    for (int v = 0; v < n; ++v) all[v >> 6] |= 1ull << (v & 63);
    solver.solve(std::move(all), 0);
    report.bound = SeparationReport::Bound::Exact;
    report.count = solver.best;
    report.log_count = std::log(static_cast<double>(solver.best));
    return report;
  }

  // Greedy maximal packing in a seeded order, lowest index first after the
  // recorded shuffle.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(opts.seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> kept;
  for (int v : order) {
    bool ok = true;
    for (int u : kept)
      if (map_distance(action, metric, members[v], members[u]) < epsilon) {
        ok = false;
        break;
      }
    if (ok) kept.push_back(v);
  }
  report.bound = SeparationReport::Bound::GreedyLower;
  report.count = static_cast<std::int64_t>(kept.size());
  report.log_count = std::log(static_cast<double>(kept.size()));
  return report;
}

}  // namespace soficlab
