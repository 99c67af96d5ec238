#include "soficlab/independence.hpp"

#include "soficlab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace soficlab {

namespace {

using PositionConstraints = std::map<GroupElement, std::set<int>>;

std::set<int> full_alphabet(int k) {
  std::set<int> s;
  for (int i = 0; i < k; ++i) s.insert(i);
  return s;
}

/// Intersects the cylinder constraints of `set` translated by s^{-1} into
/// `acc`; returns false when some position's allowed set becomes empty.
bool merge_translated(const ActionSpec& action, const GroupElement& s_inv,
                      const ConstraintSet& set, PositionConstraints& acc) {
  const auto* cyls = std::get_if<std::vector<CylinderConstraint>>(&set);
  if (!cyls)
    throw MismatchError(
        "orbit independence needs cylinder tuples; use the sofic variant for "
        "metric balls");
  for (const auto& c : *cyls) {
    GroupElement pos = group_mul(action.group, s_inv, c.pos);
    auto [it, inserted] = acc.emplace(pos, c.allowed);
    if (!inserted) {
      std::set<int> meet;
      std::set_intersection(it->second.begin(), it->second.end(),
                            c.allowed.begin(), c.allowed.end(),
                            std::inserter(meet, meet.begin()));
      it->second = std::move(meet);
    }
    if (it->second.empty()) return false;
  }
  return true;
}

/// Backtracking fill of the window spanned by the constraints (plus a margin
/// for forbidden patterns): True when a labeling avoiding every fully
/// contained forbidden pattern exists, Unknown on budget exhaustion.
Tristate fill_window(const ActionSpec& action,
                     const PositionConstraints& constraints,
                     const SearchOptions& opts) {
  int k = action.alphabet_size();
  const auto* forbidden = action.forbidden();
  if (!forbidden || forbidden->empty()) return Tristate::True;

  int pattern_radius = 0;
  for (const auto& p : *forbidden)
    for (const auto& cell : p.cells)
      pattern_radius = std::max(
          pattern_radius,
          static_cast<int>(word_length(action.group, cell.offset)));
  int margin = opts.window_margin >= 0 ? opts.window_margin : pattern_radius;

  std::set<GroupElement> window;
  auto margin_ball = ball(action.group, pattern_radius + margin);
  for (const auto& [pos, allowed] : constraints)
    for (const auto& off : margin_ball)
      window.insert(group_mul(action.group, pos, off));
  std::vector<GroupElement> cells(window.begin(), window.end());

  std::map<GroupElement, int> cell_index;
  for (std::size_t i = 0; i < cells.size(); ++i) cell_index[cells[i]] = static_cast<int>(i);

  // Precompute, per cell, the pattern placements whose last-assigned cell it
  // is (placements fully inside the window).
  struct Placement {
    std::vector<std::pair<int, const std::set<int>*>> checks;  // cell -> set
  };
  std::vector<std::vector<Placement>> closing(cells.size());
  for (const auto& g : cells) {
    for (const auto& p : *forbidden) {
      Placement pl;
      int last = -1;
      bool inside = true;
      for (const auto& cell : p.cells) {
        GroupElement pos = group_mul(action.group, g, cell.offset);
        auto it = cell_index.find(pos);
        if (it == cell_index.end()) {
          inside = false;
          break;
        }
        pl.checks.emplace_back(it->second, &cell.symbols);
        last = std::max(last, it->second);
      }
      if (inside && last >= 0) closing[last].push_back(std::move(pl));
    }
  }

  std::vector<std::set<int>> allowed(cells.size(), full_alphabet(k));
  for (const auto& [pos, cons] : constraints) allowed[cell_index[pos]] = cons;

  std::vector<int> labels(cells.size(), -1);
  std::int64_t budget = opts.fill_budget;

  std::function<Tristate(int)> dfs = [&](int idx) -> Tristate {
    if (idx == static_cast<int>(cells.size())) return Tristate::True;
    if (--budget <= 0) return Tristate::Unknown;
    for (int sym : allowed[idx]) {
      labels[idx] = sym;
      bool ok = true;
      for (const auto& pl : closing[idx]) {
        bool matches = true;
        for (const auto& [ci, syms] : pl.checks)
          if (!syms->count(labels[ci])) {
            matches = false;
            break;
          }
        if (matches) {
          ok = false;
          break;
        }
      }
      if (ok) {
        Tristate sub = dfs(idx + 1);
        if (sub != Tristate::False) {
          labels[idx] = -1;
          return sub;
        }
      }
    }
    labels[idx] = -1;
    return Tristate::False;
  };
  return dfs(0);
}

/// Enumerates omega: J -> {0..k-1} in mixed-radix order; f returns false to
/// stop early.
bool for_each_omega(std::size_t positions, int k,
                    const std::function<bool(const std::vector<int>&)>& f) {
  std::vector<int> omega(positions, 0);
  while (true) {
    if (!f(omega)) return false;
    std::size_t i = 0;
    while (i < positions && ++omega[i] == k) omega[i++] = 0;
    if (i == positions) return true;
  }
}

}  // namespace

Tristate is_independence_set(const ActionSpec& action,
                             const std::vector<GroupElement>& j_set,
                             const SetTuple& tuple,
                             const SearchOptions& opts) {
  if (!action.is_symbolic())
    throw MismatchError("orbit independence is decidable here only for "
                        "symbolic actions; use sofic_independence_check");
  if (j_set.empty()) return Tristate::True;
  int k = tuple.k();
  double total = std::pow(static_cast<double>(k),
                          static_cast<double>(j_set.size()));
  if (total > static_cast<double>(opts.omega_cap))
    throw BudgetExhausted("omega enumeration over cap in is_independence_set");

  std::vector<GroupElement> inverses;
  inverses.reserve(j_set.size());
  for (const auto& s : j_set)
    inverses.push_back(group_inverse(action.group, s));

  bool unknown = false;
  bool all_ok = for_each_omega(
      j_set.size(), k, [&](const std::vector<int>& omega) {
        PositionConstraints acc;
        for (std::size_t i = 0; i < j_set.size(); ++i)
          if (!merge_translated(action, inverses[i], tuple.sets[omega[i]], acc))
            return false;  // empty position intersection: omega unrealizable
        Tristate fill = fill_window(action, acc, opts);
        if (fill == Tristate::False) return false;
        if (fill == Tristate::Unknown) unknown = true;
        return true;
      });
  if (!all_ok) return Tristate::False;
  return unknown ? Tristate::Unknown : Tristate::True;
}

DensityResult independence_density(const ActionSpec& action,
                                   const std::vector<GroupElement>& f_set,
                                   const SetTuple& tuple,
                                   const SearchOptions& opts) {
  DensityResult best;
  if (f_set.empty()) {
    best.q = 1.0;
    best.exact = true;
    return best;
  }

  if (opts.mode == SearchOptions::Mode::Greedy) {
    std::vector<GroupElement> j;
    bool unknown = false;
    for (const auto& s : f_set) {
      j.push_back(s);
      Tristate t = is_independence_set(action, j, tuple, opts);
      if (t != Tristate::True) j.pop_back();
      if (t == Tristate::Unknown) unknown = true;
    }
    best.j_set = std::move(j);
    best.q = static_cast<double>(best.j_set.size()) / f_set.size();
    best.exact = false;
    best.hit_unknown = unknown;
    return best;
  }

  if (static_cast<int>(f_set.size()) > opts.exact_cap)
    throw BudgetExhausted("exact independence_density cap exceeded");

  std::vector<GroupElement> current;
  bool unknown = false;
  std::function<void(std::size_t)> dfs = [&](std::size_t idx) {
    if (current.size() + (f_set.size() - idx) <= best.j_set.size()) return;
    if (idx == f_set.size()) {
      if (current.size() > best.j_set.size()) best.j_set = current;
      return;
    }
    current.push_back(f_set[idx]);
    Tristate t = is_independence_set(action, current, tuple, opts);
    if (t == Tristate::Unknown) unknown = true;
    if (t == Tristate::True) dfs(idx + 1);
    current.pop_back();
    dfs(idx + 1);
  };
  // Seed with the empty set (always an independence set).
  dfs(0);
  best.q = static_cast<double>(best.j_set.size()) / f_set.size();
  best.exact = !unknown;
  best.hit_unknown = unknown;
  return best;
}

namespace {

SetTuple product_tuple(const ActionSpec& action_x, const ActionSpec& action_y,
                       const SetTuple& a, const SetTuple& b) {
  if (a.k() != b.k()) throw MismatchError("tuple lengths differ");
  int kb = action_y.alphabet_size();
  int ka = action_x.alphabet_size();
  SetTuple out;
  for (int i = 0; i < a.k(); ++i) {
    const auto& ca = std::get<std::vector<CylinderConstraint>>(a.sets[i]);
    const auto& cb = std::get<std::vector<CylinderConstraint>>(b.sets[i]);
    std::vector<CylinderConstraint> prod;
    for (const auto& c : ca) {
      std::set<int> lifted;
      for (int s = 0; s < ka * kb; ++s)
        if (c.allowed.count(s / kb)) lifted.insert(s);
      prod.push_back({c.pos, std::move(lifted)});
    }
    for (const auto& c : cb) {
      std::set<int> lifted;
      for (int s = 0; s < ka * kb; ++s)
        if (c.allowed.count(s % kb)) lifted.insert(s);
      prod.push_back({c.pos, std::move(lifted)});
    }
    out.sets.push_back(std::move(prod));
  }
  return out;
}

}  // namespace

ProductDensityReport product_density_check(const ActionSpec& action_x,
                                           const ActionSpec& action_y,
                                           const std::vector<GroupElement>& f_set,
                                           const SetTuple& a, const SetTuple& b,
                                           const SearchOptions& opts) {
  ProductDensityReport report;
  report.stage1 = independence_density(action_x, f_set, a, opts);
  report.stage2 = independence_density(action_y, report.stage1.j_set, b, opts);
  report.j1 = report.stage2.j_set;
  report.bound = report.stage1.q * report.stage2.q * f_set.size();
  if (static_cast<double>(report.j1.size()) + 1e-9 < report.bound)
    throw Error("product density certificate lost cardinality");

  ActionSpec prod = product_action(action_x, action_y);
  SetTuple tuple = product_tuple(action_x, action_y, a, b);
  report.validated =
      is_independence_set(prod, report.j1, tuple, opts) == Tristate::True;
  return report;
}

WitnessGenerator fullshift_witness_generator(const ActionSpec& action,
                                             const SetTuple& tuple,
                                             const SoficMap& sigma,
                                             int radius) {
  if (!std::holds_alternative<FullShiftAction>(action.variant))
    throw MismatchError("fullshift_witness_generator needs a full shift");
  int k = action.alphabet_size();
  return [&action, &tuple, &sigma, radius,
          k](const std::map<int, int>& assignment) -> std::optional<Microstate> {
    // phi_omega(a)(p) = omega(sigma_{p^{-1}}(a)): each cylinder constraint of
    // the assigned set pins the omega label of one index.
    std::vector<std::set<int>> allowed(sigma.d(), full_alphabet(k));
    for (const auto& [a, set_index] : assignment) {
      const auto& cyls =
          std::get<std::vector<CylinderConstraint>>(tuple.sets.at(set_index));
      for (const auto& c : cyls) {
        GroupElement p_inv = group_inverse(action.group, c.pos);
        int b = sigma.image(p_inv, a);
        std::set<int> meet;
        std::set_intersection(allowed[b].begin(), allowed[b].end(),
                              c.allowed.begin(), c.allowed.end(),
                              std::inserter(meet, meet.begin()));
        allowed[b] = std::move(meet);
        if (allowed[b].empty()) return std::nullopt;
      }
    }
    std::vector<int> omega(sigma.d());
    for (int i = 0; i < sigma.d(); ++i) omega[i] = *allowed[i].begin();
    return fullshift_microstate(action, omega, sigma, radius);
  };
}

SoficIndependenceResult sofic_independence_check(
    const ActionSpec& action, const std::vector<int>& j_set,
    const SetTuple& tuple, const std::vector<GroupElement>& f_set, double delta,
    const SoficMap& sigma, const WitnessGenerator& generator,
    const SearchOptions& opts) {
  SoficIndependenceResult result;
  if (j_set.empty()) {
    result.verdict = Tristate::True;
    return result;
  }
  int k = tuple.k();
  double total = std::pow(static_cast<double>(k),
                          static_cast<double>(j_set.size()));
  bool sample = total > static_cast<double>(opts.omega_cap);
  if (sample && !opts.allow_sampling)
    throw BudgetExhausted(
        "omega space over cap; rerun with sampling enabled (statistical mode)");
  result.sampled = sample;

  auto check_one = [&](const std::vector<int>& omega) -> bool {
    std::map<int, int> assignment;
    for (std::size_t i = 0; i < j_set.size(); ++i)
      assignment[j_set[i]] = omega[i];
    ++result.omegas_checked;
    std::optional<Microstate> phi = generator(assignment);
    if (!phi) {
      ++result.failures;
      result.failing_assignment = assignment;
      return false;
    }
    if (phi->sigma != &sigma)
      throw MismatchError("witness generator built against a different sigma");
    if (!is_microstate(action, *phi, f_set, delta).ok) {
      ++result.failures;
      result.failing_assignment = assignment;
      return false;
    }
    for (const auto& [a, set_index] : assignment)
      if (!satisfies(action, phi->at(a), tuple.sets.at(set_index))) {
        ++result.failures;
        result.failing_assignment = assignment;
        return false;
      }
    return true;
  };

  bool all_ok = true;
  if (!sample) {
    all_ok = for_each_omega(j_set.size(), k, check_one);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> dist(0, k - 1);
    for (int trial = 0; trial < opts.sample_count; ++trial) {
      std::vector<int> omega(j_set.size());
      for (auto& v : omega) v = dist(rng);
      if (!check_one(omega)) {
        all_ok = false;
        break;
      }
    }
  }
  if (!all_ok)
    result.verdict = Tristate::False;
  else
    result.verdict = sample ? Tristate::Unknown : Tristate::True;
  return result;
}

AlgebraicIndependenceCertificate algebraic_independence_set(
    const ActionSpec& action, const std::vector<GroupElement>& k_set,
    const SoficMap& sigma, const std::vector<BasePoint>& base_points,
    const std::optional<SetTuple>& targets,
    const AlgebraicIndependenceOptions& opts) {
  const AlgebraicAction& alg = action.algebraic();
  int n = alg.matrix.n();
  if (k_set.empty()) throw MismatchError("K must be nonempty");
  if (base_points.empty()) throw MismatchError("base points required");
  double a_norm = l1_norm(alg.matrix);
  for (const auto& z : base_points)
    for (const auto& [s, v] : z.values) {
      if (static_cast<int>(v.size()) != n)
        throw MismatchError("base point rank mismatch");
      for (auto c : v)
        if (std::abs(static_cast<double>(c)) > a_norm)
          throw MismatchError("||z||_inf exceeds ||A||_1");
    }

  std::vector<GroupElement> k_inv;
  for (const auto& s : k_set) k_inv.push_back(group_inverse(action.group, s));
  for (const auto& s : k_inv)
    if (!sigma.in_support(s))
      throw MismatchError("K^{-1} leaves the sofic support");

  int d = sigma.d();
  AlgebraicIndependenceCertificate cert;

  // Lambda: indices where sigma separates the elements of K^{-1}.
  std::vector<char> in_lambda(d, 1);
  for (std::size_t i = 0; i < k_inv.size(); ++i)
    for (std::size_t j = i + 1; j < k_inv.size(); ++j) {
      const auto& pi = sigma.permutation(k_inv[i]);
      const auto& pj = sigma.permutation(k_inv[j]);
      for (int a = 0; a < d; ++a)
        if (pi[a] == pj[a]) in_lambda[a] = 0;
    }
  for (int a = 0; a < d; ++a) cert.lambda_size += in_lambda[a];

  if (2 * cert.lambda_size < d) {
    std::ostringstream os;
    os << "injectivity locus too small: |Lambda|/d = "
       << static_cast<double>(cert.lambda_size) / d << " < 1/2";
    throw SigmaQualityError(os.str());
  }

  // Greedy maximal subset of Lambda with pairwise disjoint K^{-1}-translates.
  std::vector<char> covered(d, 0);
  for (int a = 0; a < d; ++a) {
    if (!in_lambda[a]) continue;
    bool free = true;
    for (const auto& s : k_inv)
      if (covered[sigma.image(s, a)]) {
        free = false;
        break;
      }
    if (!free) continue;
    cert.j_set.push_back(a);
    for (const auto& s : k_inv) covered[sigma.image(s, a)] = 1;
  }
  cert.density = static_cast<double>(cert.j_set.size()) / d;
  double ksq = static_cast<double>(k_set.size()) * k_set.size();
  cert.guarantee = 1.0 / (2.0 * ksq);
  if (cert.density < cert.guarantee)
    throw Error("maximality bound |J| >= d/(2|K|^2) failed");

  // Witness generator: xi(sigma_t(a)) = (z_{omega(a)})_{t^{-1}} on the
  // disjoint K^{-1}-translates of J, zero elsewhere (Lemma L-point).
  int radius = opts.radius >= 0 ? opts.radius : opts.f_radius;
  WitnessGenerator generator =
      [&action, &sigma, &base_points, &k_inv, n, a_norm,
       radius](const std::map<int, int>& assignment) -> std::optional<Microstate> {
    std::vector<std::vector<std::int64_t>> xi(
        sigma.d(), std::vector<std::int64_t>(n, 0));
    for (const auto& [a, which] : assignment) {
      const BasePoint& z = base_points.at(which);
      for (const auto& t : k_inv) {
        GroupElement t_inv = group_inverse(action.group, t);
        auto it = z.values.find(t_inv);
        if (it != z.values.end()) xi[sigma.image(t, a)] = it->second;
      }
    }
    return algebraic_microstate(action, xi, sigma, a_norm, radius);
  };

  SearchOptions sopts;
  sopts.allow_sampling = true;
  sopts.sample_count = opts.witness_samples;
  sopts.seed = opts.seed;
  sopts.omega_cap = 1 << 12;

  auto f_set = ball(action.group, opts.f_radius);
  if (targets) {
    cert.validation = sofic_independence_check(action, cert.j_set, *targets,
                                               f_set, opts.delta, sigma,
                                               generator, sopts);
  } else {
    // No target sets: validate is_microstate on sampled assignments only.
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> dist(
        0, static_cast<int>(base_points.size()) - 1);
    cert.validation.sampled = true;
    cert.validation.verdict = Tristate::True;
    for (int trial = 0; trial < opts.witness_samples; ++trial) {
      std::map<int, int> assignment;
      for (int a : cert.j_set) assignment[a] = dist(rng);
      ++cert.validation.omegas_checked;
      auto phi = generator(assignment);
      if (!phi || !is_microstate(action, *phi, f_set, opts.delta).ok) {
        ++cert.validation.failures;
        cert.validation.failing_assignment = assignment;
        cert.validation.verdict = Tristate::False;
        break;
      }
    }
  }
  if (cert.validation.verdict == Tristate::False)
    throw Error("algebraic independence witnesses failed validation");
  return cert;
}

namespace {

/// Number of distinct restrictions of S to I, stopping at `needed`.
bool shatters(const std::vector<std::vector<int>>& s_tuples, int k,
              const std::vector<int>& coords, std::vector<std::int64_t>* witnesses) {
  std::int64_t needed = 1;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    needed *= k;
    if (needed > static_cast<std::int64_t>(s_tuples.size())) return false;
  }
  std::map<std::int64_t, std::int64_t> seen;  // restriction key -> element
  for (std::size_t idx = 0; idx < s_tuples.size(); ++idx) {
    std::int64_t key = 0;
    for (int c : coords) key = key * k + s_tuples[idx][c];
    seen.emplace(key, static_cast<std::int64_t>(idx));
    if (static_cast<std::int64_t>(seen.size()) == needed) break;
  }
  if (static_cast<std::int64_t>(seen.size()) != needed) return false;
  if (witnesses) {
    witnesses->resize(needed);
    for (const auto& [key, idx] : seen) (*witnesses)[key] = idx;
  }
  return true;
}

}  // namespace

KmResult km_extract(const std::vector<std::vector<int>>& s_tuples, int k,
                    const KmOptions& opts) {
  if (k < 2) throw MismatchError("km_extract needs alphabet k >= 2");
  if (s_tuples.empty()) throw MismatchError("empty tuple set");
  int n = static_cast<int>(s_tuples.front().size());
  for (const auto& t : s_tuples) {
    if (static_cast<int>(t.size()) != n) throw MismatchError("ragged tuple set");
    for (int v : t)
      if (v < 0 || v >= k) throw MismatchError("tuple entry out of range");
  }

  KmResult result;
  if (opts.mode == KmOptions::Mode::Greedy) {
    std::vector<int> coords;
    for (int c = 0; c < n; ++c) {
      coords.push_back(c);
      if (!shatters(s_tuples, k, coords, nullptr)) coords.pop_back();
    }
    result.coords = coords;
    shatters(s_tuples, k, result.coords, &result.witnesses);
    result.exact = false;
    result.achieved_ratio = static_cast<double>(coords.size()) / n;
    return result;
  }

  if (n > opts.exact_cap)
    throw BudgetExhausted("exact km_extract coordinate cap exceeded");

  // Level-wise growth: a set can only shatter if all its subsets do, so
  // candidates at size m are built from shattered sets at size m-1.
  std::set<std::vector<int>> level = {{}};
  std::vector<int> best;
  while (!level.empty()) {
    std::set<std::vector<int>> next;
    for (const auto& base : level) {
      int start = base.empty() ? 0 : base.back() + 1;
      for (int c = start; c < n; ++c) {
        std::vector<int> cand = base;
        cand.push_back(c);
        if (shatters(s_tuples, k, cand, nullptr)) {
          if (cand.size() > best.size()) best = cand;
          next.insert(std::move(cand));
        }
      }
    }
    level = std::move(next);
  }
  result.coords = best;
  shatters(s_tuples, k, result.coords, &result.witnesses);
  result.exact = true;
  result.achieved_ratio = static_cast<double>(best.size()) / n;
  return result;
}

DecompositionResult decomposition_split(
    const ActionSpec& action, const std::vector<int>& j_set,
    const SetTuple& tuple, const ConstraintSet& a11, const ConstraintSet& a12,
    const std::vector<GroupElement>& f_set, double delta, const SoficMap& sigma,
    const WitnessGenerator& generator, const SearchOptions& opts) {
  DecompositionResult result;
  if (j_set.empty()) {
    result.branch = 1;
    result.ratio = 1.0;
    result.validation.verdict = Tristate::True;
    return result;
  }
  int k = tuple.k();
  double total = std::pow(static_cast<double>(k),
                          static_cast<double>(j_set.size()));
  if (total > static_cast<double>(opts.omega_cap))
    throw BudgetExhausted("decomposition_split omega space over cap");

  // Refined patterns over the alphabet {0 -> A_{1,1}, k -> A_{1,2}, j -> A_j}.
  std::vector<std::vector<int>> refined;
  bool all_generated = for_each_omega(
      j_set.size(), k, [&](const std::vector<int>& omega) {
        std::map<int, int> assignment;
        for (std::size_t i = 0; i < j_set.size(); ++i)
          assignment[j_set[i]] = omega[i];
        auto phi = generator(assignment);
        if (!phi) return false;
        if (!is_microstate(action, *phi, f_set, delta).ok) return false;
        std::vector<int> pattern(j_set.size());
        for (std::size_t i = 0; i < j_set.size(); ++i) {
          int a = j_set[i];
          if (!satisfies(action, phi->at(a), tuple.sets.at(omega[i])))
            return false;
          if (omega[i] == 0) {
            bool in11 = satisfies(action, phi->at(a), a11);
            bool in12 = satisfies(action, phi->at(a), a12);
            if (!in11 && !in12) return false;  // witness escaped A_1's split
            pattern[i] = in11 ? 0 : k;
          } else {
            pattern[i] = omega[i];
          }
        }
        refined.push_back(std::move(pattern));
        return true;
      });
  if (!all_generated)
    throw Error("decomposition_split: witness regeneration failed");

  // For branch 1 every map I -> {0,1..k-1} must appear among the refined
  // restrictions; branch 2 uses symbol k in place of 0.
  auto covers = [&](const std::vector<int>& coords, int zero_symbol) {
    std::set<std::vector<int>> seen;
    for (const auto& r : refined) {
      std::vector<int> key;
      key.reserve(coords.size());
      bool usable = true;
      for (int c : coords) {
        int v = r[c];
        if (v == 0 || v == k) {
          if (v != zero_symbol) {
            usable = false;
            break;
          }
          key.push_back(0);
        } else {
          key.push_back(v);
        }
      }
      if (usable) seen.insert(std::move(key));
    }
    double needed = std::pow(static_cast<double>(k),
                             static_cast<double>(coords.size()));
    return static_cast<double>(seen.size()) == needed;
  };

  std::vector<int> best;
  int best_branch = 1;
  for (int branch : {1, 2}) {
    int zero_symbol = branch == 1 ? 0 : k;
    std::set<std::vector<int>> level = {{}};
    while (!level.empty()) {
      std::set<std::vector<int>> next;
      for (const auto& base : level) {
        int start = base.empty() ? 0 : base.back() + 1;
        for (int c = start; c < static_cast<int>(j_set.size()); ++c) {
          std::vector<int> cand = base;
          cand.push_back(c);
          if (covers(cand, zero_symbol)) {
            if (cand.size() > best.size()) {
              best = cand;
              best_branch = branch;
            }
            next.insert(std::move(cand));
          }
        }
      }
      level = std::move(next);
    }
  }

  result.branch = best_branch;
  for (int c : best) result.sub_j.push_back(j_set[c]);
  result.ratio = static_cast<double>(best.size()) / j_set.size();

  SetTuple branch_tuple = tuple;
  branch_tuple.sets[0] = best_branch == 1 ? a11 : a12;
  result.validation = sofic_independence_check(
      action, result.sub_j, branch_tuple, f_set, delta, sigma, generator, opts);
  return result;
}

LiYorkeReport li_yorke_scan(const ActionSpec& action, const PointPattern& x,
                            const PointPattern& y, int radius, double a,
                            double b) {
  if (!action.is_symbolic())
    throw MismatchError("li_yorke_scan supports symbolic actions");
  if (x.radius < radius || y.radius < radius)
    throw WindowExhausted("li_yorke_scan: window radius too small");
  LiYorkeReport report;
  report.threshold_a = a;
  report.threshold_b = b;

  std::vector<std::vector<GroupElement>> annuli(radius + 1);
  for (const auto& s : ball(action.group, radius))
    annuli[word_length(action.group, s)].push_back(s);

  for (int r = 0; r <= radius; ++r) {
    LiYorkeAnnulus ann;
    ann.radius = r;
    ann.sup = 0.0;
    ann.inf = std::numeric_limits<double>::infinity();
    for (const auto& s : annuli[r]) {
      double dist = rho(action, act(action, s, x), act(action, s, y));
      if (dist > ann.sup) ann.sup = dist;
      if (dist < ann.inf) ann.inf = dist;
      if (dist >= a && !ann.sup_witness) ann.sup_witness = s;
      if (dist <= b && !ann.inf_witness) ann.inf_witness = s;
    }
    if (ann.sup_witness) report.separation_evidence = true;
    if (ann.inf_witness) report.proximality_evidence = true;
    report.annuli.push_back(std::move(ann));
  }
  return report;
}

}  // namespace soficlab
