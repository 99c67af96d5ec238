#include "soficlab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace soficlab {

void EntropySchedule::validate() const {
  if (levels.empty()) throw MismatchError("schedule needs at least one level");
  if (f_radii.empty() || deltas.empty() || epsilons.empty())
    throw MismatchError("schedule grids must be nonempty");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i].d() < levels[i - 1].d())
      throw MismatchError("levels must have nondecreasing d");
  for (std::size_t i = 1; i < f_radii.size(); ++i)
    if (f_radii[i] <= f_radii[i - 1])
      throw MismatchError("F-chain radii must be strictly increasing");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (deltas[i] >= deltas[i - 1])
      throw MismatchError("delta grid must be strictly decreasing");
  for (std::size_t i = 1; i < epsilons.size(); ++i)
    if (epsilons[i] >= epsilons[i - 1])
      throw MismatchError("epsilon grid must be strictly decreasing");
  int max_radius = f_radii.back();
  for (const auto& sigma : levels)
    for (const auto& s : ball(action.group, max_radius))
      if (!sigma.in_support(s))
        throw MismatchError("F-chain leaves the support of a level");
}

MicrostateFamily fullshift_family(const ActionSpec& action,
                                  const SoficMap& sigma, int radius) {
  if (!std::holds_alternative<FullShiftAction>(action.variant))
    throw MismatchError("fullshift_family needs a full shift");
  int k = action.alphabet_size();
  PowerFamily fam;
  fam.base = k;
  fam.d = sigma.d();
  fam.unit_distance = 1.0;
  fam.max_unit_distance = static_cast<double>(action.metric_factors().size());
  fam.realize = [&action, &sigma, radius](const std::vector<int>& omega) {
    return fullshift_microstate(action, omega, sigma, radius);
  };
  return MicrostateFamily{std::move(fam)};
}

MicrostateFamily algebraic_constant_family(const ActionSpec& action,
                                           const SoficMap& sigma, int radius) {
  const AlgebraicAction& alg = action.algebraic();
  if (alg.matrix.n() != 1)
    throw MismatchError("algebraic_constant_family needs a 1x1 matrix");
  const RingElement& f = alg.matrix.at(0, 0);
  GroupElement e = identity(action.group);
  if (f.exact_coeffs().size() != 1 || abs(f.exact_at(e)) <= 1)
    throw MismatchError(
        "algebraic_constant_family needs A = (m) with |m| >= 2 constant");
  int m = static_cast<int>(abs(f.exact_at(e)));
  PowerFamily fam;
  fam.base = m;
  fam.d = sigma.d();
  fam.unit_distance = 1.0 / m;
  fam.max_unit_distance = std::floor(m / 2.0) / m;
  fam.realize = [&action, &sigma, radius, m](const std::vector<int>& xi_flat) {
    std::vector<std::vector<std::int64_t>> xi(xi_flat.size());
    for (std::size_t a = 0; a < xi_flat.size(); ++a)
      xi[a] = {static_cast<std::int64_t>(xi_flat[a])};
    return algebraic_microstate(action, xi, sigma, m, radius);
  };
  return MicrostateFamily{std::move(fam)};
}

namespace {

MicrostateFamily generate_family(const EntropySchedule& schedule,
                                 const SoficMap& sigma, int radius) {
  const GeneratorPolicy& policy = schedule.policy;
  switch (policy.kind) {
    case GeneratorPolicy::Kind::FullShift:
      return fullshift_family(schedule.action, sigma, radius);
    case GeneratorPolicy::Kind::AlgebraicConstant:
      return algebraic_constant_family(schedule.action, sigma, radius);
    case GeneratorPolicy::Kind::Custom:
      if (!policy.custom) throw MismatchError("custom generator not provided");
      return policy.custom(schedule.action, sigma, radius);
    case GeneratorPolicy::Kind::Auto:
      break;
  }
  if (std::holds_alternative<FullShiftAction>(schedule.action.variant))
    return fullshift_family(schedule.action, sigma, radius);
  if (!schedule.action.is_symbolic())
    return algebraic_constant_family(schedule.action, sigma, radius);
  throw MismatchError("no microstate generator for this action; supply one");
}

std::vector<int> random_omega(int base, int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, base - 1);
  std::vector<int> omega(d);
  for (auto& v : omega) v = dist(rng);
  return omega;
}

}  // namespace

EntropyReport estimate(const EntropySchedule& schedule) {
  schedule.validate();
  EntropyReport report;
  int radius = schedule.f_radii.back();

  for (std::size_t li = 0; li < schedule.levels.size(); ++li) {
    const SoficMap& sigma = schedule.levels[li];
    MicrostateFamily family = generate_family(schedule, sigma, radius);

    for (int fr : schedule.f_radii) {
      auto f_set = ball(schedule.action.group, fr);
      for (double delta : schedule.deltas) {
        // Admit family members into Map(rho, F, delta, sigma).
        MicrostateFamily admitted{std::vector<Microstate>{}};
        bool certified = false;
        int samples = 0;
        std::string flags;

        if (family.is_power()) {
          const PowerFamily& p = family.power();
          std::mt19937_64 rng(schedule.seed + li);
          bool all_ok = delta > 0;
          for (int i = 0; i < schedule.policy.certification_samples && all_ok;
               ++i) {
            Microstate phi = p.realize(random_omega(p.base, p.d, rng));
            ++samples;
            if (!is_microstate(schedule.action, phi, f_set, delta).ok)
              all_ok = false;
          }
          // The two implicit constructions are exactly equivariant over
          // exact quotients, so sampled success certifies the whole family.
          if (all_ok &&
              sigma.provenance() == SoficMap::Provenance::ExactQuotient) {
            admitted = family;
            certified = true;
          } else if (all_ok) {
            flags = "implicit family over non-quotient sigma: sampled only";
            admitted = family;
          }
        } else {
          std::vector<Microstate> kept;
          for (const auto& phi : family.explicit_members()) {
            ++samples;
            if (is_microstate(schedule.action, phi, f_set, delta).ok)
              kept.push_back(phi);
          }
          certified = true;
          admitted = MicrostateFamily{std::move(kept)};
        }

        for (double eps : schedule.epsilons) {
          EntropyCell cell;
          cell.level = static_cast<int>(li);
          cell.d = sigma.d();
          cell.f_radius = fr;
          cell.delta = delta;
          cell.epsilon = eps;
          cell.certified = certified;
          cell.samples_checked = samples;
          cell.flags = flags;
          if (admitted.empty()) {
            cell.family_empty = true;
            cell.value = kNegInfinity;  // the paper's empty-set convention
          } else {
            cell.family_empty = false;
            cell.family_log_size = admitted.log_size();
            SeparationOptions sopts;
            sopts.seed = schedule.seed;
            try {
              cell.separation =
                  separated_count(schedule.action, admitted, eps,
                                  schedule.metric, sopts);
            } catch (const BudgetExhausted&) {
              sopts.mode = SeparationOptions::Mode::Greedy;
              report.partial = true;
              cell.flags += (cell.flags.empty() ? "" : "; ");
              cell.flags += "exact count over budget: greedy lower bound";
              cell.separation = separated_count(schedule.action, admitted, eps,
                                                schedule.metric, sopts);
            }
            if (cell.separation.power_form &&
                cell.separation.power_form->second == cell.d) {
              cell.value =
                  std::log(static_cast<double>(cell.separation.power_form->first));
              cell.value_is_exact_log = true;
            } else {
              cell.value = cell.separation.log_count / cell.d;
            }
          }
          report.cells.push_back(std::move(cell));
        }
      }
    }
  }

  // Embedded monotonicity checks across the grids.
  for (const auto& a : report.cells)
    for (const auto& b : report.cells) {
      if (a.level == b.level && a.f_radius == b.f_radius &&
          a.delta == b.delta && a.epsilon < b.epsilon) {
        if (a.separation.log_count + 1e-12 < b.separation.log_count &&
            !a.family_empty && !b.family_empty)
          report.monotone_in_epsilon = false;
      }
      if (a.level == b.level && a.f_radius == b.f_radius &&
          a.epsilon == b.epsilon && a.delta > b.delta) {
        if (a.value + 1e-12 < b.value) report.monotone_in_delta = false;
      }
    }

  // Summaries over levels at the finest grid corner.
  int fr = schedule.f_radii.back();
  double delta = schedule.deltas.back();
  double eps = schedule.epsilons.back();
  bool first = true;
  bool any_empty = false;
  for (const auto& c : report.cells) {
    if (c.f_radius != fr || c.delta != delta || c.epsilon != eps) continue;
    if (first) {
      report.summary_max = report.summary_min = c.value;
      first = false;
    }
    report.summary_max = std::max(report.summary_max, c.value);
    report.summary_min = std::min(report.summary_min, c.value);
    report.summary_last = c.value;
    any_empty = any_empty || c.family_empty;
  }
  report.summary_aggregate = any_empty ? kNegInfinity : report.summary_last;
  return report;
}

namespace {

std::vector<ForbiddenPattern> lift_patterns(
    const std::vector<ForbiddenPattern>& patterns, int own_k, int other_k,
    bool first_factor) {
  // A pattern on one factor becomes a digit constraint on the product
  // alphabet: cell symbol sets expand to all symbols with the right digit.
  std::vector<ForbiddenPattern> lifted;
  for (const auto& p : patterns) {
    ForbiddenPattern q;
    for (const auto& cell : p.cells) {
      std::set<int> symbols;
      for (int s = 0; s < own_k * other_k; ++s) {
        int digit = first_factor ? s / other_k : s % other_k;
        if (cell.symbols.count(digit)) symbols.insert(s);
      }
      q.cells.push_back({cell.offset, std::move(symbols)});
    }
    lifted.push_back(std::move(q));
  }
  return lifted;
}

}  // namespace

ActionSpec product_action(const ActionSpec& a, const ActionSpec& b) {
  if (a.group != b.group) throw MismatchError("actions over different groups");
  if (a.is_symbolic() != b.is_symbolic())
    throw MismatchError("cannot form a symbolic x algebraic product");

  if (a.is_symbolic()) {
    int ka = a.alphabet_size();
    int kb = b.alphabet_size();
    std::vector<int> factors = a.metric_factors();
    factors.insert(factors.end(), b.metric_factors().begin(),
                   b.metric_factors().end());
    std::vector<ForbiddenPattern> forbidden;
    if (const auto* fa = a.forbidden()) {
      auto lifted = lift_patterns(*fa, ka, kb, true);
      forbidden.insert(forbidden.end(), lifted.begin(), lifted.end());
    }
    if (const auto* fb = b.forbidden()) {
      auto lifted = lift_patterns(*fb, kb, ka, false);
      forbidden.insert(forbidden.end(), lifted.begin(), lifted.end());
    }
    if (forbidden.empty() && !a.forbidden() && !b.forbidden()) {
      FullShiftAction prod{ka * kb, std::move(factors)};
      return ActionSpec{a.group, std::move(prod)};
    }
    SftAction prod{ka * kb, std::move(factors), std::move(forbidden)};
    return ActionSpec{a.group, std::move(prod)};
  }

  const AlgebraicAction& aa = a.algebraic();
  const AlgebraicAction& ab = b.algebraic();
  int na = aa.matrix.n();
  int nb = ab.matrix.n();
  AlgebraicAction prod;
  prod.matrix = RingMatrix(a.group, na + nb, CoeffMode::Exact);
  prod.adjoint_inverse = RingMatrix(a.group, na + nb, CoeffMode::Float);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      prod.matrix.at(i, j) = aa.matrix.at(i, j);
      prod.adjoint_inverse.at(i, j) = aa.adjoint_inverse.at(i, j);
    }
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) {
      prod.matrix.at(na + i, na + j) = ab.matrix.at(i, j);
      prod.adjoint_inverse.at(na + i, na + j) = ab.adjoint_inverse.at(i, j);
    }
  prod.inverse_residual = aa.inverse_residual + ab.inverse_residual;
  prod.window_radius = std::max(aa.window_radius, ab.window_radius);
  prod.metric_blocks = aa.metric_blocks;
  prod.metric_blocks.insert(prod.metric_blocks.end(), ab.metric_blocks.begin(),
                            ab.metric_blocks.end());
  return ActionSpec{a.group, std::move(prod)};
}

}  // namespace soficlab
