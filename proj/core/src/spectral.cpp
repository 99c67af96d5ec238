#include "soficlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace soficlab {

IntMatrix quotient_matrix(const RingElement& f, const GroupSpec& quotient) {
  if (f.mode() != CoeffMode::Exact)
    throw MismatchError("quotient_matrix needs exact coefficients");
  if (f.group().kind != GroupSpec::Kind::IntegerLattice)
    throw MismatchError("quotient_matrix needs a lattice group ring");
  if (quotient.kind != GroupSpec::Kind::CyclicQuotient ||
      quotient.rank != f.group().rank)
    throw MismatchError("quotient rank mismatch");

  std::int64_t d = quotient.order();
  IntMatrix m(d, std::vector<Int>(d, Int(0)));
  for (const auto& [s, c] : f.exact_coeffs()) {
    GroupElement residue = identity(quotient);
    for (int i = 0; i < quotient.rank; ++i) {
      std::int64_t r = s.data[i] % quotient.moduli[i];
      residue.data[i] = r < 0 ? r + quotient.moduli[i] : r;
    }
    for (std::int64_t a = 0; a < d; ++a) {
      std::int64_t b = quotient_index(
          quotient, group_mul(quotient, quotient_element(quotient, a), residue));
      m[a][b] += c;
    }
  }
  return m;
}

Int bareiss_determinant(IntMatrix m) {
  std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw MismatchError("determinant needs a square matrix");
  if (n == 0) return Int(1);

  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m[pivot][k] == 0) ++pivot;
      if (pivot == n) return Int(0);
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = num / prev;  // divides exactly (Bareiss)
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

LogAbs log_abs(const Int& v, int try_exponent) {
  LogAbs out;
  Int a = abs(v);
  if (a == 0) throw MismatchError("log of zero");
  if (a == 1) {
    out.value = 0.0;
    out.power_form = std::make_pair(std::int64_t{1}, try_exponent);
    return out;
  }
  // log via the top bits, safe for arbitrarily large values
  std::size_t bits = msb(a);
  if (bits <= 900) {
    out.value = std::log(a.convert_to<double>());
  } else {
    Int top = a >> (bits - 52);
    out.value = std::log(top.convert_to<double>()) +
                static_cast<double>(bits - 52) * std::log(2.0);
  }
  if (try_exponent >= 1) {
    double root = std::exp(out.value / try_exponent);
    for (std::int64_t base :
         {static_cast<std::int64_t>(std::floor(root)),
          static_cast<std::int64_t>(std::llround(root)),
          static_cast<std::int64_t>(std::ceil(root))}) {
      if (base < 2) continue;
      Int check = pow(Int(base), static_cast<unsigned>(try_exponent));
      if (check == a) {
        out.power_form = std::make_pair(base, try_exponent);
        out.value = try_exponent * std::log(static_cast<double>(base));
        break;
      }
    }
  }
  return out;
}

namespace {

double float_logdet(const RingElement& f, const GroupSpec& quotient,
                    bool* singular, double* condition) {
  std::int64_t d = quotient.order();
  std::vector<std::vector<double>> m(d, std::vector<double>(d, 0.0));
  IntMatrix exact = quotient_matrix(f, quotient);
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j)
      m[i][j] = exact[i][j].convert_to<double>();

  double log_det = 0.0;
  double min_pivot = std::numeric_limits<double>::infinity();
  double max_pivot = 0.0;
  *singular = false;
  for (std::int64_t k = 0; k < d; ++k) {
    std::int64_t pivot = k;
    for (std::int64_t i = k + 1; i < d; ++i)
      if (std::abs(m[i][k]) > std::abs(m[pivot][k])) pivot = i;
    if (std::abs(m[pivot][k]) < 1e-12) {
      *singular = true;
      return 0.0;
    }
    if (pivot != k) std::swap(m[k], m[pivot]);
    double p = std::abs(m[k][k]);
    log_det += std::log(p);
    min_pivot = std::min(min_pivot, p);
    max_pivot = std::max(max_pivot, p);
    for (std::int64_t i = k + 1; i < d; ++i) {
      double factor = m[i][k] / m[k][k];
      for (std::int64_t j = k; j < d; ++j) m[i][j] -= factor * m[k][j];
    }
  }
  *condition = max_pivot / min_pivot;
  return log_det;
}

}  // namespace

DetReport fk_det_estimate(const RingElement& f,
                          const std::vector<std::vector<std::int64_t>>& moduli,
                          const FkOptions& opts) {
  if (f.is_zero()) throw MismatchError("fk_det_estimate needs nonzero f");
  if (moduli.empty()) throw MismatchError("no quotient levels given");
  DetReport report;
  report.f_text = format_ring_element(f);

  for (const auto& mod : moduli) {
    GroupSpec quotient = GroupSpec::cyclic_quotient(mod);
    DetLevel level;
    level.moduli = mod;
    level.dim = quotient.order();
    if (level.dim <= opts.exact_cap) {
      Int det = bareiss_determinant(quotient_matrix(f, quotient));
      if (det == 0) {
        level.singular = true;
      } else {
        LogAbs la = log_abs(det, static_cast<int>(level.dim));
        level.log_abs_det = la.value;
        if (la.power_form && la.power_form->second == level.dim) {
          level.value = std::log(static_cast<double>(la.power_form->first));
          level.value_is_exact_log = true;
        } else {
          level.value = la.value / static_cast<double>(level.dim);
        }
      }
    } else {
      level.exact = false;
      bool singular = false;
      level.log_abs_det =
          float_logdet(f, quotient, &singular, &level.condition);
      level.singular = singular;
      if (!singular) level.value = level.log_abs_det / level.dim;
    }
    report.levels.push_back(std::move(level));
  }

  std::vector<double> usable;
  for (const auto& level : report.levels)
    if (!level.singular) usable.push_back(level.value);
  if (usable.empty()) throw Error("all quotient levels were singular");
  int window = std::min<int>(opts.aggregate_window,
                             static_cast<int>(usable.size()));
  report.aggregated_from = window;
  double sum = 0.0, lo = usable.back(), hi = usable.back();
  for (int i = 0; i < window; ++i) {
    double v = usable[usable.size() - 1 - i];
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  report.estimate = sum / window;
  report.spread = hi - lo;
  return report;
}

DeningerReport deninger_check(const RingElement& f,
                              const std::vector<std::vector<std::int64_t>>& moduli,
                              double tol) {
  DeningerReport report;

  // Monomial units +/- s invert exactly in ZG; other single-term elements
  // invert in l^1 with inverse (1/c) s^{-1}.
  if (f.exact_coeffs().size() == 1) {
    const auto& [s, c] = *f.exact_coeffs().begin();
    report.l1_certified = true;
    report.det = fk_det_estimate(f, moduli);
    report.det_estimate = report.det.estimate;
    report.margin = report.det.estimate - report.det.spread;
    if (c == 1 || c == -1) {
      report.unit_exact = true;
      report.inverse_integrality = 0.0;
      report.verdict = DeningerVerdict::UnitDetected;
      report.notes = "monomial unit; inverse is its formal inverse";
    } else {
      report.verdict = report.margin > 0
                           ? DeningerVerdict::ConsistentWithCorollary
                           : DeningerVerdict::Inconclusive;
      report.notes = "single-term element, |coefficient| > 1";
    }
    return report;
  }

  L1InverseOptions iopts;
  iopts.tolerance = tol;
  L1Inverse inv = l1_inverse(RingMatrix::scalar(f), iopts);
  report.l1_certified = true;

  // Unit screening: round the inverse coefficients to integers and verify
  // f * g0 = 1 exactly in ZG when they are integral within tolerance.
  const RingElement& g = inv.inverse.at(0, 0);
  double integrality = 0.0;
  RingElement g0(f.group(), CoeffMode::Exact);
  for (const auto& [s, c] : g.float_coeffs()) {
    double nearest = std::round(c);
    integrality = std::max(integrality, std::abs(c - nearest));
    if (nearest != 0.0)
      g0.add_term(s, Int(static_cast<long long>(nearest)));
  }
  report.inverse_integrality = integrality;
  if (!g0.is_zero() && integrality <= 64 * tol) {
    RingElement prod = f * g0;
    if (prod == RingElement::one(f.group())) report.unit_exact = true;
  }

  report.det = fk_det_estimate(f, moduli);
  report.det_estimate = report.det.estimate;
  report.margin = report.det.estimate - report.det.spread;

  if (report.unit_exact)
    report.verdict = DeningerVerdict::UnitDetected;
  else if (report.margin > 1e-6)
    report.verdict = DeningerVerdict::ConsistentWithCorollary;
  else
    report.verdict = DeningerVerdict::Inconclusive;

  std::ostringstream os;
  os << "||B||_1 = " << inv.neumann_norm << ", residual = " << inv.residual;
  report.notes = os.str();
  return report;
}

MicrostateFamily periodic_point_family(const ActionSpec& action,
                                       const SoficMap& sigma,
                                       const GroupSpec& quotient, int radius) {
  const AlgebraicAction& alg = action.algebraic();
  if (alg.matrix.n() != 1)
    throw MismatchError("periodic_point_family is scalar-only");
  const RingElement& f = alg.matrix.at(0, 0);

  // Coefficient dominance gives both invertibility of every level and the
  // separation bound 1/(2 ||f||_1) between distinct periodic points.
  GroupElement e = identity(f.group());
  Int diag = abs(f.exact_at(e));
  Int off = l1_norm_exact(f) - diag;
  if (diag <= off)
    throw MismatchError(
        "periodic_point_family needs a dominant identity coefficient");

  Int det = bareiss_determinant(quotient_matrix(f, quotient));
  if (det == 0) throw Error("dominant element produced a singular level");

  double norm_f = static_cast<double>(l1_norm_exact(f));
  double tail = 0.0;
  for (int i = 0; i < alg.adjoint_inverse.n(); ++i)
    for (int j = 0; j < alg.adjoint_inverse.n(); ++j)
      tail += alg.adjoint_inverse.at(i, j).tail();

  CertifiedFamily fam;
  fam.d = sigma.d();
  LogAbs la = log_abs(det, sigma.d());
  fam.log_size = la.value;
  fam.power_form = la.power_form;
  if (la.value < 42.0) fam.size = abs(det).convert_to<std::int64_t>();
  fam.min_distance = 1.0 / (2.0 * norm_f) - 4.0 * tail;
  double bound_m = norm_f;
  fam.sample = [&action, &sigma, radius, bound_m](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(
        -static_cast<std::int64_t>(bound_m),
        static_cast<std::int64_t>(bound_m));
    std::vector<std::vector<std::int64_t>> xi(sigma.d());
    for (auto& v : xi) v = {dist(rng)};
    return algebraic_microstate(action, xi, sigma, bound_m, radius);
  };
  return MicrostateFamily{std::move(fam)};
}

DetEntropyComparison det_vs_entropy(
    const RingElement& f, const std::vector<std::vector<std::int64_t>>& moduli,
    double tol) {
  DetEntropyComparison cmp;
  cmp.tolerance = tol;
  cmp.det = fk_det_estimate(f, moduli);

  GroupElement e = identity(f.group());
  bool monomial = f.exact_coeffs().size() == 1;
  bool constant = monomial && f.exact_coeffs().begin()->first == e &&
                  abs(f.exact_at(e)) > 1;

  ActionSpec action{f.group(), FullShiftAction{}};
  if (!monomial || constant)
    action = algebraic_action(RingMatrix::scalar(f), 1e-9);

  bool all_consistent = true;
  for (std::size_t li = 0; li < moduli.size(); ++li) {
    const DetLevel& det_level = cmp.det.levels[li];
    if (det_level.singular) continue;
    DetEntropyLevel level;
    level.moduli = moduli[li];
    level.dim = det_level.dim;
    level.det_value = det_level.value;
    level.det_exact_log = det_level.value_is_exact_log;

    GroupSpec quotient = GroupSpec::cyclic_quotient(moduli[li]);
    int f_radius = 1;
    int support_radius = 1;
    if (!monomial || constant) {
      const auto& inv = action.algebraic().adjoint_inverse.at(0, 0);
      support_radius =
          static_cast<int>(inv.support_radius()) + f_radius + 1;
    }
    SoficMap sigma =
        quotient_sofic(f.group(), moduli[li], support_radius);
    auto f_set = ball(f.group(), f_radius);

    if (monomial && !constant) {
      // X_f is a single point; the trivial family gives lower bound 0.
      level.entropy_lower = 0.0;
      level.entropy_exact_log = true;
    } else if (constant) {
      MicrostateFamily fam = algebraic_constant_family(action, sigma, f_radius);
      const PowerFamily& p = fam.power();
      SeparationReport sep = separated_count(
          action, fam, p.unit_distance / 2.0, MapMetric::RhoInf);
      level.entropy_lower =
          std::log(static_cast<double>(sep.power_form->first));
      level.entropy_exact_log = true;
      // validate sampled members
      std::mt19937_64 rng(li);
      for (int t = 0; t < 4; ++t) {
        std::vector<int> omega(sigma.d());
        std::uniform_int_distribution<int> dist(0, p.base - 1);
        for (auto& v : omega) v = dist(rng);
        Microstate phi = p.realize(omega);
        if (!is_microstate(action, phi, f_set, 0.01).ok)
          throw Error("constant-family witness failed validation");
        ++level.witnesses_checked;
      }
    } else {
      MicrostateFamily fam =
          periodic_point_family(action, sigma, quotient, f_radius);
      const CertifiedFamily& c = fam.certified();
      SeparationReport sep = separated_count(
          action, fam, c.min_distance / 2.0, MapMetric::RhoInf);
      if (sep.power_form && sep.power_form->second == sigma.d()) {
        level.entropy_lower =
            std::log(static_cast<double>(sep.power_form->first));
        level.entropy_exact_log = true;
      } else {
        level.entropy_lower = sep.log_count / sigma.d();
      }
      for (int t = 0; t < 4; ++t) {
        Microstate phi = c.sample(li * 17 + t);
        if (!is_microstate(action, phi, f_set, 0.01).ok)
          throw Error("periodic-family witness failed validation");
        ++level.witnesses_checked;
      }
    }

    if (level.entropy_lower > level.det_value + tol) all_consistent = false;
    cmp.levels.push_back(std::move(level));
  }
  cmp.consistent = all_consistent;
  return cmp;
}

}  // namespace soficlab
