#include "soficlab/ring.hpp"

#include <cmath>
#include <sstream>

namespace soficlab {

RingElement RingElement::zero(const GroupSpec& group, CoeffMode mode) {
  return RingElement(group, mode);
}

RingElement RingElement::one(const GroupSpec& group, CoeffMode mode) {
  RingElement f(group, mode);
  if (mode == CoeffMode::Exact)
    f.add_term(identity(group), Int(1));
  else
    f.add_term(identity(group), 1.0);
  return f;
}

RingElement RingElement::monomial(const GroupSpec& group, Int c,
                                  const GroupElement& s) {
  RingElement f(group, CoeffMode::Exact);
  f.add_term(s, c);
  return f;
}

Int RingElement::exact_at(const GroupElement& s) const {
  auto it = exact_.find(s);
  return it == exact_.end() ? Int(0) : it->second;
}

double RingElement::float_at(const GroupElement& s) const {
  auto it = approx_.find(s);
  return it == approx_.end() ? 0.0 : it->second;
}

void RingElement::add_term(const GroupElement& s, const Int& c) {
  if (mode_ != CoeffMode::Exact)
    throw MismatchError("integer term added to float-mode element");
  validate_element(group_, s);
  if (c == 0) return;
  Int& v = exact_[s];
  v += c;
  if (v == 0) exact_.erase(s);
}

void RingElement::add_term(const GroupElement& s, double c) {
  if (mode_ != CoeffMode::Float)
    throw MismatchError("float term added to exact-mode element");
  validate_element(group_, s);
  if (c == 0.0) return;
  double& v = approx_[s];
  v += c;
  if (v == 0.0) approx_.erase(s);
}

void RingElement::set_tail(double t) {
  if (t < 0) throw MismatchError("tail bound must be >= 0");
  if (mode_ == CoeffMode::Exact && t != 0)
    throw MismatchError("exact-mode elements have zero tail");
  tail_ = t;
}

RingElement RingElement::to_float() const {
  if (mode_ == CoeffMode::Float) return *this;
  RingElement f(group_, CoeffMode::Float);
  for (const auto& [s, c] : exact_) f.add_term(s, static_cast<double>(c));
  return f;
}

std::int64_t RingElement::support_radius() const {
  std::int64_t r = 0;
  for (const auto& [s, c] : exact_) r = std::max(r, word_length(group_, s));
  for (const auto& [s, c] : approx_) r = std::max(r, word_length(group_, s));
  return r;
}

RingElement RingElement::truncated(std::int64_t radius) const {
  if (mode_ == CoeffMode::Exact) {
    if (support_radius() > radius)
      throw MismatchError("cannot truncate an exact element");
    return *this;
  }
  RingElement f(group_, CoeffMode::Float);
  double dropped = 0.0;
  for (const auto& [s, c] : approx_) {
    if (word_length(group_, s) <= radius)
      f.add_term(s, c);
    else
      dropped += std::abs(c);
  }
  f.set_tail(tail_ + dropped);
  return f;
}

void RingElement::check_compatible(const RingElement& other) const {
  if (group_ != other.group_) throw MismatchError("ring elements from different groups");
  if (mode_ != other.mode_) throw MismatchError("ring coefficient mode mismatch");
}

RingElement operator+(const RingElement& f, const RingElement& g) {
  f.check_compatible(g);
  RingElement out = f;
  if (f.mode_ == CoeffMode::Exact) {
    for (const auto& [s, c] : g.exact_) out.add_term(s, c);
  } else {
    for (const auto& [s, c] : g.approx_) out.add_term(s, c);
    out.tail_ = f.tail_ + g.tail_;
  }
  return out;
}

RingElement operator-(const RingElement& f, const RingElement& g) {
  f.check_compatible(g);
  RingElement out = f;
  if (f.mode_ == CoeffMode::Exact) {
    for (const auto& [s, c] : g.exact_) out.add_term(s, Int(-c));
  } else {
    for (const auto& [s, c] : g.approx_) out.add_term(s, -c);
    out.tail_ = f.tail_ + g.tail_;
  }
  return out;
}

RingElement operator*(const RingElement& f, const RingElement& g) {
  f.check_compatible(g);
  RingElement out(f.group_, f.mode_);
  if (f.mode_ == CoeffMode::Exact) {
    for (const auto& [s, a] : f.exact_)
      for (const auto& [t, b] : g.exact_)
        out.add_term(group_mul(f.group_, s, t), Int(a * b));
  } else {
    for (const auto& [s, a] : f.approx_)
      for (const auto& [t, b] : g.approx_)
        out.add_term(group_mul(f.group_, s, t), a * b);
    // ||fg - (f+tail_f)(g+tail_g)||_1 <= ||f|| tail_g + tail_f ||g|| + tail_f tail_g
    out.tail_ = l1_norm(f) * g.tail_ + f.tail_ * l1_norm(g) + f.tail_ * g.tail_;
  }
  return out;
}

RingElement involution(const RingElement& f) {
  RingElement out(f.group(), f.mode());
  if (f.mode() == CoeffMode::Exact) {
    for (const auto& [s, c] : f.exact_coeffs())
      out.add_term(group_inverse(f.group(), s), c);
  } else {
    for (const auto& [s, c] : f.float_coeffs())
      out.add_term(group_inverse(f.group(), s), c);
    out.set_tail(f.tail());
  }
  return out;
}

double l1_norm(const RingElement& f) {
  if (f.mode() == CoeffMode::Exact)
    return static_cast<double>(l1_norm_exact(f));
  double n = 0.0;
  for (const auto& [s, c] : f.float_coeffs()) n += std::abs(c);
  return n;
}

Int l1_norm_exact(const RingElement& f) {
  if (f.mode() != CoeffMode::Exact)
    throw MismatchError("l1_norm_exact needs an exact-mode element");
  Int n = 0;
  for (const auto& [s, c] : f.exact_coeffs()) n += abs(c);
  return n;
}

std::string format_ring_element(const RingElement& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const GroupElement& s, const std::string& coeff) {
    if (!first) os << " + ";
    first = false;
    os << coeff << '*' << format_element(f.group(), s);
  };
  if (f.mode() == CoeffMode::Exact) {
    for (const auto& [s, c] : f.exact_coeffs()) emit(s, c.str());
  } else {
    for (const auto& [s, c] : f.float_coeffs()) {
      std::ostringstream cs;
      cs.precision(17);
      cs << c;
      emit(s, cs.str());
    }
  }
  return os.str();
}

RingElement parse_ring_element(const GroupSpec& group, const std::string& text) {
  RingElement f(group, CoeffMode::Exact);
  // Terms are split on + and - outside parentheses; each term is [coeff][*][word].
  std::vector<std::pair<int, std::string>> terms;
  std::string cur;
  int sign = 1;
  int depth = 0;
  for (char ch : text) {
    if (ch == ' ') continue;
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-')) {
      if (!cur.empty()) {
        terms.emplace_back(sign, cur);
        cur.clear();
        sign = 1;
      }
      if (ch == '-') sign = -sign;
      continue;
    }
    cur += ch;
  }
  if (!cur.empty()) terms.emplace_back(sign, cur);
  if (terms.empty()) throw MismatchError("empty ring element text");
  for (auto& [sg, term] : terms) {
    Int coeff = sg;
    std::string word = term;
    std::size_t i = 0;
    while (i < word.size() && (std::isdigit(static_cast<unsigned char>(word[i])))) ++i;
    if (i > 0) {
      coeff *= Int(word.substr(0, i));
      word = word.substr(i);
      if (!word.empty() && word.front() == '*') word = word.substr(1);
    }
    GroupElement s = word.empty() ? identity(group) : parse_element(group, word);
    f.add_term(s, coeff);
  }
  return f;
}

RingMatrix::RingMatrix(GroupSpec group, int n, CoeffMode mode)
    : group_(std::move(group)), n_(n), mode_(mode) {
  if (n < 1) throw MismatchError("matrix dimension must be >= 1");
  entries_.assign(static_cast<std::size_t>(n) * n, RingElement(group_, mode_));
}

RingMatrix RingMatrix::identity_matrix(const GroupSpec& group, int n,
                                       CoeffMode mode) {
  RingMatrix m(group, n, mode);
  for (int i = 0; i < n; ++i) m.at(i, i) = RingElement::one(group, mode);
  return m;
}

RingMatrix RingMatrix::scalar(RingElement f) {
  RingMatrix m(f.group(), 1, f.mode());
  m.at(0, 0) = std::move(f);
  return m;
}

const RingElement& RingMatrix::at(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_)
    throw MismatchError("matrix index out of range");
  return entries_[static_cast<std::size_t>(i) * n_ + j];
}

RingElement& RingMatrix::at(int i, int j) {
  if (i < 0 || i >= n_ || j < 0 || j >= n_)
    throw MismatchError("matrix index out of range");
  return entries_[static_cast<std::size_t>(i) * n_ + j];
}

RingMatrix RingMatrix::to_float() const {
  RingMatrix m(group_, n_, CoeffMode::Float);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.at(i, j) = at(i, j).to_float();
  return m;
}

namespace {

void check_matrix_compat(const RingMatrix& a, const RingMatrix& b) {
  if (a.group() != b.group()) throw MismatchError("matrices over different groups");
  if (a.mode() != b.mode()) throw MismatchError("matrix coefficient mode mismatch");
  if (a.n() != b.n()) throw MismatchError("matrix dimension mismatch");
}

}  // namespace

RingMatrix operator+(const RingMatrix& a, const RingMatrix& b) {
  check_matrix_compat(a, b);
  RingMatrix out(a.group(), a.n(), a.mode());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) out.at(i, j) = a.at(i, j) + b.at(i, j);
  return out;
}

RingMatrix operator-(const RingMatrix& a, const RingMatrix& b) {
  check_matrix_compat(a, b);
  RingMatrix out(a.group(), a.n(), a.mode());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) out.at(i, j) = a.at(i, j) - b.at(i, j);
  return out;
}

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
  check_matrix_compat(a, b);
  RingMatrix out(a.group(), a.n(), a.mode());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) {
      RingElement acc(a.group(), a.mode());
      for (int k = 0; k < a.n(); ++k) acc = acc + a.at(i, k) * b.at(k, j);
      out.at(i, j) = acc;
    }
  return out;
}

RingMatrix involution(const RingMatrix& a) {
  RingMatrix out(a.group(), a.n(), a.mode());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) out.at(i, j) = involution(a.at(j, i));
  return out;
}

double l1_norm(const RingMatrix& a) {
  double n = 0.0;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) n += l1_norm(a.at(i, j)) + a.at(i, j).tail();
  return n;
}

L1Inverse l1_inverse(const RingMatrix& a, const L1InverseOptions& opts) {
  if (opts.tolerance <= 0) throw MismatchError("tolerance must be positive");
  RingMatrix af = a.mode() == CoeffMode::Float ? a : a.to_float();

  double c = opts.scale ? *opts.scale
                        : af.at(0, 0).float_at(identity(af.group()));
  if (c == 0.0)
    throw NeumannConditionFailed(
        "no Neumann split: identity coefficient of the (0,0) entry is zero "
        "and no scale override was given");

  // B = I - A/c
  RingMatrix b(af.group(), af.n(), CoeffMode::Float);
  for (int i = 0; i < af.n(); ++i)
    for (int j = 0; j < af.n(); ++j) {
      RingElement e(af.group(), CoeffMode::Float);
      for (const auto& [s, v] : af.at(i, j).float_coeffs())
        e.add_term(s, -v / c);
      if (i == j) e.add_term(identity(af.group()), 1.0);
      b.at(i, j) = e;
    }
  double beta = l1_norm(b);
  if (beta >= 1.0) {
    std::ostringstream os;
    os << "no Neumann split with ||B||_1 < 1 (got ||B||_1 = " << beta
       << "); the matrix may not be invertible in l^1";
    throw NeumannConditionFailed(os.str());
  }

  // S = (1/c) * sum_m B^m, truncated once the geometric tail is < tolerance.
  RingMatrix sum = RingMatrix::identity_matrix(af.group(), af.n(), CoeffMode::Float);
  RingMatrix power = sum;
  int m = 0;
  double tail = beta / (1.0 - beta) / std::abs(c);
  while (tail > opts.tolerance) {
    if (++m > opts.max_terms)
      throw BudgetExhausted("l1_inverse: series term budget exhausted");
    power = power * b;
    sum = sum + power;
    tail = std::pow(beta, m + 1) / (1.0 - beta) / std::abs(c);
  }

  L1Inverse out;
  out.inverse = RingMatrix(af.group(), af.n(), CoeffMode::Float);
  for (int i = 0; i < af.n(); ++i)
    for (int j = 0; j < af.n(); ++j) {
      RingElement e(af.group(), CoeffMode::Float);
      for (const auto& [s, v] : sum.at(i, j).float_coeffs()) e.add_term(s, v / c);
      e.set_tail(tail);
      out.inverse.at(i, j) = e;
    }
  out.series_tail = tail;
  out.neumann_norm = beta;
  out.terms = m + 1;

  RingMatrix residual =
      af * out.inverse - RingMatrix::identity_matrix(af.group(), af.n(), CoeffMode::Float);
  out.residual = l1_norm(residual);
  if (out.residual > 2.0 * opts.tolerance * l1_norm(af)) {
    std::ostringstream os;
    os << "l1_inverse residual " << out.residual << " exceeds bound "
       << 2.0 * opts.tolerance * l1_norm(af);
    throw Error(os.str());
  }
  return out;
}

}  // namespace soficlab
