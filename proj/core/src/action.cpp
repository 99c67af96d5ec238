#include "soficlab/action.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace soficlab {

int ActionSpec::alphabet_size() const {
  if (auto* fs = std::get_if<FullShiftAction>(&variant)) return fs->k;
  if (auto* s = std::get_if<SftAction>(&variant)) return s->k;
  throw MismatchError("algebraic actions have no alphabet");
}

const std::vector<int>& ActionSpec::metric_factors() const {
  if (auto* fs = std::get_if<FullShiftAction>(&variant)) return fs->metric_factors;
  if (auto* s = std::get_if<SftAction>(&variant)) return s->metric_factors;
  throw MismatchError("algebraic actions have no metric factors");
}

const std::vector<ForbiddenPattern>* ActionSpec::forbidden() const {
  if (auto* s = std::get_if<SftAction>(&variant)) return &s->forbidden;
  return nullptr;
}

const AlgebraicAction& ActionSpec::algebraic() const {
  if (auto* a = std::get_if<AlgebraicAction>(&variant)) return *a;
  throw MismatchError("action is not algebraic");
}

ActionSpec full_shift(const GroupSpec& group, int k) {
  if (k < 1) throw MismatchError("alphabet size must be >= 1");
  return ActionSpec{group, FullShiftAction{k, {k}}};
}

ActionSpec sft(const GroupSpec& group, int k,
               std::vector<ForbiddenPattern> forbidden) {
  if (k < 1) throw MismatchError("alphabet size must be >= 1");
  for (const auto& p : forbidden) {
    if (p.cells.empty()) throw MismatchError("empty forbidden pattern");
    for (const auto& cell : p.cells) {
      validate_element(group, cell.offset);
      if (cell.symbols.empty()) throw MismatchError("empty pattern cell");
      for (int sym : cell.symbols)
        if (sym < 0 || sym >= k)
          throw MismatchError("pattern symbol out of range");
    }
  }
  return ActionSpec{group, SftAction{k, {k}, std::move(forbidden)}};
}

ActionSpec algebraic_action(RingMatrix a, double tol) {
  if (a.mode() != CoeffMode::Exact)
    throw MismatchError("X_A needs an exact integer matrix");
  RingMatrix a_star = involution(a);
  L1InverseOptions opts;
  opts.tolerance = tol;
  L1Inverse inv = l1_inverse(a_star, opts);

  // R_alg: radius where the l^1 tail of (A*)^{-1} outside the ball drops
  // below tol / (2 n ||A||_1).
  double target = tol / (2.0 * a.n() * std::max(1.0, l1_norm(a)));
  std::int64_t radius = 0;
  for (int i = 0; i < inv.inverse.n(); ++i)
    for (int j = 0; j < inv.inverse.n(); ++j)
      radius = std::max(radius, inv.inverse.at(i, j).support_radius());
  // shrink while the dropped mass stays under target
  for (std::int64_t r = 0; r <= radius; ++r) {
    double dropped = 0.0;
    for (int i = 0; i < inv.inverse.n(); ++i)
      for (int j = 0; j < inv.inverse.n(); ++j) {
        const auto& e = inv.inverse.at(i, j);
        for (const auto& [s, c] : e.float_coeffs())
          if (word_length(e.group(), s) > r) dropped += std::abs(c);
      }
    if (dropped <= target) {
      radius = r;
      break;
    }
  }

  AlgebraicAction act;
  act.metric_blocks = {a.n()};
  act.matrix = std::move(a);
  act.inverse_residual = inv.residual;
  act.window_radius = static_cast<int>(radius);
  RingMatrix truncated(inv.inverse.group(), inv.inverse.n(), CoeffMode::Float);
  for (int i = 0; i < inv.inverse.n(); ++i)
    for (int j = 0; j < inv.inverse.n(); ++j)
      truncated.at(i, j) = inv.inverse.at(i, j).truncated(radius);
  act.adjoint_inverse = std::move(truncated);
  return ActionSpec{act.matrix.group(), std::move(act)};
}

double symbol_distance(const ActionSpec& action, int a, int b) {
  const auto& factors = action.metric_factors();
  int diff = 0;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    if (a % *it != b % *it) ++diff;
    a /= *it;
    b /= *it;
  }
  return static_cast<double>(diff);
}

double torus_distance(const std::vector<double>& a,
                      const std::vector<double>& b) {
  if (a.size() != b.size()) throw MismatchError("torus dimension mismatch");
  double dist = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double x = a[j] - b[j];
    dist = std::max(dist, std::abs(x - std::round(x)));
  }
  return dist;
}

double torus_distance(const std::vector<int>& blocks,
                      const std::vector<double>& a,
                      const std::vector<double>& b) {
  if (a.size() != b.size()) throw MismatchError("torus dimension mismatch");
  double sum = 0.0;
  std::size_t pos = 0;
  for (int width : blocks) {
    double block_max = 0.0;
    for (int j = 0; j < width; ++j, ++pos) {
      if (pos >= a.size()) throw MismatchError("metric blocks exceed dimension");
      double x = a[pos] - b[pos];
      block_max = std::max(block_max, std::abs(x - std::round(x)));
    }
    sum += block_max;
  }
  if (pos != a.size()) throw MismatchError("metric blocks do not cover dimension");
  return sum;
}

int PointPattern::symbol_at(const GroupElement& g) const {
  auto it = symbols.find(g);
  if (it == symbols.end())
    throw WindowExhausted("coordinate outside window: " + format_element(group, g));
  return it->second;
}

const std::vector<double>& PointPattern::torus_at(const GroupElement& g) const {
  auto it = torus.find(g);
  if (it == torus.end())
    throw WindowExhausted("coordinate outside window: " + format_element(group, g));
  return it->second;
}

PointPattern constant_pattern(const ActionSpec& action, int radius, int symbol) {
  if (symbol < 0 || symbol >= action.alphabet_size())
    throw MismatchError("symbol out of range");
  PointPattern x;
  x.group = action.group;
  x.radius = radius;
  for (const auto& g : ball(action.group, radius)) x.symbols[g] = symbol;
  return x;
}

PointPattern act(const ActionSpec& action, const GroupElement& s,
                 const PointPattern& x) {
  std::int64_t len = word_length(action.group, s);
  if (len > x.radius)
    throw WindowExhausted("act: window radius exhausted by translation");
  PointPattern y;
  y.group = x.group;
  y.radius = static_cast<int>(x.radius - len);
  y.tail = x.tail;
  GroupElement s_inv = group_inverse(action.group, s);
  for (const auto& t : ball(action.group, y.radius)) {
    GroupElement src = group_mul(action.group, s_inv, t);
    if (x.is_symbolic())
      y.symbols[t] = x.symbol_at(src);
    else
      y.torus[t] = x.torus_at(src);
  }
  return y;
}

double rho(const ActionSpec& action, const PointPattern& x,
           const PointPattern& y) {
  GroupElement e = identity(action.group);
  if (x.is_symbolic() != y.is_symbolic())
    throw MismatchError("mixed symbolic/algebraic points");
  if (x.is_symbolic())
    return symbol_distance(action, x.symbol_at(e), y.symbol_at(e));
  const auto& blocks = action.algebraic().metric_blocks;
  if (blocks.size() <= 1) return torus_distance(x.torus_at(e), y.torus_at(e));
  return torus_distance(blocks, x.torus_at(e), y.torus_at(e));
}

double rho_tail(const PointPattern& x, const PointPattern& y) {
  return x.tail + y.tail;
}

bool membership_xa(const PointPattern& x, const AlgebraicAction& action,
                   double tol) {
  RingMatrix a_star = involution(action.matrix);
  int n = a_star.n();
  const GroupSpec& group = x.group;

  // (x A*)_j(u) = sum_i sum_s x_i(u s^{-1}) (A*)_{ij}(s); position u is
  // checkable when every u s^{-1} lies inside the window.
  std::int64_t a_radius = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a_radius = std::max(a_radius, a_star.at(i, j).support_radius());
  if (a_radius > x.radius)
    throw WindowExhausted("window too small to evaluate x A* at the identity");

  bool ok = true;
  for (const auto& u : ball(group, static_cast<int>(x.radius - a_radius))) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        for (const auto& [s, c] : a_star.at(i, j).exact_coeffs()) {
          GroupElement pos =
              group_mul(group, u, group_inverse(group, s));
          acc += static_cast<double>(c) * x.torus_at(pos)[i];
        }
      }
      double frac = std::abs(acc - std::round(acc));
      if (frac > tol) ok = false;
    }
  }
  return ok;
}

bool pattern_violates(const ActionSpec& action, const PointPattern& x) {
  const auto* forbidden = action.forbidden();
  if (!forbidden || forbidden->empty()) return false;
  // Candidate base positions: any g with some cell g * offset inside the
  // window (bases themselves may fall outside it).
  for (const auto& p : *forbidden) {
    std::set<GroupElement> bases;
    for (const auto& [w, sym] : x.symbols)
      for (const auto& cell : p.cells)
        bases.insert(
            group_mul(action.group, w, group_inverse(action.group, cell.offset)));
    for (const auto& g : bases) {
      bool matches = true;
      for (const auto& cell : p.cells) {
        GroupElement pos = group_mul(action.group, g, cell.offset);
        auto it = x.symbols.find(pos);
        if (it == x.symbols.end() || !cell.symbols.count(it->second)) {
          matches = false;
          break;
        }
      }
      if (matches) return true;
    }
  }
  return false;
}

std::vector<ForbiddenPattern> load_forbidden_patterns(const GroupSpec& group,
                                                      std::istream& is) {
  std::vector<ForbiddenPattern> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    ForbiddenPattern p;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ';')) {
      auto eq = cell.find('=');
      if (eq == std::string::npos)
        throw MismatchError("pattern cell missing '=': " + cell);
      GroupElement off = parse_element(group, cell.substr(0, eq));
      std::set<int> syms;
      std::istringstream ss(cell.substr(eq + 1));
      std::string tok;
      while (std::getline(ss, tok, ',')) syms.insert(std::stoi(tok));
      if (syms.empty()) throw MismatchError("pattern cell without symbols");
      p.cells.push_back({off, std::move(syms)});
    }
    if (!p.cells.empty()) out.push_back(std::move(p));
  }
  return out;
}

void save_forbidden_patterns(const GroupSpec& group,
                             const std::vector<ForbiddenPattern>& patterns,
                             std::ostream& os) {
  for (const auto& p : patterns) {
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
      if (i) os << ';';
      os << format_element(group, p.cells[i].offset) << '=';
      bool first = true;
      for (int sym : p.cells[i].symbols) {
        if (!first) os << ',';
        first = false;
        os << sym;
      }
    }
    os << '\n';
  }
}

ConstraintSet cylinder(const GroupElement& pos, int symbol) {
  return std::vector<CylinderConstraint>{{pos, {symbol}}};
}

ConstraintSet cylinder(const GroupElement& pos, std::set<int> allowed) {
  return std::vector<CylinderConstraint>{{pos, std::move(allowed)}};
}

bool satisfies(const ActionSpec& action, const PointPattern& x,
               const ConstraintSet& constraints) {
  if (auto* cyls = std::get_if<std::vector<CylinderConstraint>>(&constraints)) {
    for (const auto& c : *cyls)
      if (!c.allowed.count(x.symbol_at(c.pos))) return false;
    return true;
  }
  const auto& ball_c = std::get<MetricBall>(constraints);
  return rho(action, x, ball_c.center) <= ball_c.radius + rho_tail(x, ball_c.center);
}

}  // namespace soficlab
