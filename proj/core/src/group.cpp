#include "soficlab/group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace soficlab {

namespace {

std::int64_t mod_floor(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

GroupSpec GroupSpec::lattice(int rank) {
  if (rank < 1) throw MismatchError("lattice rank must be positive");
  GroupSpec s;
  s.kind = Kind::IntegerLattice;
  s.rank = rank;
  return s;
}

GroupSpec GroupSpec::free_group(int rank) {
  if (rank < 1) throw MismatchError("free rank must be positive");
  GroupSpec s;
  s.kind = Kind::FreeGroup;
  s.rank = rank;
  return s;
}

GroupSpec GroupSpec::cyclic_quotient(std::vector<std::int64_t> moduli) {
  if (moduli.empty()) throw MismatchError("quotient needs at least one modulus");
  for (auto m : moduli)
    if (m < 1) throw MismatchError("quotient moduli must be >= 1");
  GroupSpec s;
  s.kind = Kind::CyclicQuotient;
  s.rank = static_cast<int>(moduli.size());
  s.moduli = std::move(moduli);
  return s;
}

std::int64_t GroupSpec::order() const {
  if (kind != Kind::CyclicQuotient)
    throw MismatchError("order() is defined only for finite quotients");
  std::int64_t d = 1;
  for (auto m : moduli) d *= m;
  return d;
}

GroupElement identity(const GroupSpec& spec) {
  if (spec.kind == GroupSpec::Kind::FreeGroup) return GroupElement{{}};
  return GroupElement{std::vector<std::int64_t>(spec.rank, 0)};
}

bool is_identity(const GroupSpec& spec, const GroupElement& a) {
  return a == identity(spec);
}

void validate_element(const GroupSpec& spec, const GroupElement& a) {
  switch (spec.kind) {
    case GroupSpec::Kind::IntegerLattice:
      if (a.data.size() != static_cast<std::size_t>(spec.rank))
        throw MismatchError("lattice element has wrong rank");
      return;
    case GroupSpec::Kind::CyclicQuotient:
      if (a.data.size() != static_cast<std::size_t>(spec.rank))
        throw MismatchError("quotient element has wrong rank");
      for (int i = 0; i < spec.rank; ++i)
        if (a.data[i] < 0 || a.data[i] >= spec.moduli[i])
          throw MismatchError("residue out of range");
      return;
    case GroupSpec::Kind::FreeGroup:
      for (std::size_t i = 0; i < a.data.size(); ++i) {
        auto g = a.data[i];
        if (g == 0 || std::abs(g) > spec.rank)
          throw MismatchError("free word letter out of range");
        if (i + 1 < a.data.size() && a.data[i + 1] == -g)
          throw MismatchError("free word is not reduced");
      }
      return;
  }
  throw MismatchError("unknown group kind");
}

GroupElement group_mul(const GroupSpec& spec, const GroupElement& a,
                       const GroupElement& b) {
  validate_element(spec, a);
  validate_element(spec, b);
  GroupElement out;
  switch (spec.kind) {
    case GroupSpec::Kind::IntegerLattice:
      out.data.resize(spec.rank);
      for (int i = 0; i < spec.rank; ++i) out.data[i] = a.data[i] + b.data[i];
      return out;
    case GroupSpec::Kind::CyclicQuotient:
      out.data.resize(spec.rank);
      for (int i = 0; i < spec.rank; ++i)
        out.data[i] = mod_floor(a.data[i] + b.data[i], spec.moduli[i]);
      return out;
    case GroupSpec::Kind::FreeGroup: {
      out.data = a.data;
      for (auto g : b.data) {
        if (!out.data.empty() && out.data.back() == -g)
          out.data.pop_back();
        else
          out.data.push_back(g);
      }
      return out;
    }
  }
  throw MismatchError("unknown group kind");
}

GroupElement group_inverse(const GroupSpec& spec, const GroupElement& a) {
  validate_element(spec, a);
  GroupElement out;
  switch (spec.kind) {
    case GroupSpec::Kind::IntegerLattice:
      out.data.resize(spec.rank);
      for (int i = 0; i < spec.rank; ++i) out.data[i] = -a.data[i];
      return out;
    case GroupSpec::Kind::CyclicQuotient:
      out.data.resize(spec.rank);
      for (int i = 0; i < spec.rank; ++i)
        out.data[i] = a.data[i] == 0 ? 0 : spec.moduli[i] - a.data[i];
      return out;
    case GroupSpec::Kind::FreeGroup:
      out.data.assign(a.data.rbegin(), a.data.rend());
      for (auto& g : out.data) g = -g;
      return out;
  }
  throw MismatchError("unknown group kind");
}

std::int64_t word_length(const GroupSpec& spec, const GroupElement& a) {
  validate_element(spec, a);
  switch (spec.kind) {
    case GroupSpec::Kind::IntegerLattice: {
      std::int64_t n = 0;
      for (auto v : a.data) n += std::abs(v);
      return n;
    }
    case GroupSpec::Kind::CyclicQuotient: {
      std::int64_t n = 0;
      for (int i = 0; i < spec.rank; ++i)
        n += std::min(a.data[i], spec.moduli[i] - a.data[i]);
      return n;
    }
    case GroupSpec::Kind::FreeGroup:
      return static_cast<std::int64_t>(a.data.size());
  }
  throw MismatchError("unknown group kind");
}

namespace {

void lattice_ball_rec(int rank, int pos, std::int64_t budget,
                      std::vector<std::int64_t>& cur,
                      std::vector<GroupElement>& out) {
  if (pos == rank) {
    out.push_back(GroupElement{cur});
    return;
  }
  for (std::int64_t v = -budget; v <= budget; ++v) {
    cur[pos] = v;
    lattice_ball_rec(rank, pos + 1, budget - std::abs(v), cur, out);
  }
  cur[pos] = 0;
}

void free_ball_rec(int rank, int depth, GroupElement& word,
                   std::vector<GroupElement>& out) {
  out.push_back(word);
  if (depth == 0) return;
  for (std::int64_t g = 1; g <= rank; ++g) {
    for (std::int64_t sg : {g, -g}) {
      if (!word.data.empty() && word.data.back() == -sg) continue;
      word.data.push_back(sg);
      free_ball_rec(rank, depth - 1, word, out);
      word.data.pop_back();
    }
  }
}

}  // namespace

std::vector<GroupElement> ball(const GroupSpec& spec, int radius) {
  if (radius < 0) throw MismatchError("ball radius must be >= 0");
  std::vector<GroupElement> out;
  switch (spec.kind) {
    case GroupSpec::Kind::IntegerLattice: {
      std::vector<std::int64_t> cur(spec.rank, 0);
      lattice_ball_rec(spec.rank, 0, radius, cur, out);
      break;
    }
    case GroupSpec::Kind::CyclicQuotient: {
      std::int64_t d = spec.order();
      for (std::int64_t i = 0; i < d; ++i) {
        auto e = quotient_element(spec, i);
        if (word_length(spec, e) <= radius) out.push_back(e);
      }
      break;
    }
    case GroupSpec::Kind::FreeGroup: {
      GroupElement word{{}};
      free_ball_rec(spec.rank, radius, word, out);
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::int64_t quotient_index(const GroupSpec& spec, const GroupElement& a) {
  if (spec.kind != GroupSpec::Kind::CyclicQuotient)
    throw MismatchError("quotient_index needs a CyclicQuotient group");
  validate_element(spec, a);
  std::int64_t idx = 0;
  for (int i = 0; i < spec.rank; ++i) idx = idx * spec.moduli[i] + a.data[i];
  return idx;
}

GroupElement quotient_element(const GroupSpec& spec, std::int64_t index) {
  if (spec.kind != GroupSpec::Kind::CyclicQuotient)
    throw MismatchError("quotient_element needs a CyclicQuotient group");
  GroupElement a;
  a.data.resize(spec.rank);
  for (int i = spec.rank - 1; i >= 0; --i) {
    a.data[i] = index % spec.moduli[i];
    index /= spec.moduli[i];
  }
  if (index != 0) throw MismatchError("quotient index out of range");
  return a;
}

std::string format_element(const GroupSpec& spec, const GroupElement& a) {
  validate_element(spec, a);
  if (spec.kind == GroupSpec::Kind::FreeGroup) {
    if (a.data.empty()) return "1";
    std::string s;
    for (auto g : a.data)
      s += static_cast<char>((g > 0 ? 'a' : 'A') + std::abs(g) - 1);
    return s;
  }
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < spec.rank; ++i) {
    if (i) os << ',';
    os << a.data[i];
  }
  os << ')';
  return os.str();
}

namespace {

GroupElement parse_word(const GroupSpec& spec, const std::string& text) {
  GroupElement w{{}};
  for (char c : text) {
    std::int64_t g;
    if (c == 't') {
      g = 1;
    } else if (c == 'T') {
      g = -1;
    } else if (c >= 'a' && c <= 'z') {
      g = c - 'a' + 1;
    } else if (c >= 'A' && c <= 'Z') {
      g = -(c - 'A' + 1);
    } else {
      throw MismatchError(std::string("bad generator letter: ") + c);
    }
    if (std::abs(g) > spec.rank) throw MismatchError("generator out of range");
    if (!w.data.empty() && w.data.back() == -g)
      w.data.pop_back();
    else
      w.data.push_back(g);
  }
  return w;
}

}  // namespace

GroupElement parse_element(const GroupSpec& spec, const std::string& text) {
  if (text.empty()) throw MismatchError("empty element text");
  if (text == "1") return identity(spec);
  if (text.front() == '(') {
    if (text.back() != ')') throw MismatchError("unterminated tuple");
    std::vector<std::int64_t> coords;
    std::string body = text.substr(1, text.size() - 2);
    std::istringstream is(body);
    std::string part;
    while (std::getline(is, part, ',')) {
      std::size_t used = 0;
      coords.push_back(std::stoll(part, &used));
      if (used != part.size()) throw MismatchError("bad tuple entry: " + part);
    }
    if (spec.kind == GroupSpec::Kind::FreeGroup)
      throw MismatchError("tuple form is not a free-group element");
    if (coords.size() != static_cast<std::size_t>(spec.rank))
      throw MismatchError("tuple rank mismatch");
    GroupElement a{std::move(coords)};
    if (spec.kind == GroupSpec::Kind::CyclicQuotient)
      for (int i = 0; i < spec.rank; ++i)
        a.data[i] = mod_floor(a.data[i], spec.moduli[i]);
    validate_element(spec, a);
    return a;
  }
  // Letter form. On a rank-1 lattice/quotient, letters are a convenience for
  // powers of the generator (e.g. "tt" = (2)).
  if (spec.kind == GroupSpec::Kind::FreeGroup) return parse_word(spec, text);
  GroupSpec f = GroupSpec::free_group(spec.rank);
  GroupElement w = parse_word(f, text);
  GroupElement a = identity(spec);
  for (auto g : w.data) {
    GroupElement step = identity(spec);
    step.data[std::abs(g) - 1] = g > 0 ? 1 : -1;
    if (spec.kind == GroupSpec::Kind::CyclicQuotient)
      step.data[std::abs(g) - 1] =
          mod_floor(step.data[std::abs(g) - 1], spec.moduli[std::abs(g) - 1]);
    a = group_mul(spec, a, step);
  }
  return a;
}

}  // namespace soficlab
