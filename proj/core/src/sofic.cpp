#include "soficlab/sofic.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace soficlab {

SoficMap::SoficMap(GroupSpec group, int d, Provenance provenance)
    : group_(std::move(group)), d_(d), provenance_(provenance) {
  if (d < 1) throw MismatchError("sofic map needs d >= 1");
}

bool SoficMap::in_support(const GroupElement& s) const {
  return table_.count(s) > 0;
}

const std::vector<int>& SoficMap::permutation(const GroupElement& s) const {
  auto it = table_.find(s);
  if (it == table_.end())
    throw MismatchError("element outside sofic support: " +
                        format_element(group_, s));
  return it->second;
}

int SoficMap::image(const GroupElement& s, int a) const {
  const auto& perm = permutation(s);
  if (a < 0 || a >= d_) throw MismatchError("point index out of range");
  return perm[a];
}

void SoficMap::set_permutation(const GroupElement& s, std::vector<int> images) {
  validate_element(group_, s);
  if (images.size() != static_cast<std::size_t>(d_))
    throw MismatchError("permutation size mismatch");
  if (!table_.count(s)) support_.push_back(s);
  table_[s] = std::move(images);
  std::sort(support_.begin(), support_.end());
}

void SoficMap::validate() const {
  if (!in_support(identity(group_)))
    throw MismatchError("sofic support must contain the identity");
  std::vector<char> seen(d_);
  for (const auto& [s, perm] : table_) {
    if (!in_support(group_inverse(group_, s)))
      throw MismatchError("sofic support is not inverse-closed");
    std::fill(seen.begin(), seen.end(), 0);
    for (int img : perm) {
      if (img < 0 || img >= d_ || seen[img])
        throw MismatchError("table entry is not a bijection");
      seen[img] = 1;
    }
  }
  if (provenance_ == Provenance::ExactQuotient) {
    const auto& id_perm = permutation(identity(group_));
    for (int a = 0; a < d_; ++a)
      if (id_perm[a] != a)
        throw MismatchError("exact quotient must fix the identity permutation");
  }
}

SoficMap quotient_sofic(const GroupSpec& lattice,
                        const std::vector<std::int64_t>& moduli,
                        int support_radius, const QuotientSoficOptions& opts) {
  if (lattice.kind != GroupSpec::Kind::IntegerLattice)
    throw MismatchError("quotient_sofic needs an integer lattice");
  if (moduli.size() != static_cast<std::size_t>(lattice.rank))
    throw MismatchError("moduli rank mismatch");
  if (support_radius < 1) throw MismatchError("support radius must be >= 1");
  GroupSpec quotient = GroupSpec::cyclic_quotient(moduli);
  std::int64_t d = quotient.order();
  if (d > opts.max_points)
    throw BudgetExhausted("quotient size exceeds configured maximum");

  SoficMap sigma(lattice, static_cast<int>(d), SoficMap::Provenance::ExactQuotient);
  for (const auto& s : ball(lattice, support_radius)) {
    GroupElement residue = identity(quotient);
    for (int i = 0; i < lattice.rank; ++i) {
      std::int64_t r = s.data[i] % moduli[i];
      residue.data[i] = r < 0 ? r + moduli[i] : r;
    }
    std::vector<int> perm(d);
    for (std::int64_t a = 0; a < d; ++a) {
      GroupElement pt = quotient_element(quotient, a);
      perm[a] = static_cast<int>(
          quotient_index(quotient, group_mul(quotient, residue, pt)));
    }
    sigma.set_permutation(s, std::move(perm));
  }
  sigma.validate();
  return sigma;
}

SoficMap perturb(const SoficMap& sigma, int m, std::uint64_t seed) {
  if (m < 0 || m > sigma.d()) throw MismatchError("perturbation size out of range");
  SoficMap out(sigma.group(), sigma.d(),
               m == 0 ? sigma.provenance() : SoficMap::Provenance::Perturbed);
  std::mt19937_64 rng(seed);
  for (const auto& s : sigma.support()) {
    std::vector<int> perm = sigma.permutation(s);
    if (m >= 2 && !is_identity(sigma.group(), s)) {
      std::vector<int> points(sigma.d());
      std::iota(points.begin(), points.end(), 0);
      std::shuffle(points.begin(), points.end(), rng);
      points.resize(m);
      std::vector<int> images(points.begin(), points.end());
      std::shuffle(images.begin(), images.end(), rng);
      // pi maps points[i] -> images[i], identity elsewhere; moves <= m points.
      std::vector<int> moved = perm;
      for (int a = 0; a < sigma.d(); ++a) {
        auto it = std::find(points.begin(), points.end(), perm[a]);
        if (it != points.end())
          moved[a] = images[static_cast<std::size_t>(it - points.begin())];
      }
      perm = std::move(moved);
    }
    out.set_permutation(s, std::move(perm));
  }
  out.validate();
  return out;
}

double multiplicativity_defect(const SoficMap& sigma, const GroupElement& s,
                               const GroupElement& t) {
  const auto& ps = sigma.permutation(s);
  const auto& pt = sigma.permutation(t);
  const auto& pst = sigma.permutation(group_mul(sigma.group(), s, t));
  int bad = 0;
  for (int a = 0; a < sigma.d(); ++a)
    if (pst[a] != ps[pt[a]]) ++bad;
  return static_cast<double>(bad) / sigma.d();
}

double freeness_defect(const SoficMap& sigma, const GroupElement& s,
                       const GroupElement& t) {
  if (s == t) throw MismatchError("freeness defect needs distinct elements");
  const auto& ps = sigma.permutation(s);
  const auto& pt = sigma.permutation(t);
  int coincide = 0;
  for (int a = 0; a < sigma.d(); ++a)
    if (ps[a] == pt[a]) ++coincide;
  return static_cast<double>(coincide) / sigma.d();
}

double hamming(const std::vector<int>& tau, const std::vector<int>& tau_prime) {
  if (tau.size() != tau_prime.size())
    throw MismatchError("hamming distance needs equal degrees");
  if (tau.empty()) throw MismatchError("hamming distance needs d >= 1");
  int diff = 0;
  for (std::size_t a = 0; a < tau.size(); ++a)
    if (tau[a] != tau_prime[a]) ++diff;
  return static_cast<double>(diff) / tau.size();
}

void save_sofic(const SoficMap& sigma, std::ostream& os) {
  os << "d=" << sigma.d() << '\n';
  for (const auto& s : sigma.support()) {
    os << format_element(sigma.group(), s) << ':';
    for (int img : sigma.permutation(s)) os << ' ' << img + 1;
    os << '\n';
  }
}

SoficMap load_sofic(const GroupSpec& group, std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("d=", 0) != 0)
    throw MismatchError("sofic file must start with a d=<int> header");
  int d = std::stoi(line.substr(2));
  SoficMap sigma(group, d, SoficMap::Provenance::Custom);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw MismatchError("sofic line missing ':' separator");
    GroupElement s = parse_element(group, line.substr(0, colon));
    std::istringstream rest(line.substr(colon + 1));
    std::vector<int> perm;
    perm.reserve(d);
    int img;
    while (rest >> img) perm.push_back(img - 1);
    sigma.set_permutation(s, std::move(perm));
  }
  sigma.validate();
  return sigma;
}

}  // namespace soficlab
