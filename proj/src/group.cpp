#include "orbitrig/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "orbitrig/errors.hpp"

namespace orbitrig {

namespace {
constexpr double kRepTol = 1e-12;
constexpr double kFaithfulTol = 1e-9;
}  // namespace

bool GroupElement::is_identity() const {
  return std::all_of(coords_.begin(), coords_.end(), [](int c) { return c == 0; });
}

std::string GroupElement::to_string() const {
  std::ostringstream out;
  out << "(";
  for (size_t t = 0; t < coords_.size(); ++t) {
    if (t) out << ",";
    out << coords_[t];
  }
  out << ")";
  return out.str();
}

AbelianGroup::AbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
  for (int k : factors_) {
    if (k < 2) throw ValidationError("group factors must be >= 2");
  }
  order_ = 1;
  for (int k : factors_) order_ *= k;
}

GroupElement AbelianGroup::identity() const {
  return GroupElement(std::vector<int>(factors_.size(), 0));
}

GroupElement AbelianGroup::make(const std::vector<int>& raw) const {
  if (raw.size() != factors_.size()) {
    throw ValidationError("element arity " + std::to_string(raw.size()) +
                          " does not match group with " + std::to_string(factors_.size()) +
                          " factor(s)");
  }
  std::vector<int> c(raw.size());
  for (size_t t = 0; t < raw.size(); ++t) {
    int m = raw[t] % factors_[t];
    if (m < 0) m += factors_[t];
    c[t] = m;
  }
  return GroupElement(std::move(c));
}

GroupElement AbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  require(a);
  require(b);
  std::vector<int> c(factors_.size());
  for (size_t t = 0; t < factors_.size(); ++t) c[t] = (a.coords()[t] + b.coords()[t]) % factors_[t];
  return GroupElement(std::move(c));
}

GroupElement AbelianGroup::negate(const GroupElement& a) const {
  require(a);
  std::vector<int> c(factors_.size());
  for (size_t t = 0; t < factors_.size(); ++t)
    c[t] = a.coords()[t] == 0 ? 0 : factors_[t] - a.coords()[t];
  return GroupElement(std::move(c));
}

GroupElement AbelianGroup::sub(const GroupElement& a, const GroupElement& b) const {
  return add(a, negate(b));
}

bool AbelianGroup::contains(const GroupElement& a) const {
  if (a.coords().size() != factors_.size()) return false;
  for (size_t t = 0; t < factors_.size(); ++t) {
    if (a.coords()[t] < 0 || a.coords()[t] >= factors_[t]) return false;
  }
  return true;
}

void AbelianGroup::require(const GroupElement& a) const {
  if (!contains(a)) {
    throw ValidationError("element " + a.to_string() + " does not belong to group " + to_string());
  }
}

int AbelianGroup::index_of(const GroupElement& a) const {
  require(a);
  int idx = 0;
  for (size_t t = 0; t < factors_.size(); ++t) idx = idx * factors_[t] + a.coords()[t];
  return idx;
}

GroupElement AbelianGroup::element(int index) const {
  if (index < 0 || index >= order_) throw ValidationError("element index out of range");
  std::vector<int> c(factors_.size());
  for (size_t t = factors_.size(); t-- > 0;) {
    c[t] = index % factors_[t];
    index /= factors_[t];
  }
  return GroupElement(std::move(c));
}

std::vector<GroupElement> AbelianGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(order_);
  for (int i = 0; i < order_; ++i) out.push_back(element(i));
  return out;
}

int AbelianGroup::element_order(const GroupElement& a) const {
  require(a);
  GroupElement acc = a;
  int n = 1;
  while (!acc.is_identity()) {
    acc = add(acc, a);
    ++n;
  }
  return n;
}

bool AbelianGroup::is_involution(const GroupElement& a) const {
  return !a.is_identity() && add(a, a).is_identity();
}

std::string AbelianGroup::to_string() const {
  if (factors_.empty()) return "trivial";
  if (factors_.size() == 1) return "cyclic " + std::to_string(factors_[0]);
  std::ostringstream out;
  out << "product";
  for (int k : factors_) out << " " << k;
  return out.str();
}

Cplx irrep_value(const AbelianGroup& group, const GroupElement& j, const GroupElement& i) {
  group.require(j);
  group.require(i);
  // Total phase as an exact fraction N/K of a full turn, K = product of the
  // factors. Quarter-turn values are returned exactly; zero-loop detection
  // and the trivial-motion systems rely on +-1 having no imaginary residue.
  long long K = 1;
  for (int k : group.factors()) K *= k;
  long long N = 0;
  for (size_t t = 0; t < group.factors().size(); ++t) {
    int k = group.factors()[t];
    N += static_cast<long long>((i.coords()[t] * j.coords()[t]) % k) * (K / k);
  }
  N %= K;
  if (4 * N % K == 0) {
    switch (4 * N / K) {
      case 0: return Cplx(1.0, 0.0);
      case 1: return Cplx(0.0, 1.0);
      case 2: return Cplx(-1.0, 0.0);
      case 3: return Cplx(0.0, -1.0);
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(N) / static_cast<double>(K));
}

std::vector<GroupElement> generated_subgroup(const AbelianGroup& group,
                                             const std::vector<GroupElement>& generators) {
  std::set<int> seen{group.index_of(group.identity())};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> current(seen.begin(), seen.end());
    for (int idx : current) {
      for (const GroupElement& g : generators) {
        int next = group.index_of(group.add(group.element(idx), g));
        if (seen.insert(next).second) grew = true;
      }
    }
  }
  std::vector<GroupElement> out;
  out.reserve(seen.size());
  for (int idx : seen) out.push_back(group.element(idx));
  return out;
}

OrthogonalRep::OrthogonalRep(AbelianGroup group, int dim, std::vector<RealMatrix> generator_matrices)
    : group_(std::move(group)), dim_(dim) {
  if (dim_ < 1) throw ValidationError("representation dimension must be >= 1");
  if (generator_matrices.size() != group_.factors().size()) {
    throw ValidationError("expected one generator matrix per group factor");
  }
  for (const RealMatrix& m : generator_matrices) {
    if (m.rows() != dim_ || m.cols() != dim_) {
      throw ValidationError("generator matrix has wrong shape");
    }
  }
  // Build per-element matrices as products of generator powers.
  mats_.resize(group_.order(), RealMatrix::identity(dim_));
  for (int idx = 0; idx < group_.order(); ++idx) {
    GroupElement e = group_.element(idx);
    RealMatrix m = RealMatrix::identity(dim_);
    for (size_t t = 0; t < group_.factors().size(); ++t) {
      for (int p = 0; p < e.coords()[t]; ++p) m = m * generator_matrices[t];
    }
    mats_[idx] = std::move(m);
  }
  const RealMatrix eye = RealMatrix::identity(dim_);
  for (int idx = 0; idx < group_.order(); ++idx) {
    if ((mats_[idx].transposed() * mats_[idx]).max_abs_diff(eye) >= kRepTol) {
      throw ValidationError("representation matrix is not orthogonal");
    }
  }
  for (int a = 0; a < group_.order(); ++a) {
    for (int b = 0; b < group_.order(); ++b) {
      int ab = group_.index_of(group_.add(group_.element(a), group_.element(b)));
      if ((mats_[a] * mats_[b]).max_abs_diff(mats_[ab]) >= kRepTol) {
        throw ValidationError("representation is not a homomorphism");
      }
    }
  }
  for (int idx = 1; idx < group_.order(); ++idx) {
    if (mats_[idx].max_abs_diff(eye) < kFaithfulTol) {
      throw ValidationError("representation is not faithful: " +
                            group_.element(idx).to_string() + " maps to the identity");
    }
  }
}

const RealMatrix& OrthogonalRep::matrix(const GroupElement& g) const {
  return mats_[group_.index_of(g)];
}

namespace {

double snap_unit(double v) {
  for (double target : {0.0, 1.0, -1.0}) {
    if (std::abs(v - target) < 1e-12) return target;
  }
  return v;
}

RealMatrix rotation2(double angle) {
  double c = snap_unit(std::cos(angle));
  double s = snap_unit(std::sin(angle));
  return RealMatrix(2, 2, {c, -s, s, c});
}

}  // namespace

OrthogonalRep named_rep(const AbelianGroup& group, const std::string& tau_name) {
  if (tau_name == "reflection") {
    if (!group.is_cyclic_of(2)) {
      throw ValidationError("tau 'reflection' requires the cyclic group of order 2");
    }
    return OrthogonalRep(group, 2, {RealMatrix(2, 2, {-1, 0, 0, 1})});
  }
  if (tau_name == "rotation") {
    if (group.factors().empty()) {
      throw ValidationError("tau 'rotation' requires a non-trivial group");
    }
    std::vector<RealMatrix> gens;
    for (int k : group.factors()) gens.push_back(rotation2(2.0 * std::numbers::pi / k));
    return OrthogonalRep(group, 2, std::move(gens));  // faithfulness check rejects bad products
  }
  if (tau_name == "c2v") {
    if (group.factors() != std::vector<int>{2, 2}) {
      throw ValidationError("tau 'c2v' requires the group product 2 2");
    }
    // Generators (1,0) -> horizontal mirror, (0,1) -> half-turn; then the
    // element (1,1) is the vertical mirror.
    return OrthogonalRep(group, 2,
                         {RealMatrix(2, 2, {1, 0, 0, -1}), RealMatrix(2, 2, {-1, 0, 0, -1})});
  }
  throw ValidationError("unknown tau name '" + tau_name + "'");
}

PlaneGroup standard_plane_rep(const std::string& name) {
  std::string n;
  for (char c : name) n += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (n == "cs" || n == "c_s") {
    AbelianGroup g({2});
    return PlaneGroup{g, named_rep(g, "reflection"), "cs"};
  }
  if (n == "c2v" || n == "c_2v") {
    AbelianGroup g({2, 2});
    return PlaneGroup{g, named_rep(g, "c2v"), "c2v"};
  }
  if (n.size() >= 2 && n[0] == 'c') {
    std::string digits = n.substr(1);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(),
                                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      int k = std::stoi(digits);
      if (k >= 2) {
        AbelianGroup g({k});
        return PlaneGroup{g, named_rep(g, "rotation"), "c" + digits};
      }
    }
  }
  throw ValidationError("unknown point group name '" + name + "'");
}

}  // namespace orbitrig
