#pragma once

#include <complex>
#include <string>
#include <vector>

#include "orbitrig/matrix.hpp"

namespace orbitrig {

// Element of a finite Abelian group, stored as a reduced coordinate tuple.
// Equality is structural; tuples are kept canonical (0 <= i_t < k_t) so that
// elements can be used directly as lookup keys.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<int> coords) : coords_(std::move(coords)) {}

  const std::vector<int>& coords() const { return coords_; }
  bool is_identity() const;
  bool operator==(const GroupElement& o) const { return coords_ == o.coords_; }
  bool operator!=(const GroupElement& o) const { return coords_ != o.coords_; }
  bool operator<(const GroupElement& o) const { return coords_ < o.coords_; }
  std::string to_string() const;

 private:
  std::vector<int> coords_;
};

// Z/k1 x ... x Z/kl with coordinatewise modular arithmetic. The empty factor
// list is the trivial group.
class AbelianGroup {
 public:
  AbelianGroup() = default;  // the trivial group
  explicit AbelianGroup(std::vector<int> factors);

  const std::vector<int>& factors() const { return factors_; }
  int order() const { return order_; }
  bool is_cyclic_of(int k) const { return factors_.size() == 1 && factors_[0] == k; }

  GroupElement identity() const;
  // Reduces arbitrary integer coordinates mod the factors.
  GroupElement make(const std::vector<int>& raw) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const;
  bool contains(const GroupElement& a) const;
  void require(const GroupElement& a) const;  // throws ValidationError on arity/range mismatch

  int index_of(const GroupElement& a) const;
  GroupElement element(int index) const;
  std::vector<GroupElement> elements() const;

  int element_order(const GroupElement& a) const;
  bool is_involution(const GroupElement& a) const;  // a != id and a + a == id

  bool operator==(const AbelianGroup& o) const { return factors_ == o.factors_; }
  bool operator!=(const AbelianGroup& o) const { return factors_ != o.factors_; }
  std::string to_string() const;

 private:
  std::vector<int> factors_;
  int order_ = 1;
};

// Value of the 1-dimensional irreducible representation labeled by j at i:
// the product over factors of omega_t^(i_t j_t), omega_t = exp(2 pi sqrt(-1)/k_t).
Cplx irrep_value(const AbelianGroup& group, const GroupElement& j, const GroupElement& i);

// Subgroup generated by a set of elements, as a sorted element list.
std::vector<GroupElement> generated_subgroup(const AbelianGroup& group,
                                             const std::vector<GroupElement>& generators);

// Faithful orthogonal representation tau: Gamma -> O(R^d), stored per element.
// Construction validates orthogonality and the homomorphism property to
// 1e-12 entrywise and faithfulness to 1e-9.
class OrthogonalRep {
 public:
  OrthogonalRep(AbelianGroup group, int dim, std::vector<RealMatrix> generator_matrices);

  const AbelianGroup& group() const { return group_; }
  int dim() const { return dim_; }
  const RealMatrix& matrix(const GroupElement& g) const;
  const RealMatrix& matrix_at(int element_index) const { return mats_[element_index]; }

 private:
  AbelianGroup group_;
  int dim_ = 0;
  std::vector<RealMatrix> mats_;  // indexed by element index
};

struct PlaneGroup {
  AbelianGroup group;
  OrthogonalRep rep;
  std::string name;
};

// The plane point groups used throughout: "cs" (mirror), "ck" for k >= 2
// (k-fold rotation, e.g. "c2", "c3"), and "c2v" (two mirrors + half-turn).
PlaneGroup standard_plane_rep(const std::string& name);

// Named representation for a given group: "reflection" (Z/2), "rotation"
// (generator t of Z/kt maps to rotation by 2 pi / kt), "c2v" (Z/2 x Z/2).
OrthogonalRep named_rep(const AbelianGroup& group, const std::string& tau_name);

}  // namespace orbitrig
