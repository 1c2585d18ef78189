#pragma once

#include <vector>

#include "orbitrig/gain_graph.hpp"

namespace orbitrig {

// Parameters of a (k, l, m) gain-sparsity count: balanced subsets are held to
// |F| <= k|V(F)| - l, arbitrary subsets to |F| <= k|V(F)| - m.
struct SparsityParams {
  int k;
  int ell;
  int m;

  SparsityParams(int k_, int ell_, int m_);
  bool matroidal() const;  // (2,3,1) or (2,3,2)
  bool operator==(const SparsityParams& o) const {
    return k == o.k && ell == o.ell && m == o.m;
  }
};

struct SparsityCheck {
  bool sparse = true;
  std::vector<int> witness;  // a smallest violating edge set when !sparse
};

// Exhaustive check over edge subsets (graphs up to 18 edges). The witness is
// a minimum-cardinality violator; minimal violators are connected, so the
// scan prunes disconnected subsets.
SparsityCheck check_gain_sparse(const GainGraph& graph, const SparsityParams& params);
bool is_gain_sparse(const GainGraph& graph, const SparsityParams& params);

// Restriction of the check to subsets of the given edge set.
bool subset_is_sparse(const GainGraph& graph, const SparsityParams& params,
                      const std::vector<int>& edge_ids);

// Matroid rank by greedy augmentation in edge-id order. Only the parameter
// triples whose sparse sets form a matroid are accepted; others must go
// through max_sparse_subset_size.
int matroid_rank(const GainGraph& graph, const SparsityParams& params);

// Exact maximum size of a sparse edge subset for arbitrary parameters, by
// dynamic programming over all subsets.
int max_sparse_subset_size(const GainGraph& graph, const SparsityParams& params);

bool is_tight(const GainGraph& graph, const SparsityParams& params);

}  // namespace orbitrig
