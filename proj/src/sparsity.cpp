#include "orbitrig/sparsity.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>

#include "orbitrig/errors.hpp"

namespace orbitrig {

namespace {

constexpr int kMaxEdges = 18;

using Mask = std::uint32_t;

std::vector<int> mask_to_ids(Mask mask) {
  std::vector<int> ids;
  for (int e = 0; mask; ++e, mask >>= 1) {
    if (mask & 1u) ids.push_back(e);
  }
  return ids;
}

struct SubsetCounts {
  int edge_count = 0;
  int vertex_count = 0;
  bool connected = false;
  bool balanced = false;
};

SubsetCounts subset_counts(const GainGraph& graph, Mask mask) {
  SubsetCounts out;
  std::vector<int> ids = mask_to_ids(mask);
  out.edge_count = static_cast<int>(ids.size());
  std::vector<int> touched;
  for (int id : ids) {
    const GainEdge& e = graph.edges()[id];
    touched.push_back(graph.vertex_index(e.tail));
    touched.push_back(graph.vertex_index(e.head));
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  out.vertex_count = static_cast<int>(touched.size());

  // Union-find over the touched vertices for connectivity.
  std::vector<int> parent(touched.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto pos = [&](int vidx) {
    return static_cast<int>(std::lower_bound(touched.begin(), touched.end(), vidx) -
                            touched.begin());
  };
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int id : ids) {
    const GainEdge& e = graph.edges()[id];
    int a = find(pos(graph.vertex_index(e.tail)));
    int b = find(pos(graph.vertex_index(e.head)));
    if (a != b) parent[a] = b;
  }
  int components = 0;
  for (size_t i = 0; i < parent.size(); ++i) {
    if (find(static_cast<int>(i)) == static_cast<int>(i)) ++components;
  }
  out.connected = components <= 1;
  out.balanced = is_balanced(graph, ids);
  return out;
}

// Does the subset itself break one of the two counts?
bool violates(const GainGraph& graph, const SparsityParams& params, Mask mask,
              const SubsetCounts& c) {
  (void)graph;
  if (mask == 0) return false;
  if (c.edge_count > params.k * c.vertex_count - params.m) return true;
  if (c.balanced && c.edge_count > params.k * c.vertex_count - params.ell) return true;
  return false;
}

void require_supported_size(const GainGraph& graph) {
  if (graph.edge_count() > kMaxEdges) {
    throw ValidationError("sparsity checks are limited to graphs with at most " +
                          std::to_string(kMaxEdges) + " edges");
  }
}

}  // namespace

SparsityParams::SparsityParams(int k_, int ell_, int m_) : k(k_), ell(ell_), m(m_) {
  if (k < 1 || m < 0 || ell < 0) throw ValidationError("sparsity parameters must be nonnegative, k >= 1");
  if (m > ell) throw ValidationError("sparsity requires m <= l");
}

bool SparsityParams::matroidal() const {
  return k == 2 && ell == 3 && (m == 1 || m == 2);
}

SparsityCheck check_gain_sparse(const GainGraph& graph, const SparsityParams& params) {
  require_supported_size(graph);
  const int ne = graph.edge_count();
  SparsityCheck result;
  int best_size = ne + 1;
  Mask best_mask = 0;
  for (Mask mask = 1; mask < (Mask{1} << ne); ++mask) {
    int size = std::popcount(mask);
    if (size >= best_size) continue;
    SubsetCounts c = subset_counts(graph, mask);
    if (!c.connected) continue;  // minimal violators are connected
    if (violates(graph, params, mask, c)) {
      best_size = size;
      best_mask = mask;
    }
  }
  if (best_mask != 0) {
    result.sparse = false;
    result.witness = mask_to_ids(best_mask);
  }
  return result;
}

bool is_gain_sparse(const GainGraph& graph, const SparsityParams& params) {
  return check_gain_sparse(graph, params).sparse;
}

bool subset_is_sparse(const GainGraph& graph, const SparsityParams& params,
                      const std::vector<int>& edge_ids) {
  require_supported_size(graph);
  Mask base = 0;
  for (int id : edge_ids) base |= Mask{1} << id;
  Mask sub = base;
  while (true) {
    if (sub != 0) {
      SubsetCounts c = subset_counts(graph, sub);
      if (c.connected && violates(graph, params, sub, c)) return false;
    }
    if (sub == 0) break;
    sub = (sub - 1) & base;
  }
  return true;
}

int matroid_rank(const GainGraph& graph, const SparsityParams& params) {
  if (!params.matroidal()) {
    throw ValidationError(
        "greedy rank requires a matroidal parameter triple ((2,3,1) or (2,3,2)); "
        "use the exhaustive search for other parameters");
  }
  require_supported_size(graph);
  Mask chosen = 0;
  int rank = 0;
  for (int e = 0; e < graph.edge_count(); ++e) {
    Mask cand = chosen | (Mask{1} << e);
    // Only subsets containing the new edge can newly violate.
    bool ok = true;
    Mask sub = chosen;
    while (true) {
      Mask f = sub | (Mask{1} << e);
      SubsetCounts c = subset_counts(graph, f);
      if (c.connected && violates(graph, params, f, c)) {
        ok = false;
        break;
      }
      if (sub == 0) break;
      sub = (sub - 1) & chosen;
    }
    if (ok) {
      chosen = cand;
      ++rank;
    }
  }
  return rank;
}

int max_sparse_subset_size(const GainGraph& graph, const SparsityParams& params) {
  require_supported_size(graph);
  const int ne = graph.edge_count();
  const Mask full = (Mask{1} << ne) - 1;
  std::vector<char> indep(static_cast<size_t>(full) + 1, 0);
  indep[0] = 1;
  int best = 0;
  for (Mask mask = 1; mask <= full; ++mask) {
    bool sub_ok = true;
    for (Mask rest = mask; rest; rest &= rest - 1) {
      Mask without = mask ^ (rest & (~rest + 1));
      if (!indep[without]) {
        sub_ok = false;
        break;
      }
    }
    if (!sub_ok) continue;
    SubsetCounts c = subset_counts(graph, mask);
    if (violates(graph, params, mask, c)) continue;
    indep[mask] = 1;
    best = std::max(best, c.edge_count);
  }
  return best;
}

bool is_tight(const GainGraph& graph, const SparsityParams& params) {
  if (graph.edge_count() != params.k * graph.vertex_count() - params.m) return false;
  return is_gain_sparse(graph, params);
}

}  // namespace orbitrig
