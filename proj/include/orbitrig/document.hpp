#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "orbitrig/framework.hpp"
#include "orbitrig/gain_graph.hpp"
#include "orbitrig/group.hpp"
#include "orbitrig/sparsity.hpp"

namespace orbitrig {

// Structured text document describing a gain graph, its representation, and
// optional placement / sparsity parameters. Layout:
//
//   # comment
//   group cyclic 2
//   tau reflection
//   vertices 1 2 3
//   edges
//   [1, 3, [0]]
//   [1, 2, [1]]
//   end
//   placement
//   1 1.25 0.5
//   end
//   params
//   k 2
//   l 3
//   m 1
//   end
//
// `tau` is one of reflection | rotation | c2v, or `matrix` followed by one
// bracketed row-list per group factor. Unknown sections or keys are rejected
// with positioned errors.
struct Document {
  std::vector<int> group_factors;
  std::optional<std::string> tau_kind;  // "reflection" | "rotation" | "c2v" | "matrix"
  std::vector<RealMatrix> tau_matrices;
  std::vector<int> vertices;
  std::vector<std::tuple<int, int, std::vector<int>>> edges;
  std::optional<std::vector<std::pair<int, RVec>>> placement;
  std::optional<std::tuple<int, int, int>> params;  // k, l, m

  bool operator==(const Document&) const = default;
};

Document parse_document(const std::string& text);
std::string serialize_document(const Document& doc);

struct LoadedModel {
  GainGraph graph;
  std::optional<OrthogonalRep> tau;
  std::optional<QuotientPlacement> placement;
  std::optional<SparsityParams> params;
};

// Semantic validation on top of the parsed document: group/gain arity,
// endpoint existence, identity-gain loops, representation checks, placement
// completeness.
LoadedModel build_model(const Document& doc);
LoadedModel parse_model(const std::string& text);

}  // namespace orbitrig
