#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbitrig/analyzer.hpp"
#include "orbitrig/document.hpp"
#include "orbitrig/errors.hpp"
#include "orbitrig/henneberg.hpp"

namespace {

using namespace orbitrig;

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1;  // flexibility or a count violation was found
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::uint64_t> seed_triple(std::uint64_t seed) {
  return {seed, seed + 1, seed + 2};
}

const OrthogonalRep& require_tau(const LoadedModel& model) {
  if (!model.tau) throw Error("this command requires a tau section in the document");
  return *model.tau;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

AbelianGroup parse_group_spec(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "cyclic") {
    return AbelianGroup({std::stoi(rest)});
  }
  if (kind == "product") {
    std::vector<int> factors;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) factors.push_back(std::stoi(item));
    return AbelianGroup(factors);
  }
  throw Error("group spec must be cyclic:<k> or product:<k1,k2,...> (got '" + spec + "')");
}

void print_report(const RigidityReport& r) {
  std::cout << "group: " << r.group_desc << "\n";
  std::cout << "quotient: " << r.quotient_vertices << " vertices, " << r.quotient_edges
            << " edges\n";
  std::cout << "cover: " << r.cover_vertices << " vertices, " << r.cover_edges << " edges\n";
  for (const BlockReport& b : r.blocks) {
    std::cout << "block j=" << b.irrep.to_string() << ": " << b.rows << "x" << b.cols
              << ", nonzero-rows " << b.nonzero_rows << ", rank " << b.rank << ", trivial-dim "
              << b.trivial_dim << ", flex " << (b.flex ? "yes" : "no") << "\n";
  }
  std::cout << "rank-sum: " << r.rank_sum << "\n";
  std::cout << "cover-rank: " << r.cover_rank << "\n";
  if (r.combinatorial_rank) std::cout << "combinatorial-rank: " << *r.combinatorial_rank << "\n";
  std::cout << "verdict: " << (r.numeric_rigid ? "rigid" : "flexible") << " (numeric)";
  if (r.combinatorial_rigid) {
    std::cout << ", " << (*r.combinatorial_rigid ? "rigid" : "flexible") << " (combinatorial)";
  }
  std::cout << "\n";
  std::cout << "dof: " << r.dof << "\n";
  if (r.flex_block) std::cout << "flex-block: j=" << r.flex_block->to_string() << "\n";
}

int cmd_analyze(const std::string& path, std::uint64_t seed, double tol) {
  LoadedModel model = parse_model(read_file(path));
  RigidityReport report = degrees_of_freedom(model.graph, require_tau(model), seed_triple(seed), tol);
  print_report(report);
  return report.numeric_rigid ? kExitOk : kExitFinding;
}

int cmd_blocks(const std::string& path, std::uint64_t seed, double tol, const std::string& j_spec) {
  LoadedModel model = parse_model(read_file(path));
  const OrthogonalRep& tau = require_tau(model);
  const AbelianGroup& grp = model.graph.group();
  QuotientPlacement placement =
      model.placement ? *model.placement
                      : random_symmetric_placement(model.graph, tau, seed);

  std::vector<GroupElement> selected;
  if (j_spec.empty()) {
    selected = grp.elements();
  } else {
    std::vector<int> coords;
    std::stringstream ss(j_spec);
    std::string item;
    while (std::getline(ss, item, ',')) coords.push_back(std::stoi(item));
    selected = {grp.make(coords)};
  }

  bool any_flex = false;
  for (const GroupElement& j : selected) {
    OrbitMatrix o = orbit_matrix(model.graph, tau, placement, j);
    int rank = numeric_rank(o.mat, tol);
    auto flex = symmetric_flex(model.graph, tau, placement, j, tol);
    any_flex = any_flex || flex.has_value();
    std::cout << "block j=" << j.to_string() << ": " << o.mat.rows() << "x" << o.mat.cols()
              << ", nonzero-rows " << nonzero_row_count(model.graph, j) << ", rank " << rank
              << ", trivial-dim " << trivial_block_dim(tau, j) << ", flex "
              << (flex ? "yes" : "no") << "\n";
  }
  return any_flex ? kExitFinding : kExitOk;
}

int cmd_sparsity(const std::string& path, int k, int l, int m, bool force_brute, bool have_flags) {
  LoadedModel model = parse_model(read_file(path));
  SparsityParams params = [&]() {
    if (have_flags) return SparsityParams(k, l, m);
    if (model.params) return *model.params;
    throw Error("pass --k/--l/--m or add a params section to the document");
  }();

  SparsityCheck check = check_gain_sparse(model.graph, params);
  std::cout << "params: k=" << params.k << " l=" << params.ell << " m=" << params.m << "\n";
  std::cout << "sparse: " << (check.sparse ? "yes" : "no") << "\n";
  if (params.matroidal()) {
    std::cout << "rank: " << matroid_rank(model.graph, params) << "\n";
  } else if (force_brute) {
    std::cout << "rank: " << max_sparse_subset_size(model.graph, params) << " (exhaustive)\n";
  } else {
    throw Error("parameters (" + std::to_string(params.k) + "," + std::to_string(params.ell) +
                "," + std::to_string(params.m) +
                ") are not matroidal; pass --force-brute for an exhaustive rank");
  }
  std::cout << "tight: "
            << (is_tight(model.graph, params) ? "yes" : "no") << "\n";
  if (!check.sparse) {
    std::cout << "witness:";
    for (int id : check.witness) std::cout << " " << id;
    std::cout << "\n";
  }
  return check.sparse ? kExitOk : kExitFinding;
}

int cmd_construct(const std::string& group_spec, int n, int m, std::uint64_t seed) {
  AbelianGroup group = parse_group_spec(group_spec);
  GenerationTrace trace = generate_tight_traced(group, n, m, seed);

  Document doc;
  doc.group_factors = group.factors();
  if (group.factors().size() == 1) {
    doc.tau_kind = "rotation";
  } else if (group.factors() == std::vector<int>{2, 2}) {
    doc.tau_kind = "c2v";
  }
  doc.vertices = trace.graph.vertices();
  for (const GainEdge& e : trace.graph.edges()) {
    doc.edges.emplace_back(e.tail, e.head, e.gain.coords());
  }
  std::cout << serialize_document(doc);
  std::cout << "# trace (" << trace.moves.size() << " moves)\n";
  for (size_t i = 0; i < trace.moves.size(); ++i) {
    std::cout << "# move " << i + 1 << ": " << move_to_string(trace.moves[i]) << "\n";
  }
  return kExitOk;
}

int cmd_lift(const std::string& path, std::uint64_t seed) {
  LoadedModel model = parse_model(read_file(path));
  const OrthogonalRep& tau = require_tau(model);
  QuotientPlacement placement =
      model.placement ? *model.placement
                      : random_symmetric_placement(model.graph, tau, seed);
  CoveringGraph cover = covering_graph(model.graph);
  Placement lifted = lift_placement(model.graph, tau, placement);

  std::cout << "vertices " << cover.graph.vertex_count << "\n";
  for (int v = 0; v < cover.graph.vertex_count; ++v) {
    std::cout << v << " g=" << cover.group.element(cover.group_index(v)).to_string()
              << " v=" << model.graph.vertices()[cover.vertex_pos(v)];
    for (double x : lifted.coords[v]) std::cout << " " << fmt_double(x);
    std::cout << "\n";
  }
  std::cout << "edges " << cover.graph.edge_count() << "\n";
  for (int e = 0; e < cover.graph.edge_count(); ++e) {
    std::cout << cover.graph.edges[e].first << " " << cover.graph.edges[e].second
              << " q=" << cover.edge_to_quotient[e] << "\n";
  }
  return kExitOk;
}

int cmd_circuits(const std::string& path) {
  LoadedModel model = parse_model(read_file(path));
  Circuits circuits = find_circuits(model.graph);
  std::cout << "balanced-circuits: " << circuits.balanced.size() << "\n";
  for (const auto& c : circuits.balanced) {
    std::cout << " ";
    for (int id : c) std::cout << " " << id;
    std::cout << "\n";
  }
  std::cout << "unbalanced-circuits: " << circuits.unbalanced.size() << "\n";
  for (const auto& c : circuits.unbalanced) {
    std::cout << " ";
    for (int id : c) std::cout << " " << id;
    std::cout << "\n";
  }
  return circuits.balanced.empty() && circuits.unbalanced.empty() ? kExitOk : kExitFinding;
}

int cmd_probe(const std::string& path, std::uint64_t seed, double tol) {
  LoadedModel model = parse_model(read_file(path));
  ProbeReport report = probe_odd_rotation(model.graph, require_tau(model), seed_triple(seed), tol);
  std::cout << "k: " << report.k << "\n";
  std::cout << "cover-edges: " << report.cover_edges << "\n";
  std::cout << "cover-rank: " << report.cover_rank << "\n";
  std::cout << "generic-rank: " << report.generic_rank << "\n";
  std::cout << "symmetric-rigid: " << (report.symmetric_rigid ? "yes" : "no") << "\n";
  std::cout << "underlying-rigid: " << (report.underlying_rigid ? "yes" : "no") << "\n";
  std::cout << "agreement: " << (report.agreement ? "yes" : "no") << "\n";
  return report.agreement ? kExitOk : kExitFinding;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infinitesimal rigidity of symmetric bar-joint frameworks via orbit matrices"};
  app.require_subcommand(1);

  std::string file;
  std::uint64_t seed = 1;
  double tol = kDefaultRankTol;
  std::string j_spec;
  int k = 2, l = 3, m = 1;
  bool force_brute = false;
  std::string group_spec;
  int n = 1;

  auto* analyze = app.add_subcommand("analyze", "full rigidity report for a framework document");
  analyze->add_option("file", file)->required();
  analyze->add_option("--seed", seed);
  analyze->add_option("--tol", tol);

  auto* blocks = app.add_subcommand("blocks", "per-block orbit matrix report");
  blocks->add_option("file", file)->required();
  blocks->add_option("--seed", seed);
  blocks->add_option("--tol", tol);
  blocks->add_option("--j", j_spec, "block selector, e.g. 1 or 0,1");

  auto* sparsity = app.add_subcommand("sparsity", "gain-sparsity verdict, rank and witness");
  sparsity->add_option("file", file)->required();
  auto* opt_k = sparsity->add_option("--k", k);
  sparsity->add_option("--l", l);
  sparsity->add_option("--m", m);
  sparsity->add_flag("--force-brute", force_brute, "exhaustive rank for non-matroidal parameters");

  auto* construct = app.add_subcommand("construct", "generate a random tight gain graph");
  construct->add_option("--group", group_spec, "cyclic:<k> or product:<k1,k2,...>")->required();
  construct->add_option("--n", n)->required();
  construct->add_option("--m", m);
  construct->add_option("--seed", seed);

  auto* lift = app.add_subcommand("lift", "emit the covering framework");
  lift->add_option("file", file)->required();
  lift->add_option("--seed", seed);

  auto* circuits = app.add_subcommand("circuits", "balanced and unbalanced circuits");
  circuits->add_option("file", file)->required();

  auto* probe = app.add_subcommand("probe", "odd-order rotation rank comparison (experimental)");
  probe->add_option("file", file)->required();
  probe->add_option("--seed", seed);
  probe->add_option("--tol", tol);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(file, seed, tol);
    if (blocks->parsed()) return cmd_blocks(file, seed, tol, j_spec);
    if (sparsity->parsed()) return cmd_sparsity(file, k, l, m, force_brute, opt_k->count() > 0);
    if (construct->parsed()) return cmd_construct(group_spec, n, m, seed);
    if (lift->parsed()) return cmd_lift(file, seed);
    if (circuits->parsed()) return cmd_circuits(file);
    if (probe->parsed()) return cmd_probe(file, seed, tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
