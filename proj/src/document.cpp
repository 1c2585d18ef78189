#include "orbitrig/document.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>

#include "orbitrig/errors.hpp"

namespace orbitrig {

namespace {

// Line-oriented tokenizer with column tracking.
struct Cursor {
  const std::string& text;
  int line;
  size_t pos = 0;

  int column() const { return static_cast<int>(pos) + 1; }
  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_space();
    return pos >= text.size();
  }
  char peek() {
    skip_space();
    return pos < text.size() ? text[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(line, column(), msg); }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::string word() {
    skip_space();
    size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_' || text[pos] == '-')) {
      ++pos;
    }
    if (start == pos) fail("expected a word");
    return text.substr(start, pos - start);
  }
  int integer() {
    skip_space();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start])))) {
      fail("expected an integer");
    }
    return std::stoi(text.substr(start, pos - start));
  }
  double number() {
    skip_space();
    size_t start = pos;
    const char* begin = text.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos += static_cast<size_t>(end - begin);
    (void)start;
    return v;
  }
};

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  lines.push_back(current);
  return lines;
}

std::string strip_comment(const std::string& line) {
  size_t hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return c == ' ' || c == '\t'; });
}

std::vector<int> parse_int_list(Cursor& c) {
  std::vector<int> out;
  c.expect('[');
  if (!c.accept(']')) {
    out.push_back(c.integer());
    while (c.accept(',')) out.push_back(c.integer());
    c.expect(']');
  }
  return out;
}

RealMatrix parse_matrix(Cursor& c) {
  std::vector<std::vector<double>> rows;
  c.expect('[');
  do {
    std::vector<double> row;
    c.expect('[');
    row.push_back(c.number());
    while (c.accept(',')) row.push_back(c.number());
    c.expect(']');
    rows.push_back(std::move(row));
  } while (c.accept(','));
  c.expect(']');
  size_t width = rows[0].size();
  std::vector<double> data;
  for (const auto& row : rows) {
    if (row.size() != width) c.fail("ragged matrix rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return RealMatrix(static_cast<int>(rows.size()), static_cast<int>(width), std::move(data));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Document parse_document(const std::string& text) {
  Document doc;
  bool seen_group = false, seen_vertices = false, seen_edges = false;
  std::vector<std::string> lines = split_lines(text);

  size_t i = 0;
  auto next_content_line = [&](int* line_no) -> std::optional<std::string> {
    while (i < lines.size()) {
      std::string body = strip_comment(lines[i]);
      int no = static_cast<int>(i) + 1;
      ++i;
      if (blank(body)) continue;
      *line_no = no;
      return body;
    }
    return std::nullopt;
  };

  int line_no = 0;
  while (auto body = next_content_line(&line_no)) {
    Cursor c{*body, line_no};
    std::string section = c.word();

    if (section == "group") {
      if (seen_group) c.fail("duplicate group section");
      seen_group = true;
      std::string kind = c.word();
      if (kind == "cyclic") {
        doc.group_factors = {c.integer()};
      } else if (kind == "product") {
        while (!c.done()) doc.group_factors.push_back(c.integer());
        if (doc.group_factors.empty()) c.fail("product group needs at least one factor");
      } else if (kind == "trivial") {
        doc.group_factors = {};
      } else {
        c.fail("unknown group kind '" + kind + "'");
      }
      if (!c.done()) c.fail("trailing input after group");
    } else if (section == "tau") {
      if (doc.tau_kind) c.fail("duplicate tau section");
      std::string kind = c.word();
      if (kind == "matrix") {
        doc.tau_kind = kind;
        while (!c.done()) doc.tau_matrices.push_back(parse_matrix(c));
        if (doc.tau_matrices.empty()) c.fail("tau matrix needs at least one matrix");
      } else if (kind == "reflection" || kind == "rotation" || kind == "c2v") {
        doc.tau_kind = kind;
        if (!c.done()) c.fail("trailing input after tau");
      } else {
        c.fail("unknown tau kind '" + kind + "'");
      }
    } else if (section == "vertices") {
      if (seen_vertices) c.fail("duplicate vertices section");
      seen_vertices = true;
      while (!c.done()) doc.vertices.push_back(c.integer());
    } else if (section == "edges") {
      if (seen_edges) c.fail("duplicate edges section");
      seen_edges = true;
      if (!c.done()) c.fail("edges section starts on its own line");
      while (true) {
        auto edge_line = next_content_line(&line_no);
        if (!edge_line) throw ParseError(line_no, 1, "edges section not closed with 'end'");
        Cursor ec{*edge_line, line_no};
        if (ec.peek() == 'e') {
          if (ec.word() != "end") ec.fail("expected an edge or 'end'");
          if (!ec.done()) ec.fail("trailing input after end");
          break;
        }
        ec.expect('[');
        int tail = ec.integer();
        ec.expect(',');
        int head = ec.integer();
        ec.expect(',');
        std::vector<int> gain = parse_int_list(ec);
        ec.expect(']');
        if (!ec.done()) ec.fail("trailing input after edge");
        doc.edges.emplace_back(tail, head, std::move(gain));
      }
    } else if (section == "placement") {
      if (doc.placement) c.fail("duplicate placement section");
      if (!c.done()) c.fail("placement section starts on its own line");
      doc.placement.emplace();
      while (true) {
        auto row = next_content_line(&line_no);
        if (!row) throw ParseError(line_no, 1, "placement section not closed with 'end'");
        Cursor rc{*row, line_no};
        if (rc.peek() == 'e') {
          if (rc.word() != "end") rc.fail("expected a placement row or 'end'");
          break;
        }
        int v = rc.integer();
        RVec coords;
        while (!rc.done()) coords.push_back(rc.number());
        if (coords.empty()) rc.fail("placement row needs coordinates");
        doc.placement->emplace_back(v, std::move(coords));
      }
    } else if (section == "params") {
      if (doc.params) c.fail("duplicate params section");
      if (!c.done()) c.fail("params section starts on its own line");
      std::map<std::string, int> kv;
      while (true) {
        auto row = next_content_line(&line_no);
        if (!row) throw ParseError(line_no, 1, "params section not closed with 'end'");
        Cursor rc{*row, line_no};
        std::string key = rc.word();
        if (key == "end") break;
        if (key != "k" && key != "l" && key != "m") rc.fail("unknown params key '" + key + "'");
        if (kv.count(key)) rc.fail("duplicate params key '" + key + "'");
        kv[key] = rc.integer();
        if (!rc.done()) rc.fail("trailing input after params value");
      }
      if (!kv.count("k") || !kv.count("l") || !kv.count("m")) {
        throw ParseError(line_no, 1, "params section requires k, l and m");
      }
      doc.params = std::make_tuple(kv["k"], kv["l"], kv["m"]);
    } else {
      c.fail("unknown section '" + section + "'");
    }
  }

  if (!seen_group) throw ParseError(static_cast<int>(lines.size()), 1, "missing group section");
  if (!seen_vertices) throw ParseError(static_cast<int>(lines.size()), 1, "missing vertices section");
  return doc;
}

std::string serialize_document(const Document& doc) {
  std::ostringstream out;
  if (doc.group_factors.empty()) {
    out << "group trivial\n";
  } else if (doc.group_factors.size() == 1) {
    out << "group cyclic " << doc.group_factors[0] << "\n";
  } else {
    out << "group product";
    for (int k : doc.group_factors) out << " " << k;
    out << "\n";
  }
  if (doc.tau_kind) {
    out << "tau " << *doc.tau_kind;
    if (*doc.tau_kind == "matrix") {
      for (const RealMatrix& m : doc.tau_matrices) {
        out << " [";
        for (int r = 0; r < m.rows(); ++r) {
          if (r) out << ",";
          out << "[";
          for (int c = 0; c < m.cols(); ++c) {
            if (c) out << ",";
            out << format_double(m.at(r, c));
          }
          out << "]";
        }
        out << "]";
      }
    }
    out << "\n";
  }
  out << "vertices";
  for (int v : doc.vertices) out << " " << v;
  out << "\n";
  out << "edges\n";
  for (const auto& [tail, head, gain] : doc.edges) {
    out << "[" << tail << ", " << head << ", [";
    for (size_t t = 0; t < gain.size(); ++t) {
      if (t) out << ",";
      out << gain[t];
    }
    out << "]]\n";
  }
  out << "end\n";
  if (doc.placement) {
    out << "placement\n";
    for (const auto& [v, coords] : *doc.placement) {
      out << v;
      for (double x : coords) out << " " << format_double(x);
      out << "\n";
    }
    out << "end\n";
  }
  if (doc.params) {
    auto [k, l, m] = *doc.params;
    out << "params\nk " << k << "\nl " << l << "\nm " << m << "\nend\n";
  }
  return out.str();
}

LoadedModel build_model(const Document& doc) {
  AbelianGroup group(doc.group_factors);
  std::vector<std::tuple<int, int, GroupElement>> edges;
  for (const auto& [tail, head, gain] : doc.edges) {
    edges.emplace_back(tail, head, group.make(gain));
  }
  GainGraph graph(group, doc.vertices, std::move(edges));

  std::optional<OrthogonalRep> tau;
  if (doc.tau_kind) {
    if (*doc.tau_kind == "matrix") {
      int dim = doc.tau_matrices.front().rows();
      tau.emplace(group, dim, doc.tau_matrices);
    } else {
      tau = named_rep(group, *doc.tau_kind);
    }
  }

  std::optional<QuotientPlacement> placement;
  if (doc.placement) {
    if (!tau) throw ValidationError("placement requires a tau section");
    QuotientPlacement q;
    q.dim = tau->dim();
    q.coords.resize(graph.vertex_count());
    std::vector<bool> seen(graph.vertex_count(), false);
    for (const auto& [v, coords] : *doc.placement) {
      int idx = graph.vertex_index(v);  // throws on unknown vertex
      if (seen[idx]) throw ValidationError("vertex " + std::to_string(v) + " placed twice");
      if (static_cast<int>(coords.size()) != q.dim) {
        throw ValidationError("placement of vertex " + std::to_string(v) +
                              " has wrong dimension");
      }
      seen[idx] = true;
      q.coords[idx] = coords;
    }
    for (int i = 0; i < graph.vertex_count(); ++i) {
      if (!seen[i]) {
        throw ValidationError("vertex " + std::to_string(graph.vertices()[i]) + " has no placement");
      }
    }
    placement = std::move(q);
  }

  std::optional<SparsityParams> params;
  if (doc.params) {
    auto [k, l, m] = *doc.params;
    params = SparsityParams(k, l, m);
  }
  return LoadedModel{std::move(graph), std::move(tau), std::move(placement), std::move(params)};
}

LoadedModel parse_model(const std::string& text) { return build_model(parse_document(text)); }

}  // namespace orbitrig
