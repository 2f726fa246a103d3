#include "vpg/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "vpg/geom.hpp"  // VpgError

namespace vpg {

void Graph::add_vertex(const std::string& v) { vertices_.insert(v); }

void Graph::add_edge(const std::string& u, const std::string& v) {
  if (u == v) throw VpgError("GeometryFailure", "loop edge rejected: " + u);
  vertices_.insert(u);
  vertices_.insert(v);
  edges_.insert(u < v ? std::make_pair(u, v) : std::make_pair(v, u));
}

bool Graph::has_vertex(const std::string& v) const { return vertices_.count(v) > 0; }

bool Graph::has_edge(const std::string& u, const std::string& v) const {
  return edges_.count(u < v ? std::make_pair(u, v) : std::make_pair(v, u)) > 0;
}

std::size_t Graph::degree(const std::string& v) const {
  std::size_t d = 0;
  for (const auto& e : edges_) {
    if (e.first == v || e.second == v) ++d;
  }
  return d;
}

std::vector<std::string> Graph::neighbors(const std::string& v) const {
  std::vector<std::string> out;
  for (const auto& e : edges_) {
    if (e.first == v) out.push_back(e.second);
    else if (e.second == v) out.push_back(e.first);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Graph Graph::induced(const std::set<std::string>& keep) const {
  Graph g;
  for (const auto& v : vertices_) {
    if (keep.count(v)) g.add_vertex(v);
  }
  for (const auto& e : edges_) {
    if (keep.count(e.first) && keep.count(e.second)) g.add_edge(e.first, e.second);
  }
  return g;
}

Graph Graph::relabeled(const std::map<std::string, std::string>& m) const {
  auto ren = [&m](const std::string& v) {
    auto it = m.find(v);
    return it == m.end() ? v : it->second;
  };
  Graph g;
  for (const auto& v : vertices_) g.add_vertex(ren(v));
  for (const auto& e : edges_) g.add_edge(ren(e.first), ren(e.second));
  if (g.vertex_count() != vertex_count()) {
    throw VpgError("GeometryFailure", "relabeling collapses vertices");
  }
  return g;
}

Graph parse_edge_list(const std::string& text) {
  Graph g;
  std::istringstream all(text);
  std::string line;
  while (std::getline(all, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.size() == 1) {
      g.add_vertex(toks[0]);
      continue;
    }
    if (toks.size() % 2 != 0) {
      throw VpgError("GeometryFailure", "odd token count in edge-list line: " + line);
    }
    for (std::size_t i = 0; i + 1 < toks.size(); i += 2) g.add_edge(toks[i], toks[i + 1]);
  }
  return g;
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  std::set<std::string> seen;
  for (const auto& e : g.edges()) {
    os << e.first << " " << e.second << "\n";
    seen.insert(e.first);
    seen.insert(e.second);
  }
  for (const auto& v : g.vertices()) {
    if (!seen.count(v)) os << v << "\n";
  }
  return os.str();
}

Graph parse_graph6(const std::string& line) {
  std::string s = line;
  if (s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
  if (s.empty()) throw VpgError("GeometryFailure", "empty graph6 line");
  std::size_t pos = 0;
  int n = s[pos] - 63;
  ++pos;
  if (n < 0 || n > 62) throw VpgError("GeometryFailure", "graph6 order out of supported range");
  Graph g;
  auto name = [](int i) { return std::to_string(i); };
  for (int i = 0; i < n; ++i) g.add_vertex(name(i));
  int bits_needed = n * (n - 1) / 2;
  int bit = 0;
  unsigned cur = 0;
  int avail = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (avail == 0) {
        if (pos >= s.size()) throw VpgError("GeometryFailure", "graph6 line truncated");
        cur = static_cast<unsigned>(s[pos] - 63);
        if (cur > 63) throw VpgError("GeometryFailure", "graph6 bad byte");
        ++pos;
        avail = 6;
      }
      bool set = (cur >> (avail - 1)) & 1u;
      --avail;
      ++bit;
      if (set) g.add_edge(name(i), name(j));
    }
  }
  (void)bits_needed;
  return g;
}

std::string to_graph6(const Graph& g) {
  int n = static_cast<int>(g.vertex_count());
  if (n > 62) throw VpgError("GeometryFailure", "graph6 order out of supported range");
  std::vector<std::string> order(g.vertices().begin(), g.vertices().end());
  std::string s;
  s.push_back(static_cast<char>(n + 63));
  unsigned cur = 0;
  int used = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      cur = (cur << 1) | (g.has_edge(order[i], order[j]) ? 1u : 0u);
      ++used;
      if (used == 6) {
        s.push_back(static_cast<char>(cur + 63));
        cur = 0;
        used = 0;
      }
    }
  }
  if (used > 0) {
    cur <<= (6 - used);
    s.push_back(static_cast<char>(cur + 63));
  }
  return s;
}

Graph parse_graph_auto(const std::string& text) {
  // Trim whitespace; a single token whose characters are all >= '?' and that
  // does not look like an edge list is treated as graph6.
  std::istringstream all(text);
  std::vector<std::string> toks;
  std::string t;
  while (all >> t) toks.push_back(t);
  if (toks.size() == 1) {
    const std::string& s = toks[0];
    bool g6 = !s.empty();
    for (char c : s) {
      if (c < 63 || c > 126) g6 = false;
    }
    // A lone token could also be an isolated-vertex edge list; prefer graph6
    // when the first byte decodes to a plausible order.
    if (g6) {
      try {
        return parse_graph6(s);
      } catch (const VpgError&) {
        // fall through to edge list
      }
    }
  }
  return parse_edge_list(text);
}

std::vector<unsigned char> canonical_form(const Graph& g) {
  std::vector<std::string> order(g.vertices().begin(), g.vertices().end());
  std::size_t n = order.size();
  if (n > 9) throw VpgError("GeometryFailure", "canonical_form limited to small graphs");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<unsigned char> best;
  do {
    std::vector<unsigned char> bits;
    bits.reserve(n * (n - 1) / 2);
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        bits.push_back(g.has_edge(order[perm[i]], order[perm[j]]) ? 1 : 0);
      }
    }
    if (best.empty() || bits < best) best = bits;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (best.empty()) best.push_back(static_cast<unsigned char>(200 + n));  // distinguish tiny graphs
  return best;
}

bool graphs_isomorphic(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

Graph complete_graph(const std::vector<std::string>& verts) {
  Graph g;
  for (const auto& v : verts) g.add_vertex(v);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) g.add_edge(verts[i], verts[j]);
  }
  return g;
}

Graph complete_multipartite(const std::vector<std::vector<std::string>>& parts) {
  Graph g;
  for (const auto& p : parts) {
    for (const auto& v : p) g.add_vertex(v);
  }
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      for (const auto& u : parts[a]) {
        for (const auto& v : parts[b]) g.add_edge(u, v);
      }
    }
  }
  return g;
}

}  // namespace vpg
