#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vpg {

// Simple undirected graph with string vertex ids. Edges are stored as
// normalized (min,max) pairs; loops are rejected.
class Graph {
 public:
  Graph() = default;

  void add_vertex(const std::string& v);
  void add_edge(const std::string& u, const std::string& v);
  bool has_vertex(const std::string& v) const;
  bool has_edge(const std::string& u, const std::string& v) const;

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t degree(const std::string& v) const;

  const std::set<std::string>& vertices() const { return vertices_; }
  const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }
  std::vector<std::string> neighbors(const std::string& v) const;

  bool operator==(const Graph& o) const {
    return vertices_ == o.vertices_ && edges_ == o.edges_;
  }
  bool operator!=(const Graph& o) const { return !(*this == o); }

  Graph induced(const std::set<std::string>& keep) const;
  Graph relabeled(const std::map<std::string, std::string>& m) const;

 private:
  std::set<std::string> vertices_;
  std::set<std::pair<std::string, std::string>> edges_;
};

// Parses whitespace-separated edge list: tokens pair up into edges; a line
// containing a single token declares an isolated vertex.
Graph parse_edge_list(const std::string& text);
std::string to_edge_list(const Graph& g);

// graph6 (vertices named "0".."n-1"); supports n <= 62.
Graph parse_graph6(const std::string& line);
std::string to_graph6(const Graph& g);

// Autodetect: a single nonempty line without whitespace is treated as graph6.
Graph parse_graph_auto(const std::string& text);

// Brute-force isomorphism for small graphs (factorial in vertex count).
bool graphs_isomorphic(const Graph& a, const Graph& b);

// Canonical adjacency-bitmask form over all vertex permutations (small n only).
std::vector<unsigned char> canonical_form(const Graph& g);

// Complete graph / complete multipartite helpers used by generators and tests.
Graph complete_graph(const std::vector<std::string>& verts);
Graph complete_multipartite(const std::vector<std::vector<std::string>>& parts);

}  // namespace vpg
