#ifndef SIREST_GRAPH_HPP
#define SIREST_GRAPH_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sirest {

using Vertex = std::uint32_t;

// Undirected edge in canonical orientation (u < v).
struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Sentinel radius: the ball covers the whole graph.
inline constexpr std::uint32_t kInfiniteRadius = 0xFFFFFFFFu;

/// Undirected simple graph on vertices 0..n-1 with adjacency lists.
/// Immutable once built; concurrent readers are safe.
class Graph {
 public:
  Graph() = default;
  explicit Graph(Vertex n) : adj_(n) {}

  Vertex num_vertices() const { return static_cast<Vertex>(adj_.size()); }
  std::size_t num_edges() const { return num_edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }

  // Rejects out-of-range ids, self-loops and duplicate edges.
  void add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;

  std::vector<Edge> edges() const;  // canonical, sorted
  bool is_connected() const;
  // Degree d when the graph is d-regular and nonempty.
  std::optional<std::size_t> regular_degree() const;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t num_edges_ = 0;
};

/// Induced subgraph held as a reference to the parent plus a vertex subset.
class SubgraphView {
 public:
  SubgraphView(const Graph& parent, std::vector<Vertex> vertices);
  static SubgraphView whole(const Graph& parent);

  const Graph& parent() const { return *parent_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }  // ascending
  bool contains(Vertex v) const { return v < member_.size() && member_[v] != 0; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  template <typename F>
  void for_each_neighbor(Vertex v, F&& f) const {
    for (Vertex w : parent_->neighbors(v))
      if (contains(w)) f(w);
  }

 private:
  const Graph* parent_;
  std::vector<Vertex> vertices_;
  std::vector<char> member_;
  std::size_t num_edges_ = 0;
};

/// Uniform-ish random d-regular graph via stub pairing with rejection of
/// loops, multi-edges and disconnected outcomes. Throws after 1000 retries.
Graph random_regular(Vertex n, Vertex d, std::uint64_t seed);

/// Subgraph induced by vertices within hop distance `radius` of the center
/// set (multi-source BFS). kInfiniteRadius returns the whole graph.
SubgraphView ball(const Graph& g, std::span<const Vertex> centers, std::uint32_t radius);

/// Bridge edges (removal increases the number of connected components),
/// canonical and sorted. Single-pass iterative DFS low-link.
std::vector<Edge> bridges(const SubgraphView& view);
std::vector<Edge> bridges(const Graph& g);

bool is_tree(const SubgraphView& view);

/// Fraction of vertices whose radius-r ball induces a tree.
double locally_tree_like_fraction(const Graph& g, std::uint32_t radius);

/// Number of members of u_set with a neighbor outside u_set. Requires g
/// regular and u_set inducing a subtree; the count is checked against the
/// (1 - 2/d)|U| floor, which holds for every valid input.
std::size_t boundary_count(const Graph& g, std::span<const Vertex> u_set);

// Edge-list text format: one "u v" pair per line, 0-based decimal ids,
// '#' starts a comment. The loader validates simplicity.
Graph parse_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);

}  // namespace sirest

#endif  // SIREST_GRAPH_HPP
