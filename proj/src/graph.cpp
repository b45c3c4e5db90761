#include "sirest/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sirest/csv.hpp"
#include "sirest/rng.hpp"

namespace sirest {

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= num_vertices() || v >= num_vertices())
    throw std::invalid_argument("add_edge: vertex id out of range");
  if (u == v) throw std::invalid_argument("add_edge: self-loop");
  if (has_edge(u, v)) throw std::invalid_argument("add_edge: duplicate edge");
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  ++num_edges_;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  Vertex other = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::find(a.begin(), a.end(), other) != a.end();
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Vertex u = 0; u < num_vertices(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.push_back({u, v});
  std::sort(out.begin(), out.end());
  return out;
}

bool Graph::is_connected() const {
  if (num_vertices() == 0) return true;
  std::vector<char> seen(num_vertices(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj_[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == num_vertices();
}

std::optional<std::size_t> Graph::regular_degree() const {
  if (num_vertices() == 0) return std::nullopt;
  std::size_t d = degree(0);
  for (Vertex v = 1; v < num_vertices(); ++v)
    if (degree(v) != d) return std::nullopt;
  return d;
}

SubgraphView::SubgraphView(const Graph& parent, std::vector<Vertex> vertices)
    : parent_(&parent), vertices_(std::move(vertices)), member_(parent.num_vertices(), 0) {
  std::sort(vertices_.begin(), vertices_.end());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    Vertex v = vertices_[i];
    if (v >= parent.num_vertices())
      throw std::invalid_argument("SubgraphView: vertex id out of range");
    if (i > 0 && vertices_[i - 1] == v)
      throw std::invalid_argument("SubgraphView: duplicate vertex");
    member_[v] = 1;
  }
  std::size_t deg_sum = 0;
  for (Vertex v : vertices_)
    for_each_neighbor(v, [&](Vertex) { ++deg_sum; });
  num_edges_ = deg_sum / 2;
}

SubgraphView SubgraphView::whole(const Graph& parent) {
  std::vector<Vertex> all(parent.num_vertices());
  std::iota(all.begin(), all.end(), 0);
  return SubgraphView(parent, std::move(all));
}

Graph random_regular(Vertex n, Vertex d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_regular: d must be >= 1");
  if (d >= n) throw std::invalid_argument("random_regular: d must be < n");
  if ((static_cast<std::uint64_t>(n) * d) % 2 != 0)
    throw std::invalid_argument("random_regular: n*d must be even");

  Rng rng(seed);
  const int kMaxRetries = 1000;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<Vertex> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (Vertex v = 0; v < n; ++v)
      for (Vertex k = 0; k < d; ++k) stubs.push_back(v);
    for (std::size_t i = stubs.size() - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.below(i + 1)]);

    Graph g(n);
    bool ok = true;
    std::set<std::pair<Vertex, Vertex>> used;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      Vertex a = stubs[i], b = stubs[i + 1];
      if (a == b) {
        ok = false;
        break;
      }
      auto key = std::minmax(a, b);
      if (!used.insert(key).second) {
        ok = false;
        break;
      }
      g.add_edge(a, b);
    }
    if (ok && g.is_connected()) return g;
  }
  throw std::runtime_error("random_regular: retry cap exhausted (infeasible or unlucky degree sequence)");
}

SubgraphView ball(const Graph& g, std::span<const Vertex> centers, std::uint32_t radius) {
  for (Vertex c : centers)
    if (c >= g.num_vertices()) throw std::invalid_argument("ball: center out of range");
  if (radius == kInfiniteRadius) return SubgraphView::whole(g);

  constexpr std::uint32_t kUnseen = 0xFFFFFFFFu;
  std::vector<std::uint32_t> dist(g.num_vertices(), kUnseen);
  std::vector<Vertex> order;
  order.reserve(centers.size());
  std::queue<Vertex> q;
  for (Vertex c : centers)
    if (dist[c] == kUnseen) {
      dist[c] = 0;
      q.push(c);
      order.push_back(c);
    }
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    if (dist[v] == radius) continue;
    for (Vertex w : g.neighbors(v))
      if (dist[w] == kUnseen) {
        dist[w] = dist[v] + 1;
        q.push(w);
        order.push_back(w);
      }
  }
  return SubgraphView(g, std::move(order));
}

namespace {

// Iterative low-link DFS; recursion would overflow on long path-like balls.
void bridge_dfs(const SubgraphView& view, Vertex root,
                std::vector<std::uint32_t>& disc, std::vector<std::uint32_t>& low,
                std::uint32_t& tick, std::vector<Edge>& out) {
  constexpr std::uint32_t kUnvisited = 0xFFFFFFFFu;
  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
  };
  std::vector<Frame> stack;
  stack.push_back({root, root, 0});
  disc[root] = low[root] = tick++;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& nbrs = view.parent().neighbors(f.v);
    bool descended = false;
    while (f.next < nbrs.size()) {
      Vertex w = nbrs[f.next++];
      if (!view.contains(w)) continue;
      if (disc[w] == kUnvisited) {
        disc[w] = low[w] = tick++;
        stack.push_back({w, f.v, 0});
        descended = true;
        break;
      }
      if (w != f.parent) low[f.v] = std::min(low[f.v], disc[w]);
    }
    if (descended) continue;
    Vertex v = f.v, parent = f.parent;
    stack.pop_back();
    if (!stack.empty()) {
      low[parent] = std::min(low[parent], low[v]);
      if (low[v] > disc[parent]) out.push_back(make_edge(parent, v));
    }
  }
}

}  // namespace

std::vector<Edge> bridges(const SubgraphView& view) {
  constexpr std::uint32_t kUnvisited = 0xFFFFFFFFu;
  std::vector<std::uint32_t> disc(view.parent().num_vertices(), kUnvisited);
  std::vector<std::uint32_t> low(view.parent().num_vertices(), 0);
  std::uint32_t tick = 0;
  std::vector<Edge> out;
  for (Vertex v : view.vertices())
    if (disc[v] == kUnvisited) bridge_dfs(view, v, disc, low, tick, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> bridges(const Graph& g) { return bridges(SubgraphView::whole(g)); }

bool is_tree(const SubgraphView& view) {
  if (view.num_vertices() == 0) return false;
  if (view.num_edges() != view.num_vertices() - 1) return false;
  std::vector<Vertex> stack{view.vertices().front()};
  std::vector<char> seen(view.parent().num_vertices(), 0);
  seen[stack.front()] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    view.for_each_neighbor(v, [&](Vertex w) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    });
  }
  return count == view.num_vertices();
}

double locally_tree_like_fraction(const Graph& g, std::uint32_t radius) {
  if (g.num_vertices() == 0) return 1.0;
  std::size_t tree_count = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    Vertex center[1] = {v};
    if (is_tree(ball(g, center, radius))) ++tree_count;
  }
  return static_cast<double>(tree_count) / g.num_vertices();
}

std::size_t boundary_count(const Graph& g, std::span<const Vertex> u_set) {
  auto d = g.regular_degree();
  if (!d) throw std::invalid_argument("boundary_count: graph is not regular");
  SubgraphView view(g, std::vector<Vertex>(u_set.begin(), u_set.end()));
  if (!is_tree(view))
    throw std::domain_error("boundary_count: u_set does not induce a tree");

  std::size_t count = 0;
  for (Vertex v : view.vertices()) {
    bool outside = false;
    for (Vertex w : g.neighbors(v))
      if (!view.contains(w)) {
        outside = true;
        break;
      }
    if (outside) ++count;
  }
  // (1 - 2/d)|U| floor, checked in exact integer arithmetic.
  if (count * *d + 2 * view.num_vertices() < *d * view.num_vertices())
    throw std::logic_error("boundary_count: boundary floor violated");
  return count;
}

Graph parse_edge_list(std::istream& in) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  Vertex max_id = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (auto pos = sv.find('#'); pos != std::string_view::npos) sv = trim(sv.substr(0, pos));
    if (sv.empty()) continue;
    std::istringstream ls{std::string(sv)};
    long long a = -1, b = -1;
    if (!(ls >> a >> b) || a < 0 || b < 0)
      throw std::runtime_error("edge list line " + std::to_string(lineno) + ": expected 'u v'");
    std::string extra;
    if (ls >> extra)
      throw std::runtime_error("edge list line " + std::to_string(lineno) + ": trailing tokens");
    pairs.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    max_id = std::max({max_id, pairs.back().first, pairs.back().second});
  }
  Graph g(pairs.empty() ? 0 : max_id + 1);
  for (auto [u, v] : pairs) g.add_edge(u, v);  // add_edge rejects loops/dups
  return g;
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  return parse_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace sirest
