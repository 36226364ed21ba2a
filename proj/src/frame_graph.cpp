#include "frameq/frame_graph.hpp"

#include <algorithm>
#include <bit>

namespace frameq {

namespace {
constexpr int kWordBits = 64;

int word_count(int n) { return (n + kWordBits - 1) / kWordBits; }

void set_bit(std::vector<std::uint64_t>& row, int i) {
  row[i / kWordBits] |= std::uint64_t(1) << (i % kWordBits);
}

bool test_bit(const std::vector<std::uint64_t>& row, int i) {
  return (row[i / kWordBits] >> (i % kWordBits)) & 1u;
}

// Calls fn(i) for each set bit, in increasing order.
template <typename Fn>
void for_each_bit(const std::vector<std::uint64_t>& row, Fn fn) {
  for (std::size_t w = 0; w < row.size(); ++w) {
    std::uint64_t bits = row[w];
    while (bits) {
      const int i = int(w) * kWordBits + std::countr_zero(bits);
      fn(i);
      bits &= bits - 1;
    }
  }
}
}  // namespace

FrameGraph::FrameGraph(int n) : n_(n) {
  require(n >= 1, Errc::BadArgument, "graph needs at least one vertex");
  adj_.assign(n, std::vector<std::uint64_t>(word_count(n), 0));
}

void FrameGraph::add_edge(int j, int k) {
  require(j >= 0 && j < n_ && k >= 0 && k < n_, Errc::IndexOutOfRange, "edge endpoint out of range");
  require(j != k, Errc::BadArgument, "loops are not allowed");
  if (has_edge(j, k)) return;
  set_bit(adj_[j], k);
  set_bit(adj_[k], j);
  ++edge_count_;
}

bool FrameGraph::has_edge(int j, int k) const {
  if (j < 0 || j >= n_ || k < 0 || k >= n_ || j == k) return false;
  return test_bit(adj_[j], k);
}

int FrameGraph::degree(int v) const {
  int d = 0;
  for (std::uint64_t w : adj_[v]) d += std::popcount(w);
  return d;
}

std::vector<int> FrameGraph::neighbors(int v) const {
  std::vector<int> out;
  out.reserve(degree(v));
  for_each_bit(adj_[v], [&](int i) { out.push_back(i); });
  return out;
}

std::vector<std::pair<int, int>> FrameGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int j = 0; j < n_; ++j)
    for_each_bit(adj_[j], [&](int k) {
      if (k > j) out.emplace_back(j, k);
    });
  return out;
}

int FrameGraph::edge_count() const { return edge_count_; }

int FrameGraph::component_count() const {
  std::vector<char> seen(n_, 0);
  std::vector<int> stack;
  int components = 0;
  for (int s = 0; s < n_; ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for_each_bit(adj_[v], [&](int u) {
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      });
    }
  }
  return components;
}

int FrameGraph::cyclomatic_number() const {
  return edge_count_ - n_ + component_count();
}

std::vector<std::uint64_t> FrameGraph::common_neighbors(int a, int b) const {
  std::vector<std::uint64_t> out(adj_[a].size());
  for (std::size_t w = 0; w < out.size(); ++w) out[w] = adj_[a][w] & adj_[b][w];
  return out;
}

bool SpanningForest::is_tree_edge(int j, int k) const {
  return parent[j] == k || parent[k] == j;
}

std::vector<int> SpanningForest::tree_path(int from, int to) const {
  std::vector<int> up_from;
  for (int v = from;; v = parent[v]) {
    up_from.push_back(v);
    if (parent[v] == v) break;
  }
  std::vector<char> on_from(parent.size(), 0);
  for (int v : up_from) on_from[v] = 1;

  std::vector<int> up_to;
  int meet = to;
  for (int v = to;; v = parent[v]) {
    if (on_from[v]) {
      meet = v;
      break;
    }
    up_to.push_back(v);
    require(parent[v] != v, Errc::BadArgument, "vertices lie in different trees");
  }

  std::vector<int> path;
  for (int v : up_from) {
    path.push_back(v);
    if (v == meet) break;
  }
  for (auto it = up_to.rbegin(); it != up_to.rend(); ++it) path.push_back(*it);
  return path;
}

SpanningForest spanning_forest(const FrameGraph& graph) {
  const int n = graph.size();
  SpanningForest forest;
  forest.parent.assign(n, -1);
  forest.preorder.reserve(n);

  // Iterative depth-first search matching the recursive visit order:
  // a vertex's unvisited neighbors are entered in increasing index order.
  std::vector<std::vector<int>> nbrs(n);
  std::vector<std::size_t> next(n, 0);
  for (int root = 0; root < n; ++root) {
    if (forest.parent[root] != -1) continue;
    forest.roots.push_back(root);
    forest.parent[root] = root;
    forest.preorder.push_back(root);
    nbrs[root] = graph.neighbors(root);
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int v = stack.back();
      bool advanced = false;
      while (next[v] < nbrs[v].size()) {
        const int u = nbrs[v][next[v]++];
        if (forest.parent[u] != -1) continue;
        forest.parent[u] = v;
        forest.preorder.push_back(u);
        forest.tree_edges.emplace_back(v, u);
        nbrs[u] = graph.neighbors(u);
        stack.push_back(u);
        advanced = true;
        break;
      }
      if (!advanced) stack.pop_back();
    }
  }
  return forest;
}

std::vector<int> canonical_cycle_form(const std::vector<int>& cycle) {
  const int len = int(cycle.size());
  const int pos = int(std::min_element(cycle.begin(), cycle.end()) - cycle.begin());
  const int next = cycle[(pos + 1) % len];
  const int prev = cycle[(pos - 1 + len) % len];
  std::vector<int> out(len);
  if (next <= prev) {
    for (int i = 0; i < len; ++i) out[i] = cycle[(pos + i) % len];
  } else {
    for (int i = 0; i < len; ++i) out[i] = cycle[(pos - i + len) % len];
  }
  return out;
}

CycleBasis fundamental_cycles(const FrameGraph& graph, const SpanningForest& forest) {
  CycleBasis basis;
  for (const auto& [u, w] : graph.edges()) {
    if (forest.is_tree_edge(u, w)) continue;
    Cycle cycle;
    cycle.vertices = canonical_cycle_form(forest.tree_path(u, w));
    basis.cycles.push_back(std::move(cycle));
    basis.chords.emplace_back(std::make_pair(u, w));
  }
  return basis;
}

std::vector<std::array<int, 3>> triangles(const FrameGraph& graph) {
  std::vector<std::array<int, 3>> out;
  for (const auto& [a, b] : graph.edges()) {
    const auto common = graph.common_neighbors(a, b);
    for (std::size_t w = 0; w < common.size(); ++w) {
      std::uint64_t bits = common[w];
      while (bits) {
        const int c = int(w) * kWordBits + std::countr_zero(bits);
        bits &= bits - 1;
        if (c > b) out.push_back({a, b, c});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<CycleBasis> triangle_basis(const FrameGraph& graph) {
  const int rank_needed = graph.cyclomatic_number();
  if (rank_needed == 0) return CycleBasis{};

  // Coordinates for the cycle space: the chords of the canonical forest.
  // A cycle's coordinate vector marks the chords it uses; fundamental
  // cycles are the unit vectors, so independence is plain GF(2) rank.
  const SpanningForest forest = spanning_forest(graph);
  std::vector<std::pair<int, int>> chords;
  for (const auto& e : graph.edges())
    if (!forest.is_tree_edge(e.first, e.second)) chords.push_back(e);

  auto chord_index = [&](int a, int b) -> int {
    const auto key = std::make_pair(std::min(a, b), std::max(a, b));
    const auto it = std::lower_bound(chords.begin(), chords.end(), key);
    if (it != chords.end() && *it == key) return int(it - chords.begin());
    return -1;
  };

  const int words = word_count(rank_needed);
  std::vector<std::vector<std::uint64_t>> echelon;  // reduced rows
  std::vector<int> pivots;
  CycleBasis basis;
  for (const auto& tri : triangles(graph)) {
    std::vector<std::uint64_t> vec(words, 0);
    for (int e = 0; e < 3; ++e) {
      const int idx = chord_index(tri[e], tri[(e + 1) % 3]);
      if (idx >= 0) set_bit(vec, idx);
    }
    for (std::size_t r = 0; r < echelon.size(); ++r)
      if (test_bit(vec, pivots[r]))
        for (int w = 0; w < words; ++w) vec[w] ^= echelon[r][w];
    int pivot = -1;
    for (int w = 0; w < words && pivot < 0; ++w)
      if (vec[w]) pivot = w * kWordBits + std::countr_zero(vec[w]);
    if (pivot < 0) continue;
    echelon.push_back(std::move(vec));
    pivots.push_back(pivot);
    basis.cycles.push_back(Cycle{{tri[0], tri[1], tri[2]}});
    basis.chords.emplace_back(std::nullopt);
    if (int(basis.cycles.size()) == rank_needed) return basis;
  }
  return std::nullopt;
}

bool is_chordal(const FrameGraph& graph) {
  const int n = graph.size();
  std::vector<int> pos(n, -1);   // maximum-cardinality-search selection index
  std::vector<int> order(n, -1);
  std::vector<int> weight(n, 0);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (pos[v] < 0 && (best < 0 || weight[v] > weight[best])) best = v;
    pos[best] = step;
    order[step] = best;
    for (int u : graph.neighbors(best))
      if (pos[u] < 0) ++weight[u];
  }

  // Reverse of the selection order is a perfect elimination ordering iff
  // the graph is chordal: earlier-selected neighbors of v, minus the most
  // recently selected one m, must all be adjacent to m.
  for (int v = 0; v < n; ++v) {
    int m = -1;
    for (int u : graph.neighbors(v))
      if (pos[u] < pos[v] && (m < 0 || pos[u] > pos[m])) m = u;
    if (m < 0) continue;
    for (int u : graph.neighbors(v))
      if (pos[u] < pos[v] && u != m && !graph.has_edge(u, m)) return false;
  }
  return true;
}

FrameGraph build_frame_graph(const GramMatrix& g, const Tolerance& tol) {
  const int n = int(g.size());
  FrameGraph graph(n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (std::abs(g.entry(j, k)) > tol.abs_zero) graph.add_edge(j, k);
  return graph;
}

}  // namespace frameq
