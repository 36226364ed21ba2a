#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "frameq/types.hpp"

namespace frameq {

// Undirected simple graph on vertices 0..n-1 with bitset adjacency rows.
class FrameGraph {
 public:
  explicit FrameGraph(int n);

  int size() const { return n_; }
  void add_edge(int j, int k);
  bool has_edge(int j, int k) const;
  int degree(int v) const;
  std::vector<int> neighbors(int v) const;          // increasing order
  std::vector<std::pair<int, int>> edges() const;   // (j, k) with j < k, lexicographic
  int edge_count() const;
  int component_count() const;
  // edge_count - n + component_count: the dimension of the cycle space.
  int cyclomatic_number() const;

  // Vertices adjacent to both a and b, as a bitset row.
  std::vector<std::uint64_t> common_neighbors(int a, int b) const;
  const std::vector<std::uint64_t>& row(int v) const { return adj_[v]; }

 private:
  int n_;
  int edge_count_ = 0;
  std::vector<std::vector<std::uint64_t>> adj_;
};

// Rooted spanning forest.  parent[v] == v exactly for roots; preorder lists
// vertices so that every parent appears before its children.
struct SpanningForest {
  std::vector<int> parent;
  std::vector<int> roots;
  std::vector<std::pair<int, int>> tree_edges;  // (parent, child) in discovery order
  std::vector<int> preorder;

  bool is_tree_edge(int j, int k) const;
  // Vertex path between two vertices of the same tree (inclusive).
  std::vector<int> tree_path(int from, int to) const;
};

// Closed walk visiting distinct vertices; edges are consecutive pairs plus
// the pair (back(), front()).
struct Cycle {
  std::vector<int> vertices;
};

// Independent cycles.  When derived from a spanning forest, chords[i] is the
// unique non-forest edge of cycles[i]; a triangle basis carries no chords.
struct CycleBasis {
  std::vector<Cycle> cycles;
  std::vector<std::optional<std::pair<int, int>>> chords;
};

// Graph with an edge wherever |<v_j, v_k>| exceeds abs_zero, j != k.
FrameGraph build_frame_graph(const GramMatrix& g, const Tolerance& tol = {});

// Canonical spanning forest: depth-first from the lowest-index vertex of
// each component, neighbors explored in increasing index order.  Every
// operation that walks the graph uses this forest, so results are
// reproducible across runs.
SpanningForest spanning_forest(const FrameGraph& graph);

// Normal form of a cyclic vertex list: rotated so the least vertex comes
// first, directed toward the smaller of its two cycle-neighbors.  Two lists
// describe the same undirected cycle exactly when their forms are equal.
std::vector<int> canonical_cycle_form(const std::vector<int>& cycle);

// One cycle per non-forest edge, in lexicographic chord order; chords[i]
// records the non-forest edge {u, w} with u < w.  Vertex lists are in
// normal form, so the chord is generally an interior edge of the listing.
CycleBasis fundamental_cycles(const FrameGraph& graph, const SpanningForest& forest);

// All triangles (a, b, c) with a < b < c, lexicographic.
std::vector<std::array<int, 3>> triangles(const FrameGraph& graph);

// A maximal independent set of triangles, scanned in lexicographic order.
// Returns a basis of the cycle space when the triangles span it; empty
// optional otherwise.
std::optional<CycleBasis> triangle_basis(const FrameGraph& graph);

// Maximum-cardinality-search test for chordality (every cycle of length
// at least four has a chord).
bool is_chordal(const FrameGraph& graph);

}  // namespace frameq
