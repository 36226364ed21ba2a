#include "frameq/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace frameq {

namespace {

void check_indices(const std::vector<int>& indices, int n) {
  require(!indices.empty(), Errc::BadArgument, "product needs at least one index");
  for (int j : indices)
    require(0 <= j && j < n, Errc::IndexOutOfRange,
            "product index " + std::to_string(j) + " out of range for n = " + std::to_string(n));
}

std::array<int, 3> rotation_least(std::array<int, 3> t) {
  const std::array<int, 3> r1{t[1], t[2], t[0]};
  const std::array<int, 3> r2{t[2], t[0], t[1]};
  return std::min({t, r1, r2});
}

}  // namespace

Cplx m_product(const GramMatrix& g, const std::vector<int>& indices) {
  check_indices(indices, int(g.size()));
  const int m = int(indices.size());
  Cplx out{1, 0};
  for (int i = 0; i < m; ++i) out *= g.inner(indices[i], indices[(i + 1) % m]);
  return out;
}

TripleProducts::TripleProducts(int n, std::map<std::array<int, 3>, Cplx> canonical)
    : n_(n), values_(std::move(canonical)) {}

Cplx TripleProducts::at(int j, int k, int l) const {
  check_indices({j, k, l}, n_);
  const auto fwd = rotation_least({j, k, l});
  if (const auto it = values_.find(fwd); it != values_.end()) return it->second;
  const auto rev = rotation_least({l, k, j});
  const auto it = values_.find(rev);
  require(it != values_.end(), Errc::BadArgument, "triple product table incomplete");
  return std::conj(it->second);
}

TripleProducts triple_products(const GramMatrix& g) {
  const int n = int(g.size());
  std::map<std::array<int, 3>, Cplx> vals;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        const std::array<int, 3> t{j, k, l};
        if (rotation_least(t) != t) continue;
        if (rotation_least({l, k, j}) < t) continue;  // reversal stored instead
        vals.emplace(t, g.inner(j, k) * g.inner(k, l) * g.inner(l, j));
      }
  return TripleProducts(n, std::move(vals));
}

RMat moduli_from_triples(const TripleProducts& t, const Tolerance& tol) {
  const int n = t.size();
  RMat grid = RMat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const Real cubed = t.at(j, j, j).real();
    if (cubed <= tol.abs_zero) {
      for (int k = 0; k < n; ++k)
        require(k == j || std::abs(t.at(j, j, k)) <= tol.abs_zero, Errc::ZeroVector,
                "vector " + std::to_string(j) +
                    " has zero norm but a nonzero product with vector " + std::to_string(k));
      grid(j, j) = 0;
    } else {
      grid(j, j) = std::cbrt(cubed);
    }
  }
  for (int j = 0; j < n; ++j) {
    if (grid(j, j) == Real(0)) continue;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      // T_jjk = ||v_j||^2 |<v_j, v_k>|^2, so divide by the norm and root.
      const Real sq = t.at(j, j, k).real() / grid(j, j);
      grid(j, k) = std::sqrt(std::max(Real(0), sq));
    }
  }
  return grid;
}

DeterminingSet determining_set(const GramMatrix& g, const Tolerance& tol) {
  const int n = int(g.size());
  DeterminingSet ds;
  ds.norms = g.entries().diagonal().real();
  ds.moduli = g.entries().cwiseAbs();
  ds.moduli.diagonal() = ds.norms;
  const FrameGraph graph = build_frame_graph(g, tol);
  const SpanningForest forest = spanning_forest(graph);
  ds.cycles = fundamental_cycles(graph, forest);
  ds.values.reserve(ds.cycles.cycles.size());
  for (const Cycle& c : ds.cycles.cycles) ds.values.push_back(m_product(g, c.vertices));
  return ds;
}

namespace detail {

Cplx derive_from_cycles(const RMat& moduli, const CycleBasis& basis,
                        const std::vector<Cplx>& values,
                        const std::vector<int>& target, const Tolerance& tol) {
  const int n = int(moduli.rows());
  check_indices(target, n);
  require(basis.cycles.size() == values.size() && basis.cycles.size() == basis.chords.size(),
          Errc::BadArgument, "cycle basis and value list sizes disagree");

  const int m = int(target.size());
  Cplx result{1, 0};

  // Directed traversal counts per undirected edge; first = low-to-high.
  std::map<std::pair<int, int>, std::pair<long, long>> walks;
  auto add_walk = [&](int x, int y, long count) {
    if (x < y)
      walks[{x, y}].first += count;
    else
      walks[{y, x}].second += count;
  };

  for (int i = 0; i < m; ++i) {
    const int x = target[i], y = target[(i + 1) % m];
    if (x == y) {
      result *= moduli(x, x);  // a held index contributes the norm
      continue;
    }
    if (moduli(x, y) <= tol.abs_zero) return {0, 0};  // walk crosses a zero entry
    add_walk(x, y, 1);
  }

  // Chord ownership: the one basis cycle allowed to use each chord edge.
  std::map<std::pair<int, int>, int> chord_owner;
  for (int i = 0; i < int(basis.chords.size()); ++i) {
    require(basis.chords[i].has_value(), Errc::BadArgument,
            "cycle basis must tag each cycle's chord");
    auto [u, w] = *basis.chords[i];
    chord_owner[{std::min(u, w), std::max(u, w)}] = i;
  }

  // Net coefficient of each basis cycle: the target's net traversal of its
  // chord, read in the cycle's own traversal direction.
  std::vector<long> coeff(basis.cycles.size(), 0);
  for (const auto& [edge, count] : walks) {
    const auto it = chord_owner.find(edge);
    if (it == chord_owner.end()) continue;
    const int i = it->second;
    const auto& verts = basis.cycles[i].vertices;
    long direction = 0;
    for (int p = 0; p < int(verts.size()); ++p) {
      const int x = verts[p], y = verts[(p + 1) % verts.size()];
      if (std::min(x, y) == edge.first && std::max(x, y) == edge.second) {
        direction = (x == edge.first) ? 1 : -1;
        break;
      }
    }
    require(direction != 0, Errc::BadArgument, "tagged chord missing from its cycle");
    coeff[i] = direction * (count.first - count.second);
  }

  // Subtract the basis combination; whatever walk imbalance remains must
  // pair up into |entry|^2 factors, or the target is out of span.
  for (int i = 0; i < int(basis.cycles.size()); ++i) {
    if (coeff[i] == 0) continue;
    const auto& verts = basis.cycles[i].vertices;
    for (int p = 0; p < int(verts.size()); ++p)
      add_walk(verts[p], verts[(p + 1) % verts.size()], -coeff[i]);
    if (coeff[i] < 0)
      require(std::abs(values[i]) > tol.abs_zero, Errc::DivisionByZero,
              "basis cycle value too small to divide by");
    Cplx power{1, 0};
    for (long r = 0; r < std::abs(coeff[i]); ++r) power *= values[i];
    result *= (coeff[i] > 0) ? power : Cplx{1, 0} / power;
  }

  for (const auto& [edge, count] : walks) {
    require(count.first == count.second, Errc::NotInSpan,
            "target walk is not spanned by the basis cycles (unbalanced edge " +
                std::to_string(edge.first) + "-" + std::to_string(edge.second) + ")");
    const long y = count.first;
    if (y == 0) continue;
    const Real sq = moduli(edge.first, edge.second) * moduli(edge.first, edge.second);
    if (y < 0)
      require(sq > tol.abs_zero, Errc::DivisionByZero,
              "shared-edge product too small to divide by");
    result *= std::pow(sq, Real(y));
  }
  return result;
}

}  // namespace detail

Cplx derive_product(const DeterminingSet& ds, const std::vector<int>& target,
                    const Tolerance& tol) {
  return detail::derive_from_cycles(ds.moduli, ds.cycles, ds.values, target, tol);
}

bool check_mubs(const std::vector<FrameSpec>& bases, const Tolerance& tol) {
  require(!bases.empty(), Errc::BadArgument, "need at least one basis");
  const Eigen::Index d = bases.front().dim();
  for (const FrameSpec& b : bases) {
    require(b.dim() == d, Errc::DimensionMismatch, "bases live in different dimensions");
    require(b.size() == d, Errc::DimensionMismatch,
            "each basis must have exactly dim vectors");
  }
  const Real thr = tol.match_threshold(1);
  for (const FrameSpec& b : bases) {
    const CMat g = b.matrix().adjoint() * b.matrix();
    if (((g - CMat::Identity(d, d)).cwiseAbs().maxCoeff()) > thr) return false;
  }
  for (std::size_t a = 0; a < bases.size(); ++a)
    for (std::size_t b = a + 1; b < bases.size(); ++b) {
      const CMat cross = bases[a].matrix().adjoint() * bases[b].matrix();
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k)
          if (std::abs(std::norm(cross(j, k)) - Real(1) / Real(d)) > thr) return false;
    }
  return true;
}

}  // namespace frameq
