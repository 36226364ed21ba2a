#include "frameq/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "frameq/frame_core.hpp"

namespace frameq {

namespace {

Real joint_scale(const GramMatrix& g1, const GramMatrix& g2) {
  return std::max(g1.entries().cwiseAbs().maxCoeff(), g2.entries().cwiseAbs().maxCoeff());
}

Cplx unit(Cplx z) {
  const Real a = std::abs(z);
  return a > 0 ? z / a : Cplx{1, 0};
}

}  // namespace

bool unitary_equiv(const GramMatrix& g1, const GramMatrix& g2, const Tolerance& tol) {
  require(g1.size() == g2.size(), Errc::SizeMismatch, "Gram matrices differ in size");
  const Real thr = tol.match_threshold(joint_scale(g1, g2));
  return (g1.entries() - g2.entries()).cwiseAbs().maxCoeff() <= thr;
}

Verdict projective_equiv(const GramMatrix& g1, const GramMatrix& g2, const Tolerance& tol) {
  require(g1.size() == g2.size(), Errc::SizeMismatch, "Gram matrices differ in size");
  const int n = int(g1.size());
  const Real thr = tol.match_threshold(joint_scale(g1, g2));

  Verdict v;
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k)
      if (std::abs(std::abs(g1.entry(j, k)) - std::abs(g2.entry(j, k))) > thr) {
        v.witness_entry = {j, k};
        return v;
      }

  const FrameGraph graph = build_frame_graph(g1, tol);
  const SpanningForest forest = spanning_forest(graph);

  CVec c = CVec::Ones(n);
  for (const auto& [p, q] : forest.tree_edges) {
    const Cplx num = g2.entries()(p, q), den = g1.entries()(p, q);
    c[q] = (std::abs(num) > 0 && std::abs(den) > 0) ? unit(c[p] * num / den) : c[p];
  }

  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      if (!graph.has_edge(j, k)) continue;  // moduli both vanish; nothing to match
      if (std::abs(std::conj(c[j]) * c[k] * g1.entries()(j, k) - g2.entries()(j, k)) <= thr)
        continue;
      // The obstruction is independent of the free tree phases, so it sits
      // on a chord; report that chord's fundamental cycle.
      const CycleBasis basis = fundamental_cycles(graph, forest);
      for (std::size_t i = 0; i < basis.chords.size(); ++i)
        if (basis.chords[i] && *basis.chords[i] == std::make_pair(j, k)) {
          v.witness_cycle = basis.cycles[i].vertices;
          return v;
        }
      v.witness_entry = {j, k};
      return v;
    }

  v.equivalent = true;
  v.phases = c;
  return v;
}

CanonicalGram canonical_gram(const GramMatrix& g, const Tolerance& tol) {
  const int n = int(g.size());
  const FrameGraph graph = build_frame_graph(g, tol);
  SpanningForest forest = spanning_forest(graph);
  CVec c = CVec::Ones(n);
  for (const auto& [p, q] : forest.tree_edges) {
    // conj(c_p) c_q entry(p, q) should land on the nonnegative real axis.
    const Cplx e = g.entries()(p, q);
    c[q] = unit(c[p] * std::abs(e) / e);
  }
  return CanonicalGram{apply_gauge(g, PhaseVector(c, tol)), std::move(forest)};
}

ReconstructionResult reconstruct_from_products(
    const DeterminingSet& products,
    const std::map<std::pair<int, int>, Cplx>& free_phases, const Tolerance& tol) {
  const int n = products.size();
  require(products.moduli.rows() == n && products.moduli.cols() == n, Errc::SizeMismatch,
          "moduli grid does not match the norm count");
  require(products.cycles.cycles.size() == products.values.size(), Errc::SizeMismatch,
          "cycle list and value list differ in length");
  const Real scale = std::max(products.moduli.maxCoeff(), Real(0));
  const Real thr = tol.match_threshold(scale);

  FrameGraph graph(n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      require(products.moduli(j, k) >= -thr, Errc::BadArgument, "moduli must be nonnegative");
      if (products.moduli(j, k) > tol.abs_zero) graph.add_edge(j, k);
    }
  const SpanningForest forest = spanning_forest(graph);
  const CycleBasis canonical = fundamental_cycles(graph, forest);

  // Index the provided cycle products by canonical vertex list, conjugating
  // values supplied against the canonical orientation.
  std::map<std::vector<int>, Cplx> given;
  for (std::size_t i = 0; i < products.cycles.cycles.size(); ++i) {
    const std::vector<int>& verts = products.cycles.cycles[i].vertices;
    require(verts.size() >= 3, Errc::BadArgument, "cycle products need at least three indices");
    std::vector<int> form = canonical_cycle_form(verts);
    const int len = int(verts.size());
    const int at = int(std::min_element(verts.begin(), verts.end()) - verts.begin());
    bool forward = true;
    for (int r = 0; r < len; ++r)
      if (verts[(at + r) % len] != form[r]) {
        forward = false;
        break;
      }
    given[std::move(form)] = forward ? products.values[i] : std::conj(products.values[i]);
  }

  CMat entries = CMat::Zero(n, n);
  for (int j = 0; j < n; ++j) entries(j, j) = products.norms[j];

  auto set_inner = [&](int a, int b, Cplx value) {
    entries(b, a) = value;  // <v_a, v_b> lives at (b, a)
    entries(a, b) = std::conj(value);
  };

  for (const auto& [key, phase] : free_phases) {
    require(key.first < key.second, Errc::BadArgument, "free phase keys must have u < w");
    require(forest.is_tree_edge(key.first, key.second), Errc::BadArgument,
            "free phase on a non-forest edge " + std::to_string(key.first) + "-" +
                std::to_string(key.second));
    require(std::abs(std::abs(phase) - Real(1)) <= tol.match_threshold(1), Errc::NotUnimodular,
            "free phases must have modulus one");
  }
  for (const auto& [p, q] : forest.tree_edges) {
    const int u = std::min(p, q), w = std::max(p, q);
    const auto it = free_phases.find({u, w});
    const Cplx phase = it == free_phases.end() ? Cplx{1, 0} : unit(it->second);
    set_inner(u, w, products.moduli(u, w) * phase);
  }

  for (std::size_t i = 0; i < canonical.cycles.size(); ++i) {
    const std::vector<int>& verts = canonical.cycles[i].vertices;
    const auto it = given.find(verts);
    if (it == given.end()) {
      std::string name;
      for (int x : verts) name += (name.empty() ? "(" : ", ") + std::to_string(x);
      fail(Errc::MissingCycleProduct, "no product given for fundamental cycle " + name + ")");
    }
    const auto chord = *canonical.chords[i];
    Cplx known{1, 0};
    int cx = -1, cy = -1;
    for (int r = 0; r < int(verts.size()); ++r) {
      const int x = verts[r], y = verts[(r + 1) % verts.size()];
      if (std::minmax(x, y) == std::minmax(chord.first, chord.second)) {
        cx = x;
        cy = y;
      } else {
        known *= entries(y, x);  // <v_x, v_y>
      }
    }
    require(std::abs(known) > tol.abs_zero, Errc::DivisionByZero,
            "cycle has a vanishing known edge product");
    const Cplx solved = it->second / known;  // <v_cx, v_cy>
    const int u = std::min(cx, cy), w = std::max(cx, cy);
    require(std::abs(std::abs(solved) - products.moduli(u, w)) <= thr, Errc::InconsistentModulus,
            "cycle product disagrees with the moduli grid on edge " + std::to_string(u) + "-" +
                std::to_string(w));
    set_inner(cx, cy, solved);
  }

  ReconstructionResult out{GramMatrix(std::move(entries), tol), false};
  const Eigen::SelfAdjointEigenSolver<CMat> es(out.gram.entries(),
                                               Eigen::EigenvaluesOnly);
  const RVec ev = es.eigenvalues();
  const Real radius = std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
  out.psd_warning = ev[0] < -tol.abs_zero * std::max(radius, Real(1));
  return out;
}

Verdict projective_equiv_reindex(const GramMatrix& g1, const GramMatrix& g2,
                                 const Tolerance& tol, std::uint64_t budget,
                                 bool unitary_only) {
  require(g1.size() == g2.size(), Errc::SizeMismatch, "Gram matrices differ in size");
  const int n = int(g1.size());
  const Real thr = tol.match_threshold(joint_scale(g1, g2));
  const CMat& a1 = g1.entries();
  const CMat& a2 = g2.entries();

  const FrameGraph graph1 = build_frame_graph(g1, tol);
  const FrameGraph graph2 = build_frame_graph(g2, tol);

  // Candidate images by degree and sorted row-moduli multisets.
  std::vector<std::vector<Real>> sig1(n), sig2(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      sig1[j].push_back(std::abs(a1(j, k)));
      sig2[j].push_back(std::abs(a2(j, k)));
    }
    std::sort(sig1[j].begin(), sig1[j].end());
    std::sort(sig2[j].begin(), sig2[j].end());
  }
  std::vector<std::vector<char>> cand(n, std::vector<char>(n, 0));
  for (int j = 0; j < n; ++j)
    for (int t = 0; t < n; ++t) {
      if (graph1.degree(j) != graph2.degree(t)) continue;
      if (std::abs(a1(j, j).real() - a2(t, t).real()) > thr) continue;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        ok = std::abs(sig1[j][i] - sig2[t][i]) <= thr;
      if (ok) cand[j][t] = 1;
    }

  std::vector<int> perm(n, -1);
  std::vector<char> used(n, 0);
  std::uint64_t nodes = 0;
  bool exhausted = false;

  // Placed vertices carry phases only relative to their fragment of placed
  // edges: c_v = off[v] * c_root(v), roots free.  A later edge between two
  // fragments binds their roots; the merge is undone on backtrack.  Freezing
  // each fragment's global phase early would wrongly reject pairs whose
  // fragments join only through later-placed vertices.
  std::vector<int> up(n, -1);
  std::vector<Cplx> off(n, Cplx{1, 0});

  auto find = [&](int v) -> std::pair<int, Cplx> {
    Cplx o{1, 0};
    while (up[v] >= 0) {
      o *= off[v];
      v = up[v];
    }
    return {v, o};
  };

  auto compatible = [&](int q, int t, std::vector<int>& merged) -> bool {
    for (int p = 0; p < q; ++p)
      if (std::abs(std::abs(a1(p, q)) - std::abs(a2(perm[p], t))) > thr) return false;
    if (unitary_only) {
      for (int p = 0; p < q; ++p)
        if (std::abs(a1(p, q) - a2(perm[p], t)) > thr) return false;
      return true;
    }
    up[q] = -1;
    off[q] = Cplx{1, 0};
    for (int p = 0; p < q; ++p) {
      if (std::abs(a1(p, q)) <= tol.abs_zero) continue;  // moduli matched: no constraint
      const auto [rp, op] = find(p);
      const auto [rq, oq] = find(q);
      const Cplx ratio = a2(perm[p], t) / a1(p, q);  // required conj(c_p) c_q
      if (rp != rq) {
        up[rq] = rp;
        off[rq] = unit(ratio / (std::conj(op) * oq));
        merged.push_back(rq);
      } else if (std::abs(std::conj(op) * oq * a1(p, q) - a2(perm[p], t)) > thr) {
        return false;
      }
    }
    return true;
  };

  auto undo = [&](std::vector<int>& merged) {
    for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
      up[*it] = -1;
      off[*it] = Cplx{1, 0};
    }
    merged.clear();
  };

  auto search = [&](auto&& self, int q) -> bool {
    if (q == n) return true;
    std::vector<int> merged;
    for (int t = 0; t < n; ++t) {
      if (used[t] || !cand[q][t]) continue;
      if (++nodes > budget) {
        exhausted = true;
        return false;
      }
      if (!compatible(q, t, merged)) {
        undo(merged);
        continue;
      }
      perm[q] = t;
      used[t] = 1;
      if (self(self, q + 1)) return true;
      used[t] = 0;
      undo(merged);
      if (exhausted) return false;
    }
    return false;
  };

  Verdict v;
  if (search(search, 0)) {
    v.equivalent = true;
    v.permutation = perm;
    CVec phase = CVec::Ones(n);
    if (!unitary_only)
      for (int j = 0; j < n; ++j) phase[j] = find(j).second;
    v.phases = phase;
  } else if (exhausted) {
    v.status = "unknown";
  }
  return v;
}

SeidelData seidel_data(const GramMatrix& g, const Tolerance& tol) {
  const int n = int(g.size());
  const Real thr = tol.match_threshold(1);
  require(g.entries().imag().cwiseAbs().maxCoeff() <= thr, Errc::NotRealEquiangular,
          "Gram matrix is not real");
  const auto alpha = equiangularity(g, tol);
  require(alpha.has_value(), Errc::NotRealEquiangular,
          "Gram matrix is not unit-norm equiangular");
  require(n >= 2 && *alpha > tol.abs_zero, Errc::NotRealEquiangular,
          "equiangular structure needs a positive common modulus");

  SeidelData out;
  out.alpha = *alpha;
  out.seidel = Eigen::MatrixXi::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      out.seidel(j, k) = g.entry(j, k).real() > 0 ? 1 : -1;
    }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int l = k + 1; l < n; ++l)
        if ((g.inner(j, k) * g.inner(k, l) * g.inner(l, j)).real() < 0)
          out.neg_triples.push_back({j, k, l});
  return out;
}

}  // namespace frameq
