#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frameq/invariants.hpp"
#include "frameq/types.hpp"

namespace frameq {

// Decision outcome with a checkable certificate.  On success, phases holds
// the c_j with apply_gauge(g1, c) == g2 (after applying permutation when
// present).  On failure, exactly one witness names the first obstruction:
// an entry pair whose moduli differ, or the cycle whose product differs.
// status is "decided" unless a search ran out of budget, then "unknown".
struct Verdict {
  bool equivalent = false;
  std::optional<CVec> phases;
  std::optional<std::vector<int>> permutation;
  std::optional<std::pair<int, int>> witness_entry;
  std::optional<std::vector<int>> witness_cycle;
  std::string status = "decided";
};

// Entrywise equality within tolerance, scale taken from the larger matrix.
bool unitary_equiv(const GramMatrix& g1, const GramMatrix& g2, const Tolerance& tol = {});

// Constructive test for equality up to per-vector unit scalars: compare
// moduli grids, propagate phases along the canonical spanning forest of the
// common frame graph, then verify every remaining entry.  A failing chord
// reports its fundamental cycle as the witness.
Verdict projective_equiv(const GramMatrix& g1, const GramMatrix& g2, const Tolerance& tol = {});

// Gauge representative with every forest-edge entry real and nonnegative.
// Two Gramians with equal frame graphs are projectively equivalent exactly
// when their canonical forms are entrywise equal.  Idempotent.
struct CanonicalGram {
  GramMatrix gram;
  SpanningForest forest;
};

CanonicalGram canonical_gram(const GramMatrix& g, const Tolerance& tol = {});

// Gram matrix rebuilt from determining-set data.  Tree-edge entries take
// the given free phases (key {u, w} with u < w fixes the argument of
// <v_u, v_w>; default phase 1); each chord entry is solved from its
// fundamental cycle product.  psd_warning flags an eigenvalue below
// -abs_zero times the spectral radius (data not realizable by vectors).
struct ReconstructionResult {
  GramMatrix gram;
  bool psd_warning = false;
};

ReconstructionResult reconstruct_from_products(
    const DeterminingSet& products,
    const std::map<std::pair<int, int>, Cplx>& free_phases = {},
    const Tolerance& tol = {});

// Backtracking search for a vertex relabeling pi with
// projective_equiv(permute(g1, pi), g2); candidates are pruned by sorted
// row-moduli multisets and incremental entry compatibility, and phases are
// propagated during the search.  unitary_only forces all phases to 1
// (plain Gram equality up to permutation).  The search visits at most
// `budget` nodes; exceeding it yields status "unknown" rather than a
// verdict.  The reported permutation maps g1 indices to g2 indices and is
// the lexicographically least solution.
Verdict projective_equiv_reindex(const GramMatrix& g1, const GramMatrix& g2,
                                 const Tolerance& tol = {},
                                 std::uint64_t budget = 10'000'000,
                                 bool unitary_only = false);

// Real equiangular data: g == I + alpha * seidel with seidel symmetric,
// zero diagonal, entries +-1.  neg_triples lists the distinct-index triples
// whose product is -alpha^3; it is invariant under +-1 regauging, so it
// captures the switching class.
struct SeidelData {
  Real alpha = 0;
  Eigen::MatrixXi seidel;
  std::vector<std::array<int, 3>> neg_triples;
};

SeidelData seidel_data(const GramMatrix& g, const Tolerance& tol = {});

}  // namespace frameq
