#pragma once

#include <map>
#include <vector>

#include "frameq/frame_graph.hpp"
#include "frameq/types.hpp"

namespace frameq {

// Product of inner products around the closed walk j_1 -> j_2 -> ... -> j_m
// -> j_1.  Invariant under rescaling each vector by a unit scalar, which is
// what makes these values useful: two frames agree on all of them exactly
// when they differ by a unitary map plus per-vector phases.
Cplx m_product(const GramMatrix& g, const std::vector<int>& indices);

// All products over three-index closed walks, stored once per equivalence
// class under cyclic rotation; reversal is recovered by conjugation.
class TripleProducts {
 public:
  TripleProducts(int n, std::map<std::array<int, 3>, Cplx> canonical);

  int size() const { return n_; }
  Cplx at(int j, int k, int l) const;
  const std::map<std::array<int, 3>, Cplx>& canonical() const { return values_; }

 private:
  int n_;
  std::map<std::array<int, 3>, Cplx> values_;
};

TripleProducts triple_products(const GramMatrix& g);

// Norms and inner-product moduli recovered from three-index products:
// diagonal (j, j) holds ||v_j||^2, entry (j, k) holds |<v_j, v_k>|.
// Throws ZeroVector when some T_jjj vanishes but a T_jjk does not.
RMat moduli_from_triples(const TripleProducts& t, const Tolerance& tol = {});

// The data from which every product is recoverable: all one- and two-index
// products (norms and moduli) plus one product per fundamental cycle of the
// canonical spanning forest.
struct DeterminingSet {
  RVec norms;              // ||v_j||^2
  RMat moduli;             // |<v_j, v_k>| off the diagonal, norms on it
  CycleBasis cycles;       // canonical fundamental cycles with their chords
  std::vector<Cplx> values;  // product value per cycle, same order

  int size() const { return int(norms.size()); }
};

DeterminingSet determining_set(const GramMatrix& g, const Tolerance& tol = {});

// Value of the product over an arbitrary closed walk, computed from a
// determining set alone by composing cycle values and moduli.  Agrees with
// m_product on the source Gram matrix.  Errors: NotInSpan when the walk is
// not a cycle-space combination of the basis cycles, DivisionByZero when a
// required divisor vanishes.
Cplx derive_product(const DeterminingSet& ds, const std::vector<int>& target,
                    const Tolerance& tol = {});

namespace detail {

// Core of derive_product, usable with any independent cycle set whose
// chords are tagged: cycles[i] owns chord chords[i], meaning no other basis
// cycle and no "known" edge uses it.  Values of known edges enter only
// through their moduli.
Cplx derive_from_cycles(const RMat& moduli, const CycleBasis& basis,
                        const std::vector<Cplx>& values,
                        const std::vector<int>& target, const Tolerance& tol);

}  // namespace detail

// True when every listed basis is orthonormal and every pair of vectors
// from different bases has squared inner-product modulus 1/d.
bool check_mubs(const std::vector<FrameSpec>& bases, const Tolerance& tol = {});

}  // namespace frameq
