#pragma once

// Fixtures and generators shared by the test suites.  Worked examples are
// built from explicit formulas so every expected value in the tests is
// traceable to a closed form, not to the code under test.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "frameq/frame_core.hpp"
#include "frameq/types.hpp"

namespace tq {

using frameq::CMat;
using frameq::Cplx;
using frameq::CVec;
using frameq::FrameSpec;
using frameq::GramMatrix;
using frameq::Real;

inline constexpr Real kPi = 3.14159265358979323846;

inline Cplx polar(Real angle) { return {std::cos(angle), std::sin(angle)}; }

inline Real dist(Cplx a, Cplx b) { return std::abs(a - b); }

// ---- deterministic randomness ------------------------------------------

using Rng = std::mt19937_64;

inline Cplx random_unit(Rng& rng) {
  std::uniform_real_distribution<Real> u(0, 2 * kPi);
  return polar(u(rng));
}

inline Cplx random_gauss(Rng& rng) {
  std::normal_distribution<Real> g(0, 1);
  return {g(rng), g(rng)};
}

inline FrameSpec random_frame(Rng& rng, int d, int n) {
  CMat m(d, n);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = random_gauss(rng);
  return FrameSpec(m);
}

inline CVec random_phases(Rng& rng, int n) {
  CVec c(n);
  for (int j = 0; j < n; ++j) c[j] = random_unit(rng);
  return c;
}

// Haar-ish unitary: QR of a Gaussian matrix with R's diagonal phases fixed.
inline CMat random_unitary(Rng& rng, int d) {
  CMat a(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) a(j, k) = random_gauss(rng);
  Eigen::HouseholderQR<CMat> qr(a);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Cplx rd = r(j, j);
    q.col(j) *= std::abs(rd) > 0 ? rd / std::abs(rd) : Cplx{1, 0};
  }
  return q;
}

inline std::vector<int> random_permutation(Rng& rng, int n) {
  std::vector<int> p(n);
  for (int j = 0; j < n; ++j) p[j] = j;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Hermitian, unit diagonal, random support, off-diagonal moduli bounded
// well away from zero so that products around long cycles stay clear of
// the division guards.  Not necessarily positive semidefinite: the gauge
// and product machinery reads only moduli and phases.
inline GramMatrix random_sparse_gram(Rng& rng, int n, Real edge_prob) {
  std::uniform_real_distribution<Real> coin(0, 1);
  std::uniform_real_distribution<Real> mag(0.3, 0.8);
  CMat m = CMat::Identity(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      if (coin(rng) >= edge_prob) continue;
      const Cplx e = mag(rng) * random_unit(rng);
      m(j, k) = e;
      m(k, j) = std::conj(e);
    }
  return GramMatrix(m);
}

// New vector j is old vector p[j].
inline GramMatrix permuted_gram(const GramMatrix& g, const std::vector<int>& p) {
  const int n = int(g.size());
  CMat m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = g.entries()(p[j], p[k]);
  return GramMatrix(m);
}

// ---- worked-example fixtures -------------------------------------------

// Three unit vectors with every pairwise inner product 1/2.
inline GramMatrix printed_equiangular_gram() {
  CMat m(3, 3);
  m << 1, 0.5, 0.5, 0.5, 1, 0.5, 0.5, 0.5, 1;
  return GramMatrix(m);
}

// Full gauge family of the printed equiangular Gramian; a = b = 1 recovers it.
inline GramMatrix equiangular_family(Cplx a, Cplx b) {
  const Cplx ca = std::conj(a), cb = std::conj(b);
  CMat m(3, 3);
  m << Cplx{1, 0}, ca / 2.0, ca * cb / 2.0,
       a / 2.0, Cplx{1, 0}, cb / 2.0,
       a * b / 2.0, b / 2.0, Cplx{1, 0};
  return GramMatrix(m);
}

// Three equally spaced unit vectors in the plane, as columns.
inline FrameSpec equally_spaced_frame() {
  CMat m(2, 3);
  for (int j = 0; j < 3; ++j) {
    m(0, j) = std::cos(2 * kPi * j / 3);
    m(1, j) = std::sin(2 * kPi * j / 3);
  }
  return FrameSpec(m);
}

// Standard basis of C^2 followed by the Hadamard basis.
inline FrameSpec mub_pair_frame() {
  const Real s = 1 / std::sqrt(Real(2));
  CMat m(2, 4);
  m << Cplx{1, 0}, Cplx{0, 0}, Cplx{s, 0}, Cplx{s, 0},
       Cplx{0, 0}, Cplx{1, 0}, Cplx{s, 0}, Cplx{-s, 0};
  return FrameSpec(m);
}

// Gauge family of the two-basis Gramian; a = b = c = 1 gives the base
// matrix and the dependent entry z = -ac/b its value -1.
inline GramMatrix mub_family(Cplx a, Cplx b, Cplx c) {
  const Real s = 1 / std::sqrt(Real(2));
  const Cplx z = -a * c / b;
  CMat m = CMat::Identity(4, 4);
  m(0, 2) = std::conj(a) * s;
  m(0, 3) = std::conj(z) * s;
  m(1, 2) = std::conj(b) * s;
  m(1, 3) = std::conj(c) * s;
  m(2, 0) = a * s;
  m(2, 1) = b * s;
  m(3, 0) = z * s;
  m(3, 1) = c * s;
  return GramMatrix(m);
}

// n vectors e_j + e_{j+1} in C^n, the last one e_{n-1} + z e_0: the frame
// graph is the n-cycle and the full cycle product equals z.
inline FrameSpec cycle_frame(int n, Cplx z) {
  CMat m = CMat::Zero(n, n);
  for (int j = 0; j + 1 < n; ++j) {
    m(j, j) = 1;
    m(j + 1, j) = 1;
  }
  m(n - 1, n - 1) = 1;
  m(0, n - 1) = z;
  return FrameSpec(m);
}

inline FrameSpec standard_basis(int d) { return FrameSpec(CMat::Identity(d, d)); }

inline FrameSpec fourier_basis(int d) {
  CMat m(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) m(j, k) = polar(2 * kPi * j * k / d) / std::sqrt(Real(d));
  return FrameSpec(m);
}

// Completes {standard, Hadamard} to three mutually unbiased bases of C^2.
inline FrameSpec circular_basis_c2() {
  const Real s = 1 / std::sqrt(Real(2));
  CMat m(2, 2);
  m << Cplx{s, 0}, Cplx{s, 0}, Cplx{0, s}, Cplx{0, -s};
  return FrameSpec(m);
}

// Quadratic-phase companion of the Fourier basis in C^d, d an odd prime:
// entries w^(t j^2 + j k) / sqrt(d).  Standard, Fourier, and t = 1 are
// pairwise unbiased.
inline FrameSpec quadratic_basis(int d, int t) {
  CMat m(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      m(j, k) = polar(2 * kPi * (t * j * j + j * k) / d) / std::sqrt(Real(d));
  return FrameSpec(m);
}

// Planted dependency: v_0 = e_0, v_1 = e_1, v_2 = -(a v_0 + b v_1)/c, so
// a v_0 + b v_1 + c v_2 = 0.  Closed-form projector entries below assume
// the caller normalizes (a, b, c) to a unit vector.
inline FrameSpec dependent_triple(Cplx a, Cplx b, Cplx c) {
  CMat m(2, 3);
  m << Cplx{1, 0}, Cplx{0, 0}, -a / c,
       Cplx{0, 0}, Cplx{1, 0}, -b / c;
  return FrameSpec(m);
}

}  // namespace tq
