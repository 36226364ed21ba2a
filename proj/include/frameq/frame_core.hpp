#pragma once

#include <optional>

#include "frameq/types.hpp"

namespace frameq {

// Gram matrix of a frame: entries(j, k) = <v_k, v_j>, i.e. V* V.
GramMatrix gram(const FrameSpec& frame);

// Recover a frame from its Gram matrix via eigendecomposition.  The result
// lives in dimension equal to the numerical rank of g (eigenvalues below
// abs_zero times the spectral radius count as zero) and satisfies
// gram(result) == g up to tolerance.  Throws NotPsd when g has an
// eigenvalue below -abs_zero times the spectral radius.
FrameSpec vectors_from_gram(const GramMatrix& g, const Tolerance& tol = {});

// Gram matrix of the rescaled frame (c_j v_j): entries(j, k) picks up the
// factor conj(c_j) * c_k, so the result equals C* G C for C = diag(c).
GramMatrix apply_gauge(const GramMatrix& g, const PhaseVector& phases);

// Frame constant A with sum_j v_j v_j* == A I, when the frame is tight
// within tolerance; empty otherwise.
std::optional<Real> is_tight(const FrameSpec& frame, const Tolerance& tol = {});

// Common off-diagonal modulus C of an equiangular unit-norm Gram matrix
// (diagonal all 1, every |off-diagonal| equal within tolerance); empty
// when the frame is not equiangular.  A 1x1 Gram is vacuously equiangular
// with C = 0.
std::optional<Real> equiangularity(const GramMatrix& g, const Tolerance& tol = {});

}  // namespace frameq
