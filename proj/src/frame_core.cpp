#include "frameq/frame_core.hpp"

#include <algorithm>
#include <cmath>

namespace frameq {

GramMatrix gram(const FrameSpec& frame) {
  return GramMatrix(frame.matrix().adjoint() * frame.matrix());
}

FrameSpec vectors_from_gram(const GramMatrix& g, const Tolerance& tol) {
  Eigen::SelfAdjointEigenSolver<CMat> eig(g.entries());
  require(eig.info() == Eigen::Success, Errc::BadArgument, "eigendecomposition failed");
  const RVec lambda = eig.eigenvalues();  // ascending
  const Real radius = lambda.cwiseAbs().maxCoeff();
  const Real zero_thr = tol.abs_zero * radius;
  require(lambda.minCoeff() >= -zero_thr, Errc::NotPsd,
          "Gram matrix has a significantly negative eigenvalue");

  const Eigen::Index n = g.size();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (lambda[i] > zero_thr) ++rank;

  // Rows of the synthesis matrix: sqrt(lambda) * (eigenvector)*, largest
  // eigenvalue first so the embedding is deterministic.
  const Eigen::Index d = std::max<Eigen::Index>(rank, 1);
  CMat vectors = CMat::Zero(d, n);
  for (Eigen::Index r = 0; r < rank; ++r) {
    const Eigen::Index src = n - 1 - r;
    vectors.row(r) = std::sqrt(std::max(Real(0), lambda[src])) *
                     eig.eigenvectors().col(src).adjoint();
  }
  return FrameSpec(std::move(vectors));
}

GramMatrix apply_gauge(const GramMatrix& g, const PhaseVector& phases) {
  require(phases.size() == g.size(), Errc::SizeMismatch,
          "phase vector length must match Gram size");
  const CVec& c = phases.values();
  CMat out = c.conjugate().asDiagonal() * g.entries() * c.asDiagonal();
  return GramMatrix(std::move(out));
}

std::optional<Real> is_tight(const FrameSpec& frame, const Tolerance& tol) {
  const CMat s = frame.matrix() * frame.matrix().adjoint();  // frame operator
  const Real a = s.real().trace() / Real(frame.dim());
  const CMat dev = s - a * CMat::Identity(frame.dim(), frame.dim());
  if (dev.cwiseAbs().maxCoeff() <= tol.match_threshold(a)) return a;
  return std::nullopt;
}

std::optional<Real> equiangularity(const GramMatrix& g, const Tolerance& tol) {
  const Eigen::Index n = g.size();
  const Real thr = tol.match_threshold(Real(1));
  for (Eigen::Index j = 0; j < n; ++j)
    if (std::abs(g.entry(j, j) - Cplx(1, 0)) > thr) return std::nullopt;
  if (n == 1) return Real(0);
  const Real c = std::abs(g.entry(0, 1));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j + 1; k < n; ++k)
      if (std::abs(std::abs(g.entry(j, k)) - c) > thr) return std::nullopt;
  return c;
}

}  // namespace frameq
