#include "frameq/similarity.hpp"

#include <cmath>

#include "frameq/invariants.hpp"

namespace frameq {

DependencyProjector dependency_projector(const FrameSpec& frame, const Tolerance& tol) {
  const Eigen::JacobiSVD<CMat> svd(frame.matrix(), Eigen::ComputeFullV);
  const RVec sing = svd.singularValues();
  const Real cutoff = tol.abs_zero * (sing.size() > 0 ? sing[0] : Real(0));
  int rank = 0;
  for (Eigen::Index i = 0; i < sing.size(); ++i)
    if (sing[i] > cutoff) ++rank;
  // Right singular vectors with nonzero singular value span ker(V)-perp.
  const CMat basis = svd.matrixV().leftCols(rank);
  return DependencyProjector{basis * basis.adjoint()};
}

Cplx canonical_m_product(const DependencyProjector& p, const std::vector<int>& indices) {
  return m_product(p.as_gram(), indices);
}

bool similar(const FrameSpec& f1, const FrameSpec& f2, const Tolerance& tol) {
  require(f1.size() == f2.size(), Errc::SizeMismatch, "frames differ in vector count");
  const CMat p1 = dependency_projector(f1, tol).matrix;
  const CMat p2 = dependency_projector(f2, tol).matrix;
  return (p1 - p2).cwiseAbs().maxCoeff() <= tol.match_threshold(1);
}

namespace {

// Greedy lowest-index maximal linearly independent subset of the columns.
std::vector<int> independent_subset(const CMat& vectors, const Tolerance& tol) {
  std::vector<int> picked;
  CMat chosen(vectors.rows(), 0);
  for (int j = 0; j < int(vectors.cols()); ++j) {
    const CVec v = vectors.col(j);
    CVec residual = v;
    if (chosen.cols() > 0) {
      // Subtract the projection onto the span of the picked columns.
      const Eigen::JacobiSVD<CMat> svd(chosen, Eigen::ComputeThinU);
      const CMat u = svd.matrixU().leftCols(
          (svd.singularValues().array() > tol.abs_zero * svd.singularValues()[0])
              .count());
      residual -= u * (u.adjoint() * v);
    }
    if (residual.norm() > tol.abs_zero * std::max(Real(1), v.norm())) {
      picked.push_back(j);
      chosen.conservativeResize(Eigen::NoChange, chosen.cols() + 1);
      chosen.col(chosen.cols() - 1) = v;
    }
  }
  return picked;
}

}  // namespace

SimilarityVerdict projectively_similar(const FrameSpec& f1, const FrameSpec& f2,
                                       const Tolerance& tol) {
  require(f1.size() == f2.size(), Errc::SizeMismatch, "frames differ in vector count");
  const GramMatrix p1 = dependency_projector(f1, tol).as_gram(tol);
  const GramMatrix p2 = dependency_projector(f2, tol).as_gram(tol);
  const Verdict inner = projective_equiv(p1, p2, tol);

  SimilarityVerdict out;
  out.similar = inner.equivalent;
  out.phases = inner.phases;
  out.witness_entry = inner.witness_entry;
  out.witness_cycle = inner.witness_cycle;
  out.status = inner.status;
  if (inner.equivalent && inner.phases) {
    QRecipe recipe;
    recipe.indices = independent_subset(f1.matrix(), tol);
    recipe.phases = CVec(recipe.indices.size());
    for (int i = 0; i < int(recipe.indices.size()); ++i)
      recipe.phases[i] = (*inner.phases)[recipe.indices[i]];
    out.q_recipe = std::move(recipe);
  }
  return out;
}

}  // namespace frameq
