#pragma once

#include <optional>

#include "frameq/equivalence.hpp"
#include "frameq/types.hpp"

namespace frameq {

// Orthogonal projector onto the orthogonal complement of the kernel of the
// synthesis map (the space of linear dependencies among the vectors).  Two
// frames are related by an invertible map exactly when these projectors
// coincide, and P is the Gram matrix of its own columns, so every Gram
// decision procedure applies to it unchanged.
struct DependencyProjector {
  CMat matrix;

  GramMatrix as_gram(const Tolerance& tol = {}) const { return GramMatrix(matrix, tol); }
};

DependencyProjector dependency_projector(const FrameSpec& frame, const Tolerance& tol = {});

// Product of projector entries around a closed walk; plays the role the
// ordinary products play for unitary equivalence, but for equivalence up to
// an arbitrary invertible map and unit scalars.
Cplx canonical_m_product(const DependencyProjector& p, const std::vector<int>& indices);

// Rule for rebuilding the invertible map: on the listed (maximal
// independent) vector indices, send v_{indices[i]} to conj(phases[i])
// times the partner frame's vector with the same index.
struct QRecipe {
  std::vector<int> indices;
  CVec phases;
};

struct SimilarityVerdict {
  bool similar = false;
  std::optional<CVec> phases;
  std::optional<QRecipe> q_recipe;
  std::optional<std::pair<int, int>> witness_entry;
  std::optional<std::vector<int>> witness_cycle;
  std::string status = "decided";
};

// Frames related by some invertible map (no scalars): projectors equal.
bool similar(const FrameSpec& f1, const FrameSpec& f2, const Tolerance& tol = {});

// Frames related by an invertible map plus per-vector unit scalars: the
// gauge decision procedure run on the two dependency projectors.
SimilarityVerdict projectively_similar(const FrameSpec& f1, const FrameSpec& f2,
                                       const Tolerance& tol = {});

}  // namespace frameq
