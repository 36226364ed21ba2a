#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace frameq {

using Real = double;
using Cplx = std::complex<Real>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Numerical policy shared by every operation that classifies or compares
// floating-point data.  abs_zero decides "is this entry zero", rel_match
// decides "are these two values the same" relative to the data's scale.
struct Tolerance {
  Real abs_zero = 1e-9;
  Real rel_match = 1e-8;

  // Threshold for comparing values whose magnitudes are at most `scale`.
  Real match_threshold(Real scale) const {
    return std::max(abs_zero, rel_match * scale);
  }
};

enum class Errc {
  SizeMismatch,
  DimensionMismatch,
  NotHermitian,
  NotPsd,
  NotUnimodular,
  ZeroVector,
  NotRealEquiangular,
  MissingCycleProduct,
  InconsistentModulus,
  NotInSpan,
  DivisionByZero,
  IndexOutOfRange,
  BadArgument,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

// A finite sequence of vectors in C^d, stored as the columns of a d x n
// matrix.  Zero vectors are allowed; emptiness is not.
class FrameSpec {
 public:
  explicit FrameSpec(CMat vectors) : vectors_(std::move(vectors)) {
    require(vectors_.rows() >= 1 && vectors_.cols() >= 1, Errc::BadArgument,
            "frame needs at least one vector in dimension >= 1");
    require(vectors_.allFinite(), Errc::BadArgument, "frame entries must be finite");
  }

  Eigen::Index dim() const { return vectors_.rows(); }
  Eigen::Index size() const { return vectors_.cols(); }
  const CMat& matrix() const { return vectors_; }
  CVec vector(Eigen::Index j) const { return vectors_.col(j); }

 private:
  CMat vectors_;  // columns are the frame vectors
};

// Hermitian matrix of pairwise inner products.  The storage convention is
// entries(j, k) = <v_k, v_j> with inner products linear in the FIRST
// argument, so entries == V.adjoint() * V for column-vector matrix V.
// Use inner(a, b) for the readable accessor <v_a, v_b>.
class GramMatrix {
 public:
  explicit GramMatrix(CMat entries, const Tolerance& tol = {})
      : entries_(std::move(entries)) {
    require(entries_.rows() == entries_.cols(), Errc::SizeMismatch, "Gram matrix must be square");
    require(entries_.rows() >= 1, Errc::BadArgument, "Gram matrix must be nonempty");
    require(entries_.allFinite(), Errc::BadArgument, "Gram entries must be finite");
    const Real scale = entries_.cwiseAbs().maxCoeff();
    const Real thr = tol.match_threshold(scale);
    require((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= thr,
            Errc::NotHermitian, "Gram matrix must be Hermitian");
    for (Eigen::Index j = 0; j < entries_.rows(); ++j)
      require(entries_(j, j).real() >= -thr, Errc::NotPsd,
              "Gram diagonal must be nonnegative");
    // Store the exact Hermitian part; downstream code relies on
    // entries(k, j) == conj(entries(j, k)) holding bitwise.
    entries_ = ((entries_ + entries_.adjoint()) / Real(2)).eval();
    for (Eigen::Index j = 0; j < entries_.rows(); ++j)
      entries_(j, j) = Cplx(std::max(Real(0), entries_(j, j).real()), 0);
  }

  Eigen::Index size() const { return entries_.rows(); }
  const CMat& entries() const { return entries_; }
  Cplx entry(Eigen::Index j, Eigen::Index k) const { return entries_(j, k); }

  // <v_a, v_b>, linear in a, conjugate-linear in b.
  Cplx inner(Eigen::Index a, Eigen::Index b) const { return entries_(b, a); }

 private:
  CMat entries_;
};

// Unimodular scaling factors c_j, one per frame vector.
class PhaseVector {
 public:
  explicit PhaseVector(CVec phases, const Tolerance& tol = {})
      : phases_(std::move(phases)) {
    require(phases_.size() >= 1, Errc::BadArgument, "phase vector must be nonempty");
    for (Eigen::Index j = 0; j < phases_.size(); ++j)
      require(std::abs(std::abs(phases_[j]) - Real(1)) <= tol.match_threshold(Real(1)),
              Errc::NotUnimodular, "phases must have modulus one");
  }

  Eigen::Index size() const { return phases_.size(); }
  const CVec& values() const { return phases_; }
  Cplx operator[](Eigen::Index j) const { return phases_[j]; }

 private:
  CVec phases_;
};

}  // namespace frameq
