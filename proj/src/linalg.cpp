#include "qpg/linalg.hpp"

#include <cmath>

#include "qpg/errors.hpp"

namespace qpg {

double monte_carlo_tol(std::size_t samples) {
  return 5.0 / std::sqrt(static_cast<double>(samples));
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

UnitVector::UnitVector(CVector v, double tol) : entries_(std::move(v)) {
  if (entries_.size() == 0) throw InputError("UnitVector: dimension zero");
  if (entries_.isZero(0.0)) {
    norm_class_ = NormClass::zero;
    return;
  }
  if (std::abs(entries_.norm() - 1.0) > tol) {
    throw InputError("UnitVector: norm " + std::to_string(entries_.norm()) +
                     " is neither 0 nor 1");
  }
  norm_class_ = NormClass::unit;
}

UnitVector UnitVector::zero(Eigen::Index dim) {
  if (dim <= 0) throw InputError("UnitVector: dimension zero");
  UnitVector out;
  out.entries_ = CVector::Zero(dim);
  out.norm_class_ = NormClass::zero;
  return out;
}

UnitVector UnitVector::normalized(const CVector& v) {
  if (v.size() == 0) throw InputError("UnitVector: dimension zero");
  const double n = v.norm();
  if (n == 0.0) throw InputError("UnitVector::normalized: zero vector");
  UnitVector out;
  out.entries_ = v / n;
  out.norm_class_ = NormClass::unit;
  return out;
}

CMatrix proj(const UnitVector& v) {
  if (v.is_zero()) return CMatrix::Zero(v.dim(), v.dim());
  // Renormalize so the result is idempotent to roundoff even for vectors
  // accepted at a loose tolerance.
  const CVector& e = v.entries();
  return e * e.adjoint() / e.squaredNorm();
}

bool is_projection(const CMatrix& p, double tol) {
  if (p.rows() != p.cols()) return false;
  return max_abs_diff(p * p, p) <= tol && max_abs_diff(p, p.adjoint()) <= tol;
}

CMatrix gram(std::span<const UnitVector> vectors) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  if (n == 0) return CMatrix(0, 0);
  const Eigen::Index dim = vectors.front().dim();
  CMatrix stacked(dim, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    if (vectors[a].dim() != dim) throw InputError("gram: mixed vector dimensions");
    stacked.col(a) = vectors[a].entries();
  }
  return stacked.adjoint() * stacked;
}

CMatrix haar_unitary(Eigen::Index n, Rng& rng) {
  if (n < 1) throw InputError("haar_unitary: n must be positive");
  CMatrix z(n, n);
  // Fill row-major so the sample sequence is independent of storage order.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double m = std::abs(d);
    q.col(j) *= (m > 0.0 ? d / m : Complex(1.0));
  }
  return q;
}

CMatrix haar_unitary(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(n, rng);
}

double unitarity_defect(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return max_abs_diff(u.adjoint() * u, CMatrix::Identity(u.rows(), u.cols()));
}

double min_hermitian_eigenvalue(const CMatrix& a) {
  const CMatrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

int projection_rank(const CMatrix& p) {
  const CMatrix h = (p + p.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return static_cast<int>((solver.eigenvalues().array() > 0.5).count());
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Complex normalized_trace(const CMatrix& a) {
  return a.trace() / static_cast<double>(a.rows());
}

}  // namespace qpg
