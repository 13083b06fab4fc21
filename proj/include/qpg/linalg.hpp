#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qpg/rng.hpp"

namespace qpg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerance for algebraically exact constructions.
inline constexpr double kExactTol = 1e-9;

/// Tolerance for comparing an M-sample Monte Carlo estimate to its target.
double monte_carlo_tol(std::size_t samples);

/// max_ij |A_ij - B_ij|; shapes must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool approx_equal(const CMatrix& a, const CMatrix& b, double tol);

/// A vector that is either exactly zero or of unit norm (within tolerance).
/// The magic bases of flat and quasi-flat models are grids of these.
class UnitVector {
 public:
  enum class NormClass { zero, unit };

  /// Classifies `v`; throws InputError when v is neither exactly zero nor of
  /// norm 1 within `tol`, or has dimension zero.
  explicit UnitVector(CVector v, double tol = kExactTol);

  static UnitVector zero(Eigen::Index dim);
  /// v / |v|; v must be nonzero.
  static UnitVector normalized(const CVector& v);

  Eigen::Index dim() const { return entries_.size(); }
  NormClass norm_class() const { return norm_class_; }
  bool is_zero() const { return norm_class_ == NormClass::zero; }
  const CVector& entries() const { return entries_; }

 private:
  UnitVector() = default;
  CVector entries_;
  NormClass norm_class_ = NormClass::zero;
};

/// Orthogonal projector onto span(v): v v^* for unit v, the zero matrix for zero v.
CMatrix proj(const UnitVector& v);

/// P^2 = P = P^* entrywise within tol. False for non-square input.
bool is_projection(const CMatrix& p, double tol);

/// Gram matrix G_ab = <v_a, v_b>, linear in the second argument.
CMatrix gram(std::span<const UnitVector> vectors);

/// Haar-distributed n x n unitary: QR of a complex Ginibre matrix with the
/// phases of diag(R) moved into Q.
CMatrix haar_unitary(Eigen::Index n, Rng& rng);
CMatrix haar_unitary(Eigen::Index n, std::uint64_t seed);

/// max |U^*U - I|.
double unitarity_defect(const CMatrix& u);

/// Smallest eigenvalue of the Hermitian part (A + A^*)/2.
double min_hermitian_eigenvalue(const CMatrix& a);

/// Number of eigenvalues of the Hermitian part above 1/2; the rank of a
/// numerical projection.
int projection_rank(const CMatrix& p);

/// Kronecker product, left factor most significant.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

/// Normalized trace Tr(A)/n.
Complex normalized_trace(const CMatrix& a);

}  // namespace qpg
