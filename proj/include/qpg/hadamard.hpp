#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpg/json_io.hpp"
#include "qpg/linalg.hpp"
#include "qpg/magic.hpp"

namespace qpg {

/// Largest Hadamard order built by fourier_matrix / dita_deform.
inline constexpr int kMaxHadamardSize = 1024;

struct HadamardDiagnostics {
  double modulus_defect = 0.0;       // worst ||H_ij| - 1|
  double orthogonality_defect = 0.0; // worst |<H_i, H_k>|, i != k
  double tol = 0.0;
  bool passes = false;
};

/// Checks the unit-circle entries and H H^* = N I conditions. Non-square
/// input never passes.
HadamardDiagnostics validate_hadamard(const CMatrix& m, double tol = kExactTol);

/// Complex Hadamard matrix, stored unnormalized (entries on the unit circle).
class HadamardMatrix {
 public:
  /// Throws InputError when validate_hadamard fails at `tol`.
  explicit HadamardMatrix(CMatrix m, double tol = kExactTol);

  int size() const { return static_cast<int>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }

  /// Matrix JSON plus {"kind": "hadamard"}.
  Json to_json() const;
  static HadamardMatrix from_json(const Json& j, double tol = kExactTol);

 private:
  CMatrix matrix_;
};

/// Parses "4", "2x3", "2x2x2" into cycle sizes.
std::vector<int> parse_cycle_sizes(std::string_view spec);

/// F_{N1} (x) ... (x) F_{Ns}, F_N = (w^{ij}) with w = exp(2 pi i / N).
HadamardMatrix fourier_matrix(std::span<const int> cycles);

/// Unimodular M x N array Q parametrizing the Dita family.
class DeformationParam {
 public:
  explicit DeformationParam(CMatrix q, double tol = kExactTol);
  /// Entries exp(2 pi i u), u uniform.
  static DeformationParam random(int rows, int cols, Rng& rng);
  static DeformationParam ones(int rows, int cols);
  const CMatrix& q() const { return q_; }

 private:
  CMatrix q_;
};

/// Entries Q_ib (F_G)_ij (F_H)_ab at row i*|H| + a, column j*|H| + b.
HadamardMatrix dita_deform(std::span<const int> left, std::span<const int> right, const DeformationParam& q);

/// xi_ij = (H_i / H_j) / sqrt(N), the entrywise ratio of rows i and j.
MagicBasis magic_from_hadamard(const HadamardMatrix& h);

/// Dephased form R_il = H_il H_00 / (H_i0 H_0l): first row and column all one.
CMatrix dephase(const CMatrix& h);

struct HadamardTypeResult {
  /// Present when xi is of Hadamard type; rows H_i = eta_i0 with
  /// eta_ij = xi_ij / (xi_ij)_0. This equals dephase(H) for xi built from H.
  std::optional<HadamardMatrix> matrix;
  /// Empty on success, otherwise the first failed condition: "zero entry",
  /// "not unimodular", "diagonal not all-one", "xi_ij xi_jk != xi_ik",
  /// "xi_ij xi_kl != xi_il xi_kj".
  std::string violation;
  double defect = 0.0;  // size of the failure, 0 on success
};

/// Rescales each xi_ij by its first coordinate and tests the multiplicative
/// characterization of Hadamard-type magic bases. Requires K = N.
HadamardTypeResult magic_basis_is_hadamard_type(const MagicBasis& xi, double tol = kExactTol);

/// out_j = 2^-n sum_i (-1)^{<i,j>} f_i, via the fast Walsh-Hadamard transform.
CVector z2n_fourier_forward(const CVector& f);
/// out_j = sum_i (-1)^{<i,j>} f_i.
CVector z2n_fourier_inverse(const CVector& f);
/// Matrix of the forward (or inverse) map on 2^n coordinates.
CMatrix z2n_fourier_kernel(int n, bool forward);

}  // namespace qpg
