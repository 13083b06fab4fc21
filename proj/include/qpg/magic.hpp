#pragma once

#include <vector>

#include "qpg/json_io.hpp"
#include "qpg/linalg.hpp"

namespace qpg {

/// Upper bound on stored vector entries (points * N^2 * K) of a model.
inline constexpr long long kMaxModelEntries = 1LL << 24;

/// Throws CapExceeded when a model of this shape would exceed kMaxModelEntries.
void require_model_size(std::size_t points, long long size, long long dim);

/// N x N grid of K x K matrices; a magic unitary when every entry is an
/// orthogonal projection and every row and column sums to the identity.
class MagicUnitary {
 public:
  MagicUnitary(int size, std::vector<CMatrix> grid);
  int size() const { return size_; }
  Eigen::Index dim() const { return grid_.front().rows(); }
  const CMatrix& operator()(int i, int j) const { return grid_[static_cast<std::size_t>(i * size_ + j)]; }

 private:
  int size_;
  std::vector<CMatrix> grid_;
};

struct MagicDiagnostics {
  double projection_defect = 0.0;  // worst max(|P^2 - P|, |P - P^*|)
  double sum_defect = 0.0;         // worst |row or column sum - I|
  double tol = 0.0;
  bool passes = false;
};

MagicDiagnostics validate_magic(const MagicUnitary& u, double tol = kExactTol);

/// N x N grid of unit-or-zero vectors in C^K, pairwise orthogonal along every
/// row and every column. Entry (i, j) spans the range of the rank <= 1
/// projection P_ij.
class MagicBasis {
 public:
  /// `vectors` is row-major, N*N entries of one common dimension. Throws
  /// InputError when a row or column fails orthogonality at `tol`.
  MagicBasis(int size, std::vector<UnitVector> vectors, double tol = kExactTol);

  int size() const { return size_; }
  Eigen::Index dim() const { return vectors_.front().dim(); }
  const UnitVector& operator()(int i, int j) const { return vectors_[static_cast<std::size_t>(i * size_ + j)]; }
  const std::vector<UnitVector>& vectors() const { return vectors_; }

  /// K x N^2 matrix whose column i*N + j is the (i, j) vector.
  CMatrix stacked() const;
  MagicUnitary projectors() const;
  /// Worst |<v, w>| over distinct pairs sharing a row or column.
  double orthogonality_defect() const;

 private:
  int size_;
  std::vector<UnitVector> vectors_;
};

struct ModelPoint {
  double weight;
  MagicBasis basis;
};

/// A quasi-flat matrix model u_ij -> Proj(xi_ij^x) over a finite weighted
/// sample of parameter points x. Flat when no vector is zero.
class FlatModel {
 public:
  /// Checks: weights positive and summing to 1; all bases share N and K;
  /// every row and column of every basis holds exactly K unit vectors (so the
  /// projector grid sums to the identity).
  explicit FlatModel(std::vector<ModelPoint> points, double tol = kExactTol);

  int size() const { return points_.front().basis.size(); }
  Eigen::Index dim() const { return points_.front().basis.dim(); }
  const std::vector<ModelPoint>& points() const { return points_; }

  /// {"size": N, "dim": K, "points": [{"weight": w, "vectors": [...]}]}
  Json to_json() const;
  static FlatModel from_json(const Json& j, double tol = kExactTol);

 private:
  std::vector<ModelPoint> points_;
};

}  // namespace qpg
