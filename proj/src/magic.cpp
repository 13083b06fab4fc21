#include "qpg/magic.hpp"

#include <cmath>
#include <string>

#include "qpg/errors.hpp"

namespace qpg {

void require_model_size(std::size_t points, long long size, long long dim) {
  const long double entries = static_cast<long double>(points) * size * size * dim;
  if (entries > static_cast<long double>(kMaxModelEntries)) {
    throw CapExceeded("model too large: " + std::to_string(points) + " points of " + std::to_string(size) + "^2 vectors in C^" +
                          std::to_string(dim),
                      kMaxModelEntries);
  }
}

MagicUnitary::MagicUnitary(int size, std::vector<CMatrix> grid) : size_(size), grid_(std::move(grid)) {
  if (size_ < 1 || grid_.size() != static_cast<std::size_t>(size_) * static_cast<std::size_t>(size_)) {
    throw InputError("MagicUnitary: grid must hold N*N matrices");
  }
  const auto k = grid_.front().rows();
  for (const auto& m : grid_)
    if (m.rows() != k || m.cols() != k) throw InputError("MagicUnitary: entries must be K x K");
}

MagicDiagnostics validate_magic(const MagicUnitary& u, double tol) {
  MagicDiagnostics d;
  d.tol = tol;
  const int n = u.size();
  const auto k = u.dim();
  const CMatrix id = CMatrix::Identity(k, k);
  for (int i = 0; i < n; ++i) {
    CMatrix row = CMatrix::Zero(k, k), col = CMatrix::Zero(k, k);
    for (int j = 0; j < n; ++j) {
      const CMatrix& p = u(i, j);
      d.projection_defect = std::max({d.projection_defect, max_abs_diff(p * p, p), max_abs_diff(p, p.adjoint())});
      row += u(i, j);
      col += u(j, i);
    }
    d.sum_defect = std::max({d.sum_defect, max_abs_diff(row, id), max_abs_diff(col, id)});
  }
  d.passes = d.projection_defect <= tol && d.sum_defect <= tol;
  return d;
}

MagicBasis::MagicBasis(int size, std::vector<UnitVector> vectors, double tol)
    : size_(size), vectors_(std::move(vectors)) {
  if (size_ < 1 || vectors_.size() != static_cast<std::size_t>(size_) * static_cast<std::size_t>(size_)) {
    throw InputError("MagicBasis: expected N*N vectors");
  }
  const auto k = vectors_.front().dim();
  for (const auto& v : vectors_)
    if (v.dim() != k) throw InputError("MagicBasis: vectors of mixed dimension");
  const double defect = orthogonality_defect();
  if (defect > tol) {
    throw InputError("MagicBasis: rows/columns not orthogonal (defect " + std::to_string(defect) + ")");
  }
}

CMatrix MagicBasis::stacked() const {
  CMatrix out(dim(), static_cast<Eigen::Index>(vectors_.size()));
  for (std::size_t c = 0; c < vectors_.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = vectors_[c].entries();
  return out;
}

MagicUnitary MagicBasis::projectors() const {
  std::vector<CMatrix> grid;
  grid.reserve(vectors_.size());
  for (const auto& v : vectors_) grid.push_back(proj(v));
  return MagicUnitary(size_, std::move(grid));
}

double MagicBasis::orthogonality_defect() const {
  double worst = 0.0;
  const int n = size_;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        worst = std::max(worst, std::abs((*this)(a, b).entries().dot((*this)(a, c).entries())));
        worst = std::max(worst, std::abs((*this)(b, a).entries().dot((*this)(c, a).entries())));
      }
  return worst;
}

FlatModel::FlatModel(std::vector<ModelPoint> points, double tol) : points_(std::move(points)) {
  if (points_.empty()) throw InputError("FlatModel: no points");
  const int n = points_.front().basis.size();
  const auto k = points_.front().basis.dim();
  double total = 0.0;
  for (std::size_t x = 0; x < points_.size(); ++x) {
    const auto& pt = points_[x];
    if (!(pt.weight > 0.0)) throw InputError("FlatModel: weights must be positive");
    total += pt.weight;
    if (pt.basis.size() != n || pt.basis.dim() != k) throw InputError("FlatModel: points disagree on N or K");
    for (int i = 0; i < n; ++i) {
      int in_row = 0, in_col = 0;
      for (int j = 0; j < n; ++j) {
        in_row += !pt.basis(i, j).is_zero();
        in_col += !pt.basis(j, i).is_zero();
      }
      if (in_row != k || in_col != k) {
        throw InputError("FlatModel: point " + std::to_string(x) + " row/column " + std::to_string(i) +
                         " does not hold K unit vectors; projectors would not sum to the identity");
      }
    }
  }
  if (std::abs(total - 1.0) > tol) throw InputError("FlatModel: weights sum to " + std::to_string(total));
}

Json FlatModel::to_json() const {
  Json pts = Json::array();
  for (const auto& pt : points_) {
    Json vecs = Json::array();
    for (const auto& v : pt.basis.vectors()) vecs.push_back(vector_to_json(v.entries()));
    pts.push_back({{"weight", pt.weight}, {"vectors", vecs}});
  }
  return {{"size", size()}, {"dim", dim()}, {"points", pts}};
}

FlatModel FlatModel::from_json(const Json& j, double tol) {
  if (!j.is_object() || !j.contains("size") || !j.contains("dim") || !j.contains("points")) {
    throw InputError("model JSON needs size, dim and points");
  }
  const int n = j.at("size").get<int>();
  const auto k = j.at("dim").get<Eigen::Index>();
  if (n < 1 || k < 1) throw InputError("model size and dim must be positive");
  if (!j.at("points").is_array()) throw InputError("model points must be an array");
  require_model_size(j.at("points").size(), n, k);
  std::vector<ModelPoint> points;
  for (const auto& pt : j.at("points")) {
    const auto& vecs = pt.at("vectors");
    if (!vecs.is_array() || vecs.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
      throw InputError("model point must list N*N vectors");
    }
    std::vector<UnitVector> vectors;
    for (const auto& v : vecs) {
      CVector e = vector_from_json(v);
      if (e.size() != k) throw InputError("model vector has wrong dimension");
      vectors.emplace_back(std::move(e), tol);
    }
    points.push_back({pt.at("weight").get<double>(), MagicBasis(n, std::move(vectors), tol)});
  }
  return FlatModel(std::move(points), tol);
}

}  // namespace qpg
