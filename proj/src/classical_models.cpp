#include <string>

#include "qpg/errors.hpp"
#include "qpg/model.hpp"

namespace qpg {

using perm::LatinSquare;
using perm::Permutation;
using perm::PermGroup;

FlatModel latin_square_model(const PermGroup& group, std::span<const LatinSquare> squares,
                             std::span<const CMatrix> frames) {
  const int n = group.degree();
  if (squares.empty() || frames.empty()) throw InputError("latin_square_model: need at least one square and one frame");
  for (const auto& f : frames) {
    if (f.rows() != n || f.cols() != n || unitarity_defect(f) > kExactTol) {
      throw InputError("latin_square_model: frames must be N x N unitaries");
    }
  }
  require_model_size(squares.size() * frames.size(), n, n);
  const double weight = 1.0 / (static_cast<double>(squares.size()) * static_cast<double>(frames.size()));
  std::vector<ModelPoint> points;
  points.reserve(squares.size() * frames.size());
  for (const auto& square : squares) {
    if (square.order() != n) throw InputError("latin_square_model: square order differs from the group degree");
    const auto rows = square.rows();
    for (int k = 0; k < n; ++k) {
      if (!group.contains(rows[static_cast<std::size_t>(k)])) {
        throw InputError("latin_square_model: row " + std::to_string(k + 1) + " is not an element of the group");
      }
    }
    // slot[i*n + j] = k with sigma_k(j) = i
    std::vector<int> slot(static_cast<std::size_t>(n * n));
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) slot[static_cast<std::size_t>(square(k, j) * n + j)] = k;
    for (const auto& frame : frames) {
      std::vector<UnitVector> vectors;
      vectors.reserve(slot.size());
      for (int s : slot) vectors.emplace_back(CVector(frame.col(s)));
      points.push_back({weight, MagicBasis(n, std::move(vectors))});
    }
  }
  return FlatModel(std::move(points));
}

FlatModel regular_model(const PermGroup& regular) {
  const int n = regular.degree();
  if (regular.order() != static_cast<std::size_t>(n)) {
    throw InputError("regular_model: degree " + std::to_string(n) + " differs from the order " +
                     std::to_string(regular.order()));
  }
  require_model_size(1, n, n);
  // owner[i*n + j] = index of the element g with g(j) = i
  std::vector<int> owner(static_cast<std::size_t>(n * n), -1);
  for (int g = 0; g < n; ++g)
    for (int j = 0; j < n; ++j) {
      auto& cell = owner[static_cast<std::size_t>(regular[static_cast<std::size_t>(g)](j) * n + j)];
      if (cell != -1) throw InputError("regular_model: action is not regular");
      cell = g;
    }
  std::vector<UnitVector> vectors;
  vectors.reserve(owner.size());
  for (int g : owner) vectors.emplace_back(CVector(CVector::Unit(n, g)));
  std::vector<ModelPoint> points;
  points.push_back({1.0, MagicBasis(n, std::move(vectors))});
  return FlatModel(std::move(points));
}

FlatModel permutation_grid_model(const PermGroup& group) {
  const int n = group.degree();
  require_model_size(group.order(), n, 1);
  const double weight = 1.0 / static_cast<double>(group.order());
  std::vector<ModelPoint> points;
  points.reserve(group.order());
  for (const auto& sigma : group.elements()) {
    std::vector<UnitVector> vectors;
    vectors.reserve(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        vectors.push_back(sigma(j) == i ? UnitVector(CVector::Ones(1)) : UnitVector::zero(1));
    points.push_back({weight, MagicBasis(n, std::move(vectors))});
  }
  return FlatModel(std::move(points));
}

MagicUnitary permutation_magic(const Permutation& sigma) {
  const int n = sigma.degree();
  std::vector<CMatrix> grid;
  grid.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) grid.push_back(CMatrix::Constant(1, 1, sigma(j) == i ? 1.0 : 0.0));
  return MagicUnitary(n, std::move(grid));
}

}  // namespace qpg
