#pragma once

#include <span>
#include <vector>

#include "qpg/linalg.hpp"
#include "qpg/magic.hpp"
#include "qpg/model.hpp"

namespace qpg {

/// Largest |H| accepted by weyl_basis.
inline constexpr int kMaxWeylBase = 16;

/// Clock/shift unitaries g_(i,a) = (x)_c X_c^{a_c} Z_c^{i_c} for G = H x H^,
/// H = Z_{n_1} x ... x Z_{n_s}. X is the shift |l> -> |l+1>, Z the clock
/// diag(w^l), w = exp(2 pi i / n_c). Index (i, a) is flattened as i*n + a with
/// i, a themselves flattened row-major over the cycles. Index 0 is the identity.
class WeylBasis {
 public:
  explicit WeylBasis(std::vector<int> cycles);

  const std::vector<int>& cycles() const { return cycles_; }
  /// n = |H|, the matrix size.
  int base_order() const { return n_; }
  /// N = n^2 = |G|.
  int order() const { return n_ * n_; }
  const CMatrix& operator[](int k) const { return elements_[static_cast<std::size_t>(k)]; }
  const std::vector<CMatrix>& elements() const { return elements_; }

  /// Group law of G (componentwise addition), on flat indices.
  int mul(int k, int l) const { return mul_[static_cast<std::size_t>(k * order() + l)]; }
  int inv(int k) const { return inv_[static_cast<std::size_t>(k)]; }

  /// max |tr(g_k^* g_l) - delta_kl| over the normalized trace.
  double orthogonality_defect() const;

 private:
  std::vector<int> cycles_;
  int n_ = 1;
  std::vector<CMatrix> elements_;
  std::vector<int> mul_;
  std::vector<int> inv_;
};

/// sigma(k, l) with g_k g_l = sigma(k, l) g_{kl}.
class Cocycle {
 public:
  Cocycle(int order, std::vector<Complex> table) : order_(order), table_(std::move(table)) {}
  int order() const { return order_; }
  Complex operator()(int k, int l) const { return table_[static_cast<std::size_t>(k * order_ + l)]; }
  const std::vector<Complex>& table() const { return table_; }

 private:
  int order_;
  std::vector<Complex> table_;
};

/// sigma(k, l) = tr(g_{kl}^* g_k g_l). Throws InvariantViolation when some
/// |sigma(k, l)| is not 1 within tol (g_k g_l not a multiple of g_{kl}).
Cocycle extract_cocycle(const WeylBasis& basis, double tol = kExactTol);

/// max over all triples of |sigma(gh,k) sigma(g,h) - sigma(g,hk) sigma(h,k)|,
/// together with the normalization sigma(g,1) = sigma(1,g) = 1.
double cocycle_residual(const WeylBasis& basis, const Cocycle& sigma);

/// For H = Z_2: the scalars c_k with g_k = c_k W_k against the Pauli-type
/// matrices W00 = I, W01 = [[0,1],[1,0]], W10 = diag(1,-1), W11 = [[0,-1],[1,0]],
/// in index order (0,0), (0,1), (1,0), (1,1).
std::vector<Complex> pauli_scalars(const WeylBasis& basis);

struct WeightedUnitary {
  CMatrix x;
  double weight;
};

/// M Haar unitaries of size n with weight 1/M each, drawn sequentially from one
/// Rng(seed).
std::vector<WeightedUnitary> haar_samples(int n, std::size_t samples, std::uint64_t seed);

/// xi_ij = vec(g_i x g_j^*) / sqrt(n) (row-major vec) at every sample point;
/// K = N = n^2. Throws InputError for a non-unitary sample or bad weights.
FlatModel weyl_model(const WeylBasis& basis, std::span<const WeightedUnitary> samples);

/// T_p from the cocycle prefactors and the sample average of
/// prod_t tr(g_{i_t^{-1} i_{t+1}} x g_{j_{t+1}^{-1} j_t} x^*), cyclic in t.
MomentTensor t_matrix_closed_form(const WeylBasis& basis, const Cocycle& sigma,
                                  std::span<const WeightedUnitary> samples, int p,
                                  long long cap = kDefaultTensorCap);

struct WeylMoments {
  std::vector<double> moments;  // moments[p-1] = c_p
  std::vector<double> stderrs;
};

/// c_p = sum over j_1 ... j_p = 1 of E prod_t tr(g_{j_t} x g_{j_t}^* x^*), the
/// p-th moment of the main character (not normalized by N^p).
WeylMoments weyl_character_moments(const WeylBasis& basis, std::span<const WeightedUnitary> samples, int p_max);

}  // namespace qpg
