#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qpg/linalg.hpp"
#include "qpg/magic.hpp"
#include "qpg/permgroup.hpp"

namespace qpg {

/// Largest N^p accepted by the moment-tensor routines (the matrix is N^p x N^p).
inline constexpr long long kDefaultTensorCap = 1024;

// ---------------------------------------------------------------- flatness

enum class Flatness { flat, quasi_flat, neither };
const char* to_string(Flatness f);

struct FlatnessReport {
  Flatness verdict = Flatness::neither;
  std::vector<int> ranks;   // row-major N x N; for models, the max over points
  bool all_nonzero = false;
  /// Worst |tr(P_ij) - rank/K| over the grid (trace of a rank-r projection).
  double trace_defect = 0.0;
};

FlatnessReport flatness(const MagicUnitary& u);
FlatnessReport flatness(const FlatModel& model);

// ---------------------------------------------------------------- moments

/// T_p, rows and columns indexed by p-tuples flattened row-major (first index
/// most significant).
struct MomentTensor {
  int size = 0;
  int order = 0;
  CMatrix matrix;
};

/// Multi-index (i_1..i_p) of a flat tuple index, most significant first.
std::vector<int> tuple_digits(long long index, int size, int order);

/// (T_p)_{I,J} = sum_x w_x (1/K) prod_t <xi_{i_t j_t}, xi_{i_{t+1} j_{t+1}}>,
/// cyclic in t. Throws CapExceeded when N^p > cap.
MomentTensor t_matrix(const FlatModel& model, int p, long long cap = kDefaultTensorCap);

/// max |A^2 - A|.
double idempotency_defect(const CMatrix& a);

struct StationarityReport {
  std::vector<double> defects;  // defects[p-1] = |T_p^2 - T_p|_max
  double tol = 0.0;
  bool stationary = false;
};

StationarityReport stationarity_test(const FlatModel& model, int p_max, double tol,
                                     long long cap = kDefaultTensorCap);

struct CesaroResult {
  /// averages[k-1] = (1/k) sum_{r<=k} T^r, up to the stopping point.
  std::vector<CMatrix> averages;
  /// distances[k-2] = |avg_k - avg_{k-1}|_max.
  std::vector<double> distances;
  bool converged = false;  // stopped because a distance fell below tol/10
};

CesaroResult cesaro_averages(const CMatrix& t, int r_max, double tol);
CesaroResult cesaro_moments(const FlatModel& model, int p, int r_max, double tol,
                            long long cap = kDefaultTensorCap);

struct CharacterLaw {
  int r = 1;
  /// moments[p-1]: moment of chi/N of order p under psi^{*r}.
  std::vector<double> moments;
  /// Sampling standard errors across model points (r = 1 only).
  std::optional<std::vector<double>> stderrs;
  /// Same moments through the Gram matrices of the r-fold tensor vectors,
  /// when the number of point r-tuples allows it.
  std::optional<std::vector<double>> gram_moments;
};

/// Moments of the normalized character sum_i u_ii / N under psi^{*r}: the
/// diagonal sum of T_p^r divided by N^p. For r = 1 only the diagonal of T_p is
/// formed. The Gram route evaluates (1/(N^p K^r)) E Tr(G^p), G the Gram
/// matrix of eta_m = xi^{x_1}_{m_1 m_2} (x) ... (x) xi^{x_r}_{m_r m_1} over
/// m in [N]^r, and runs when (#points)^r <= gram_cap.
CharacterLaw character_law(const FlatModel& model, int r, int p_max, long long cap = kDefaultTensorCap,
                           long long gram_cap = 100000);

// ---------------------------------------------------------------- orbits

struct RelationData {
  int k = 1;
  int size = 0;                    // N; the relation lives on [N]^k
  std::vector<std::vector<bool>> related;  // related[a][b] over flat k-tuples
  bool reflexive = false;
  bool symmetric = false;
  bool transitive = false;
  /// Equivalence classes (flat k-tuples, sorted), filled when the relation is
  /// an equivalence.
  std::vector<std::vector<long long>> classes;
};

/// a ~_k b iff |P_{a_1 b_1} ... P_{a_k b_k}|_max > threshold at some point.
/// For k <= 2 the relation must be an equivalence; InvariantViolation
/// otherwise. k = 3 is computed and reported only.
RelationData orbit_relations(const MagicUnitary& u, int k, double threshold = 10 * kExactTol);
RelationData orbit_relations(const FlatModel& model, int k, double threshold = 10 * kExactTol);

// ---------------------------------------------------------------- transitivity

struct TransitivityVerdict {
  CMatrix estimate;       // Cesaro limit estimate of the integrals of u_ij
  double max_deviation = 0.0;  // from 1/N
  bool transitive = false;
  bool converged = false;
};

TransitivityVerdict transitivity_estimate(const FlatModel& model, int r_max, double tol);

struct DoubleTransitivityVerdict {
  /// Worst deviation of tr(P_ij P_kl) from the doubly transitive table, over points.
  double doubly_flat_defect = 0.0;
  bool doubly_flat = false;
  /// Cesaro estimates of the integrals of u_ij u_kl, against the same table.
  CMatrix estimate;
  double integral_defect = 0.0;
  bool doubly_transitive = false;
  bool converged = false;
  double tol = 0.0;
};

/// Table: 1/N when i = k and j = l; 0 when exactly one of i = k, j = l holds;
/// 1/(N(N-1)) when i != k and j != l (N >= 2).
double double_transitive_table(int n, int i, int j, int k, int l);

DoubleTransitivityVerdict double_transitivity_test(const FlatModel& model, int r_max, double tol);

// ---------------------------------------------------------------- constructions

/// Points (x, y) with weight w_x w_y and xi_{(i,a),(j,b)} = xi_ij^x (x) xi_ab^y,
/// pair indices flattened with the left index most significant.
FlatModel tensor_model(const FlatModel& a, const FlatModel& b);

/// Block-diagonal grid diag(xi^A, xi^B) with zero vectors off the blocks; both
/// models must share K. Points are pairs with product weights.
FlatModel direct_sum_model(const FlatModel& a, const FlatModel& b);

/// Single-point model of a Latin-square tuple: with rows sigma_1..sigma_N of
/// `square`, xi_ij is frame column k where sigma_k(j) = i. Each (square,
/// frame) pair becomes a point of weight 1/(#squares * #frames). Throws
/// InputError naming the first row not in G, or a non-unitary frame.
FlatModel latin_square_model(const perm::PermGroup& group, std::span<const perm::LatinSquare> squares,
                             std::span<const CMatrix> frames);

/// Left-regular model: group acting on itself, K = N = |G|, xi_ij = e_g where
/// g is the element with g(j) = i. Throws InputError unless the action is
/// regular.
FlatModel regular_model(const perm::PermGroup& regular);

/// Classical model with K = 1: one point per element sigma, weight 1/|G|,
/// xi_ij = 1 when sigma(j) = i and 0 otherwise.
FlatModel permutation_grid_model(const perm::PermGroup& group);

/// Single-point grid of one permutation (K = 1).
MagicUnitary permutation_magic(const perm::Permutation& sigma);

}  // namespace qpg
