#include <gtest/gtest.h>

#include <cmath>

#include "qpg/errors.hpp"
#include "qpg/hadamard.hpp"
#include "qpg/json_io.hpp"
#include "qpg/linalg.hpp"
#include "qpg/parallel.hpp"

namespace qpg {
namespace {

const Complex I{0.0, 1.0};

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

TEST(Proj, StandardBasisVector) {
  const UnitVector v(CVector::Unit(2, 0));
  EXPECT_LE(max_abs_diff(proj(v), mat2(1, 0, 0, 0)), 1e-15);
}

TEST(Proj, DiagonalVector) {
  CVector v(2);
  v << 1, 1;
  const CMatrix p = proj(UnitVector(v / std::sqrt(2.0)));
  EXPECT_LE(max_abs_diff(p, mat2(0.5, 0.5, 0.5, 0.5)), 1e-15);
}

TEST(Proj, ZeroVectorGivesZeroMatrix) {
  const CMatrix p = proj(UnitVector::zero(3));
  EXPECT_EQ(p.rows(), 3);
  EXPECT_EQ(p.norm(), 0.0);
}

TEST(Proj, RejectsDimensionZeroAndBadNorm) {
  EXPECT_THROW(UnitVector(CVector(0)), InputError);
  EXPECT_THROW(UnitVector(CVector::Constant(2, 1.0)), InputError);
}

TEST(IsProjection, Examples) {
  EXPECT_TRUE(is_projection(CMatrix::Identity(2, 2), 1e-9));
  EXPECT_FALSE(is_projection(mat2(0, 1, 0, 0), 1e-9));
  CVector v(2);
  v << 1, I;
  const CMatrix p = proj(UnitVector(v / std::sqrt(2.0)));
  // oracle: explicit product against the closed form (1/2)[[1, -i], [i, 1]]
  EXPECT_LE(max_abs_diff(p, mat2(0.5, -0.5 * I, 0.5 * I, 0.5)), 1e-15);
  EXPECT_TRUE(is_projection(p, 1e-9));
  EXPECT_FALSE(is_projection(CMatrix::Identity(2, 3), 1e-9));
}

TEST(Proj, RandomUnitVectorsGiveTraceOneProjections) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    CVector v(5);
    for (auto& z : v) z = rng.complex_normal();
    const CMatrix p = proj(UnitVector::normalized(v));
    EXPECT_TRUE(is_projection(p, 1e-9));
    EXPECT_NEAR(p.trace().real(), 1.0, 1e-9);
    EXPECT_NEAR(p.trace().imag(), 0.0, 1e-12);
  }
}

TEST(Haar, SizeOneIsUnitScalar) {
  const CMatrix u = haar_unitary(1, 3);
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-12);
}

TEST(Haar, Unitary) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_LE(unitarity_defect(haar_unitary(3, seed)), 1e-10);
}

TEST(Haar, ReproducibleForFixedSeed) {
  EXPECT_EQ(max_abs_diff(haar_unitary(4, 99), haar_unitary(4, 99)), 0.0);
  EXPECT_GT(max_abs_diff(haar_unitary(4, 99), haar_unitary(4, 100)), 1e-3);
}

TEST(Haar, SecondTraceMomentIsOne) {
  // E|Tr U|^2 = 1 on U_n (n >= 1); for n = 2 the variance of |Tr U|^2 is 1.
  constexpr int kSamples = 100000;
  Rng rng(2024);
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < kSamples; ++s) {
    const double t = std::norm(haar_unitary(2, rng).trace());
    sum += t;
    sum_sq += t * t;
  }
  const double mean = sum / kSamples;
  const double se = std::sqrt((sum_sq / kSamples - mean * mean) / kSamples);
  EXPECT_NEAR(mean, 1.0, 3 * se);
}

TEST(Haar, PhasesAreUniform) {
  // A non-Haar QR (no phase correction) biases diag(U); here E[U_00] = 0.
  constexpr int kSamples = 20000;
  Rng rng(5);
  Complex sum = 0.0;
  for (int s = 0; s < kSamples; ++s) sum += haar_unitary(3, rng)(0, 0);
  EXPECT_LE(std::abs(sum / double(kSamples)), 5.0 / std::sqrt(double(kSamples)));
}

TEST(Gram, Examples) {
  const std::vector<UnitVector> basis{UnitVector(CVector::Unit(2, 0)), UnitVector(CVector::Unit(2, 1))};
  EXPECT_LE(max_abs_diff(gram(basis), CMatrix::Identity(2, 2)), 1e-15);
  const std::vector<UnitVector> same{UnitVector(CVector::Unit(2, 0)), UnitVector(CVector::Unit(2, 0))};
  EXPECT_LE(max_abs_diff(gram(same), CMatrix::Ones(2, 2)), 1e-15);
}

TEST(Gram, FourierRowsAreOrthonormal) {
  const std::vector<int> cycles{4};
  const CMatrix f = fourier_matrix(cycles).matrix();
  std::vector<UnitVector> rows;
  for (int i = 0; i < 4; ++i) rows.emplace_back(CVector(f.row(i).transpose() / 2.0));
  // oracle: sum_l conj(w^{il}) w^{jl} / 4 = delta_ij by direct summation
  const Complex w = std::polar(1.0, 2 * M_PI / 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Complex s = 0.0;
      for (int l = 0; l < 4; ++l) s += std::conj(std::pow(w, i * l)) * std::pow(w, j * l) / 4.0;
      EXPECT_NEAR(std::abs(gram(rows)(i, j) - s), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(s - (i == j ? 1.0 : 0.0)), 0.0, 1e-12);
    }
}

TEST(Gram, LinearInSecondArgument) {
  CVector a = CVector::Unit(2, 0), b = I * CVector::Unit(2, 0);
  const std::vector<UnitVector> vs{UnitVector(a), UnitVector(b)};
  EXPECT_NEAR(std::abs(gram(vs)(0, 1) - I), 0.0, 1e-15);
}

TEST(Gram, RejectsMixedDimensions) {
  const std::vector<UnitVector> vs{UnitVector(CVector::Unit(2, 0)), UnitVector(CVector::Unit(3, 0))};
  EXPECT_THROW(gram(vs), InputError);
}

TEST(Gram, AlwaysPositiveSemidefinite) {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<UnitVector> vs;
    for (int k = 0; k < 7; ++k) {
      CVector v(4);
      for (auto& z : v) z = rng.complex_normal();
      vs.push_back(UnitVector::normalized(v));
    }
    EXPECT_GE(min_hermitian_eigenvalue(gram(vs)), -1e-8);
  }
}

TEST(Kron, LeftFactorMostSignificant) {
  CVector a(2), b(3);
  a << 1, 2;
  b << 3, 4, 5;
  const CVector k = kron(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(k(i * 3 + j), a(i) * b(j));
}

TEST(MatrixJson, RoundTripAndErrors) {
  const CMatrix m = haar_unitary(3, 1);
  EXPECT_EQ(max_abs_diff(matrix_from_json(matrix_to_json(m)), m), 0.0);
  EXPECT_THROW(matrix_from_json(Json{{"rows", 2}, {"cols", 2}, {"entries", Json::array()}}), InputError);
  EXPECT_THROW(matrix_from_json(Json::array()), InputError);
}

TEST(Parallel, ReductionIndependentOfThreadCount) {
  auto run = [] {
    return chunked_reduce(
        1000, 7, 0.0,
        [](std::size_t b, std::size_t e) {
          double s = 0.0;
          for (std::size_t i = b; i < e; ++i) s += 1.0 / (1.0 + double(i));
          return s;
        },
        [](double x, double y) { return x + y; });
  };
  setenv("QPG_THREADS", "1", 1);
  const double one = run();
  setenv("QPG_THREADS", "4", 1);
  const double four = run();
  unsetenv("QPG_THREADS");
  EXPECT_EQ(one, four);
}

TEST(RngTest, DocumentedUniformConstruction) {
  Rng a(42), b(42);
  std::mt19937_64 raw(42);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.uniform(), double(raw() >> 11) * 0x1.0p-53);
  EXPECT_EQ(b.bits(), std::mt19937_64(42)());
}

}  // namespace
}  // namespace qpg
