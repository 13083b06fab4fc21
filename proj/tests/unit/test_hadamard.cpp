#include <gtest/gtest.h>

#include <cmath>

#include "qpg/errors.hpp"
#include "qpg/hadamard.hpp"
#include "qpg/model.hpp"

namespace qpg {
namespace {

const Complex I{0.0, 1.0};

HadamardMatrix fourier(std::vector<int> cycles) { return fourier_matrix(cycles); }

// Oracle: explicit Kronecker product of cyclic Fourier matrices built by the
// power formula.
CMatrix fourier_oracle(const std::vector<int>& cycles) {
  CMatrix out = CMatrix::Ones(1, 1);
  for (int n : cycles) {
    CMatrix f(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) f(i, j) = std::polar(1.0, 2 * M_PI * i * j / n);
    CMatrix next(out.rows() * n, out.cols() * n);
    for (Eigen::Index a = 0; a < out.rows(); ++a)
      for (Eigen::Index b = 0; b < out.cols(); ++b) next.block(a * n, b * n, n, n) = out(a, b) * f;
    out = next;
  }
  return out;
}

TEST(ValidateHadamard, Examples) {
  CMatrix f2(2, 2);
  f2 << 1, 1, 1, -1;
  EXPECT_TRUE(validate_hadamard(f2).passes);
  const auto ones = validate_hadamard(CMatrix::Ones(2, 2));
  EXPECT_FALSE(ones.passes);
  EXPECT_NEAR(ones.orthogonality_defect, 2.0, 1e-15);
  EXPECT_TRUE(validate_hadamard(fourier({4}).matrix()).passes);
  CMatrix scaled = f2 * 1.1;
  EXPECT_NEAR(validate_hadamard(scaled).modulus_defect, 0.1, 1e-12);
  EXPECT_FALSE(validate_hadamard(CMatrix::Ones(2, 3)).passes);
  EXPECT_THROW(HadamardMatrix(CMatrix::Ones(2, 2)), InputError);
}

TEST(Fourier, Examples) {
  CMatrix f2(2, 2);
  f2 << 1, 1, 1, -1;
  EXPECT_LE(max_abs_diff(fourier({2}).matrix(), f2), 1e-15);
  const CMatrix f4 = fourier({4}).matrix();
  const Complex row1[] = {1.0, I, -1.0, -I};
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(f4(1, j) - row1[j]), 0.0, 1e-15);
  for (const auto& cycles : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {3, 2}, {2, 2, 2}, {5}})
    EXPECT_LE(max_abs_diff(fourier(cycles).matrix(), fourier_oracle(cycles)), 1e-12);
}

TEST(Fourier, ParseAndCap) {
  EXPECT_EQ(parse_cycle_sizes("2x3"), (std::vector<int>{2, 3}));
  EXPECT_EQ(parse_cycle_sizes("4"), (std::vector<int>{4}));
  EXPECT_THROW(parse_cycle_sizes("2xx3"), InputError);
  EXPECT_THROW(parse_cycle_sizes("0"), InputError);
  EXPECT_THROW(fourier({64, 32}), CapExceeded);
}

TEST(Dita, OnesGivesFourier) {
  const std::vector<int> g{2}, h{3};
  const auto d = dita_deform(g, h, DeformationParam::ones(2, 3));
  EXPECT_LE(max_abs_diff(d.matrix(), fourier({2, 3}).matrix()), 1e-12);
  // Z2 x Z3 = Z6 by k -> (k mod 2, k mod 3); (-1)^{kl} w3^{kl} = w6^{5kl}, so
  // the column index picks up the automorphism l -> 5l.
  const CMatrix f6 = fourier({6}).matrix();
  auto label = [](int k) { return (k % 2) * 3 + (k % 3); };
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) EXPECT_NEAR(std::abs(d.matrix()(label(r), label(c)) - f6(r, (5 * c) % 6)), 0.0, 1e-12);
}

TEST(Dita, RandomDeformationsStayHadamard) {
  for (auto [g, h] : std::vector<std::pair<std::vector<int>, std::vector<int>>>{{{2}, {2}}, {{2}, {3}}, {{3}, {2, 2}}}) {
    int m = 1, n = 1;
    for (int c : g) m *= c;
    for (int c : h) n *= c;
    Rng rng(77);
    for (int s = 0; s < 50; ++s) {
      const auto q = DeformationParam::random(m, n, rng);
      CMatrix direct(m * n, m * n);
      const CMatrix fg = fourier_oracle(g), fh = fourier_oracle(h);
      for (int i = 0; i < m; ++i)
        for (int a = 0; a < n; ++a)
          for (int j = 0; j < m; ++j)
            for (int b = 0; b < n; ++b) direct(i * n + a, j * n + b) = q.q()(i, b) * fg(i, j) * fh(a, b);
      const auto d = dita_deform(g, h, q);
      EXPECT_LE(max_abs_diff(d.matrix(), direct), 1e-12);
      EXPECT_TRUE(validate_hadamard(d.matrix()).passes);
    }
  }
}

TEST(Dita, RejectsBadQ) {
  EXPECT_THROW(DeformationParam(CMatrix::Constant(2, 2, 0.5)), InputError);
  const std::vector<int> g{2}, h{2};
  EXPECT_THROW(dita_deform(g, h, DeformationParam::ones(2, 3)), InputError);
}

TEST(MagicFromHadamard, F2Vectors) {
  const auto xi = magic_from_hadamard(fourier({2}));
  const double r = 1 / std::sqrt(2.0);
  CVector plus(2), minus(2);
  plus << r, r;
  minus << r, -r;
  EXPECT_LE((xi(0, 0).entries() - plus).norm(), 1e-15);
  EXPECT_LE((xi(1, 1).entries() - plus).norm(), 1e-15);
  EXPECT_LE((xi(0, 1).entries() - minus).norm(), 1e-15);
  EXPECT_LE((xi(1, 0).entries() - minus).norm(), 1e-15);
}

TEST(MagicFromHadamard, RowsOrthonormalAndMagic) {
  Rng rng(4);
  const std::vector<int> g{2}, h{3};
  for (const auto& hm : {fourier({4}), fourier({2, 2, 2}), dita_deform(g, h, DeformationParam::random(2, 3, rng))}) {
    const auto xi = magic_from_hadamard(hm);
    const int n = hm.size();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          EXPECT_NEAR(std::abs(xi(i, j).entries().dot(xi(i, k).entries()) - (j == k ? 1.0 : 0.0)), 0.0, 1e-10);
    const auto diag = validate_magic(xi.projectors(), 1e-9);
    EXPECT_TRUE(diag.passes);
    EXPECT_LE(diag.sum_defect, 1e-9);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) EXPECT_NEAR(normalized_trace(proj(xi(i, j))).real(), 1.0 / n, 1e-12);
  }
}

TEST(HadamardType, RoundTripRecoversDephasedMatrix) {
  Rng rng(19);
  std::vector<HadamardMatrix> inputs;
  for (auto cycles : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}, {5}, {6}, {7}, {2, 2, 2}, {2, 4}, {8}})
    inputs.push_back(fourier(cycles));
  const std::vector<int> g{2}, h{2}, h3{3};
  for (int s = 0; s < 10; ++s) {
    inputs.push_back(dita_deform(g, h, DeformationParam::random(2, 2, rng)));
    inputs.push_back(dita_deform(g, h3, DeformationParam::random(2, 3, rng)));
  }
  for (const auto& hm : inputs) {
    const auto res = magic_basis_is_hadamard_type(magic_from_hadamard(hm));
    ASSERT_TRUE(res.matrix) << res.violation;
    // oracle: dephased form computed entrywise here
    const CMatrix& m = hm.matrix();
    for (int i = 0; i < hm.size(); ++i)
      for (int l = 0; l < hm.size(); ++l)
        EXPECT_NEAR(std::abs(res.matrix->matrix()(i, l) - m(i, l) * m(0, 0) / (m(i, 0) * m(0, l))), 0.0, 1e-8);
  }
}

TEST(HadamardType, RandomFrameBasisIsNot) {
  // Magic basis from a Latin square over a random frame: xi_ij are columns of a
  // Haar unitary, so the entries are not unimodular up to rescaling.
  const CMatrix u = haar_unitary(4, 31);
  std::vector<UnitVector> vs;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) vs.emplace_back(CVector(u.col((i + j) % 4)));
  const MagicBasis xi(4, std::move(vs));
  const auto res = magic_basis_is_hadamard_type(xi);
  EXPECT_FALSE(res.matrix);
  EXPECT_FALSE(res.violation.empty());
  EXPECT_GT(res.defect, 1e-6);
  // direct evaluation: eta_ij = xi_ij / (xi_ij)_0 entrywise; eta_01 * eta_12 differs from eta_02
  auto eta = [&](int i, int j) { return CVector(xi(i, j).entries().array() / xi(i, j).entries()(0)); };
  const CVector lhs = eta(0, 1).cwiseProduct(eta(1, 2));
  EXPECT_GT((lhs - eta(0, 2)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(HadamardType, ZeroEntryDiagnostic) {
  std::vector<UnitVector> vs;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) vs.emplace_back(CVector(CVector::Unit(2, (i + j) % 2)));
  const auto res = magic_basis_is_hadamard_type(MagicBasis(2, std::move(vs)));
  EXPECT_FALSE(res.matrix);
  EXPECT_EQ(res.violation, "zero entry");
}

TEST(HadamardType, MultiplicativityFailureNamed) {
  // Characters of Z2 x Z2 placed by a Latin square: the xor table is
  // multiplicative, a square with sq[2][0] = 3 but sq[0][2] = 2 is not.
  const CMatrix f = fourier({2, 2}).matrix() / 2.0;
  const int sq[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<UnitVector> good;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) good.emplace_back(CVector(f.row(sq[i][j]).transpose()));
  EXPECT_TRUE(magic_basis_is_hadamard_type(MagicBasis(4, std::move(good))).matrix);
  const int bad[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {3, 2, 0, 1}, {2, 3, 1, 0}};
  std::vector<UnitVector> vs;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) vs.emplace_back(CVector(f.row(bad[i][j]).transpose()));
  const auto res = magic_basis_is_hadamard_type(MagicBasis(4, std::move(vs)));
  EXPECT_FALSE(res.matrix);
  EXPECT_EQ(res.violation, "xi_ij xi_jk != xi_ik");
}

TEST(Z2n, Examples) {
  // n = 1: beta sends delta_g to (1, -1)
  CVector dg = CVector::Unit(2, 1);
  const CVector b = z2n_fourier_inverse(dg);
  EXPECT_NEAR(std::abs(b(0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b(1) + 1.0), 0.0, 1e-15);
  const CVector f = z2n_fourier_forward(CVector::Unit(4, 0));
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(f(j) - 0.25), 0.0, 1e-15);
  EXPECT_THROW(z2n_fourier_forward(CVector::Ones(3)), InputError);
}

TEST(Z2n, RoundTripAndKernel) {
  Rng rng(12);
  for (int n = 0; n <= 6; ++n) {
    const int len = 1 << n;
    CVector v(len);
    for (auto& z : v) z = rng.complex_normal();
    EXPECT_LE((z2n_fourier_inverse(z2n_fourier_forward(v)) - v).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((z2n_fourier_forward(z2n_fourier_inverse(v)) - v).cwiseAbs().maxCoeff(), 1e-12);
    if (n == 0) continue;
    const CMatrix f = fourier_matrix(std::vector<int>(n, 2)).matrix();
    EXPECT_LE(max_abs_diff(z2n_fourier_kernel(n, false), f), 1e-12);
    EXPECT_LE(max_abs_diff(z2n_fourier_kernel(n, true), f / double(len)), 1e-12);
    // kernel entry (-1)^{<i,j>} by popcount
    for (int i = 0; i < len; ++i)
      for (int j = 0; j < len; ++j)
        EXPECT_EQ(z2n_fourier_kernel(n, false)(i, j).real(), __builtin_popcount(i & j) % 2 ? -1.0 : 1.0);
  }
}

TEST(HadamardJson, RoundTrip) {
  const auto h = fourier({2, 3});
  const Json j = h.to_json();
  EXPECT_EQ(j.at("kind"), "hadamard");
  EXPECT_EQ(max_abs_diff(HadamardMatrix::from_json(j).matrix(), h.matrix()), 0.0);
}

TEST(Dephase, FirstRowAndColumnAreOne) {
  Rng rng(2);
  const std::vector<int> g{2}, h{3};
  const CMatrix d = dephase(dita_deform(g, h, DeformationParam::random(2, 3, rng)).matrix());
  for (int k = 0; k < 6; ++k) {
    EXPECT_NEAR(std::abs(d(0, k) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(d(k, 0) - 1.0), 0.0, 1e-12);
  }
}

}  // namespace
}  // namespace qpg
