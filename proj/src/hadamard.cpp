#include "qpg/hadamard.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "qpg/errors.hpp"

namespace qpg {

HadamardDiagnostics validate_hadamard(const CMatrix& m, double tol) {
  HadamardDiagnostics d;
  d.tol = tol;
  if (m.rows() != m.cols() || m.rows() == 0) {
    d.modulus_defect = d.orthogonality_defect = std::numeric_limits<double>::infinity();
    return d;
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d.modulus_defect = std::max(d.modulus_defect, std::abs(std::abs(m(i, j)) - 1.0));
  const CMatrix g = m * m.adjoint();
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index k = 0; k < g.cols(); ++k)
      if (i != k) d.orthogonality_defect = std::max(d.orthogonality_defect, std::abs(g(i, k)));
  d.passes = d.modulus_defect <= tol && d.orthogonality_defect <= tol * static_cast<double>(m.rows());
  return d;
}

HadamardMatrix::HadamardMatrix(CMatrix m, double tol) : matrix_(std::move(m)) {
  const auto d = validate_hadamard(matrix_, tol);
  if (!d.passes) {
    throw InputError("not a complex Hadamard matrix: modulus defect " + std::to_string(d.modulus_defect) +
                     ", orthogonality defect " + std::to_string(d.orthogonality_defect));
  }
}

Json HadamardMatrix::to_json() const {
  Json j = matrix_to_json(matrix_);
  j["kind"] = "hadamard";
  return j;
}

HadamardMatrix HadamardMatrix::from_json(const Json& j, double tol) {
  if (j.is_object() && j.contains("kind") && j.at("kind") != "hadamard") {
    throw InputError("expected kind \"hadamard\"");
  }
  return HadamardMatrix(matrix_from_json(j), tol);
}

std::vector<int> parse_cycle_sizes(std::string_view spec) {
  std::vector<int> out;
  while (true) {
    const auto cut = spec.find('x');
    const auto token = spec.substr(0, cut);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value < 1) {
      throw InputError("bad cycle size '" + std::string(token) + "'");
    }
    out.push_back(value);
    if (cut == std::string_view::npos) break;
    spec.remove_prefix(cut + 1);
  }
  return out;
}

namespace {

CMatrix cyclic_fourier(int n) {
  CMatrix f(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f(i, j) = std::polar(1.0, 2.0 * std::numbers::pi * ((i * j) % n) / n);
  return f;
}

CMatrix fourier_product(std::span<const int> cycles) {
  if (cycles.empty()) throw InputError("empty cycle list");
  long long total = 1;
  for (int c : cycles) {
    if (c < 1) throw InputError("cycle sizes must be positive");
    total *= c;
    if (total > kMaxHadamardSize) throw CapExceeded("Fourier matrix too large", kMaxHadamardSize);
  }
  CMatrix out = CMatrix::Ones(1, 1);
  for (int c : cycles) out = kron(out, cyclic_fourier(c));
  return out;
}

}  // namespace

HadamardMatrix fourier_matrix(std::span<const int> cycles) { return HadamardMatrix(fourier_product(cycles)); }

DeformationParam::DeformationParam(CMatrix q, double tol) : q_(std::move(q)) {
  for (Eigen::Index i = 0; i < q_.rows(); ++i)
    for (Eigen::Index b = 0; b < q_.cols(); ++b)
      if (std::abs(std::abs(q_(i, b)) - 1.0) > tol) throw InputError("deformation parameter Q must be unimodular");
}

DeformationParam DeformationParam::random(int rows, int cols, Rng& rng) {
  CMatrix q(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int b = 0; b < cols; ++b) q(i, b) = rng.unit_phase();
  return DeformationParam(std::move(q));
}

DeformationParam DeformationParam::ones(int rows, int cols) { return DeformationParam(CMatrix::Ones(rows, cols)); }

HadamardMatrix dita_deform(std::span<const int> left, std::span<const int> right, const DeformationParam& q) {
  const CMatrix fg = fourier_product(left);
  const CMatrix fh = fourier_product(right);
  const auto m = fg.rows(), n = fh.rows();
  if (m * n > kMaxHadamardSize) throw CapExceeded("deformed Fourier matrix too large", kMaxHadamardSize);
  if (q.q().rows() != m || q.q().cols() != n) throw InputError("Q must be |G| x |H|");
  CMatrix out(m * n, m * n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index b = 0; b < n; ++b) out(i * n + a, j * n + b) = q.q()(i, b) * fg(i, j) * fh(a, b);
  return HadamardMatrix(std::move(out));
}

MagicBasis magic_from_hadamard(const HadamardMatrix& h) {
  const int n = h.size();
  require_model_size(1, n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const CMatrix& m = h.matrix();
  std::vector<UnitVector> vectors;
  vectors.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CVector v = (m.row(i).array() / m.row(j).array()).transpose() * scale;
      vectors.emplace_back(std::move(v));
    }
  return MagicBasis(n, std::move(vectors));
}

CMatrix dephase(const CMatrix& h) {
  CMatrix r(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index l = 0; l < h.cols(); ++l) r(i, l) = h(i, l) * h(0, 0) / (h(i, 0) * h(0, l));
  return r;
}

HadamardTypeResult magic_basis_is_hadamard_type(const MagicBasis& xi, double tol) {
  const int n = xi.size();
  if (xi.dim() != n) throw InputError("Hadamard-type test needs K = N");
  HadamardTypeResult result;
  auto fail = [&](std::string what, double defect) {
    result.violation = std::move(what);
    result.defect = defect;
    return result;
  };

  // Rescaling by the first coordinate needs every entry nonzero.
  for (const auto& v : xi.vectors())
    for (Eigen::Index l = 0; l < n; ++l)
      if (std::abs(v.entries()(l)) <= tol) return fail("zero entry", std::abs(v.entries()(l)));

  std::vector<CVector> eta;
  eta.reserve(xi.vectors().size());
  for (const auto& v : xi.vectors()) eta.push_back(v.entries() / v.entries()(0));
  auto at = [&](int i, int j) -> const CVector& { return eta[static_cast<std::size_t>(i * n + j)]; };

  double worst = 0.0;
  for (const auto& e : eta)
    for (Eigen::Index l = 0; l < n; ++l) worst = std::max(worst, std::abs(std::abs(e(l)) - 1.0));
  if (worst > tol) return fail("not unimodular", worst);

  const CVector ones = CVector::Ones(n);
  for (int i = 0; i < n; ++i) worst = std::max(worst, (at(i, i) - ones).cwiseAbs().maxCoeff());
  if (worst > tol) return fail("diagonal not all-one", worst);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        worst = std::max(worst, (at(i, j).cwiseProduct(at(j, k)) - at(i, k)).cwiseAbs().maxCoeff());
  if (worst > tol) return fail("xi_ij xi_jk != xi_ik", worst);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          worst = std::max(worst, (at(i, j).cwiseProduct(at(k, l)) - at(i, l).cwiseProduct(at(k, j))).cwiseAbs().maxCoeff());
  if (worst > tol) return fail("xi_ij xi_kl != xi_il xi_kj", worst);

  CMatrix h(n, n);
  for (int i = 0; i < n; ++i) h.row(i) = at(i, 0).transpose();
  result.matrix = HadamardMatrix(std::move(h), std::max(tol, kExactTol));
  return result;
}

namespace {

int log2_exact(Eigen::Index len) {
  if (len < 1 || (len & (len - 1)) != 0) throw InputError("length must be a power of two");
  int n = 0;
  while ((Eigen::Index{1} << n) < len) ++n;
  return n;
}

CVector walsh_hadamard(CVector v) {
  const Eigen::Index len = v.size();
  for (Eigen::Index h = 1; h < len; h <<= 1)
    for (Eigen::Index i = 0; i < len; i += 2 * h)
      for (Eigen::Index k = i; k < i + h; ++k) {
        const Complex a = v(k), b = v(k + h);
        v(k) = a + b;
        v(k + h) = a - b;
      }
  return v;
}

}  // namespace

CVector z2n_fourier_forward(const CVector& f) {
  const int n = log2_exact(f.size());
  return walsh_hadamard(f) * std::ldexp(1.0, -n);
}

CVector z2n_fourier_inverse(const CVector& f) {
  log2_exact(f.size());
  return walsh_hadamard(f);
}

CMatrix z2n_fourier_kernel(int n, bool forward) {
  if (n < 0 || n > 12) throw InputError("n out of range");
  const Eigen::Index len = Eigen::Index{1} << n;
  CMatrix k(len, len);
  for (Eigen::Index c = 0; c < len; ++c) {
    CVector e = CVector::Zero(len);
    e(c) = 1.0;
    k.col(c) = forward ? z2n_fourier_forward(e) : z2n_fourier_inverse(e);
  }
  return k;
}

}  // namespace qpg
