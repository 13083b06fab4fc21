#include "qpg/weyl.hpp"

#include <cmath>
#include <numbers>

#include "qpg/errors.hpp"
#include "qpg/parallel.hpp"

namespace qpg {

namespace {

/// Row-major digits of a flat index over `cycles`.
std::vector<int> digits_of(int index, const std::vector<int>& cycles) {
  std::vector<int> d(cycles.size());
  for (std::size_t c = cycles.size(); c-- > 0;) {
    d[c] = index % cycles[c];
    index /= cycles[c];
  }
  return d;
}

int index_of(const std::vector<int>& digits, const std::vector<int>& cycles) {
  int idx = 0;
  for (std::size_t c = 0; c < cycles.size(); ++c) idx = idx * cycles[c] + digits[c];
  return idx;
}

CMatrix shift(int m) {
  CMatrix x = CMatrix::Zero(m, m);
  for (int l = 0; l < m; ++l) x((l + 1) % m, l) = 1.0;
  return x;
}

CMatrix clock(int m) {
  CMatrix z = CMatrix::Zero(m, m);
  for (int l = 0; l < m; ++l) z(l, l) = std::polar(1.0, 2.0 * std::numbers::pi * l / m);
  return z;
}

CMatrix power(const CMatrix& a, int e) {
  CMatrix out = CMatrix::Identity(a.rows(), a.cols());
  for (int t = 0; t < e; ++t) out = out * a;
  return out;
}

}  // namespace

WeylBasis::WeylBasis(std::vector<int> cycles) : cycles_(std::move(cycles)) {
  if (cycles_.empty()) cycles_.push_back(1);
  long long n = 1;
  for (int c : cycles_) {
    if (c < 1) throw InputError("Weyl base group: cycle sizes must be positive");
    n *= c;
    if (n > kMaxWeylBase) throw CapExceeded("Weyl base group too large", kMaxWeylBase);
  }
  n_ = static_cast<int>(n);
  const int big_n = n_ * n_;
  elements_.reserve(static_cast<std::size_t>(big_n));
  for (int k = 0; k < big_n; ++k) {
    const auto i = digits_of(k / n_, cycles_);
    const auto a = digits_of(k % n_, cycles_);
    CMatrix g = CMatrix::Ones(1, 1);
    for (std::size_t c = 0; c < cycles_.size(); ++c) g = kron(g, power(shift(cycles_[c]), a[c]) * power(clock(cycles_[c]), i[c]));
    elements_.push_back(std::move(g));
  }
  mul_.resize(static_cast<std::size_t>(big_n * big_n));
  inv_.resize(static_cast<std::size_t>(big_n));
  auto add = [&](int u, int v, bool negate_v) {
    auto du = digits_of(u, cycles_), dv = digits_of(v, cycles_);
    for (std::size_t c = 0; c < cycles_.size(); ++c) {
      const int m = cycles_[c];
      du[c] = ((du[c] + (negate_v ? m - dv[c] : dv[c])) % m + m) % m;
    }
    return index_of(du, cycles_);
  };
  for (int k = 0; k < big_n; ++k) {
    for (int l = 0; l < big_n; ++l)
      mul_[static_cast<std::size_t>(k * big_n + l)] = add(k / n_, l / n_, false) * n_ + add(k % n_, l % n_, false);
    inv_[static_cast<std::size_t>(k)] = add(0, k / n_, true) * n_ + add(0, k % n_, true);
  }
}

double WeylBasis::orthogonality_defect() const {
  double worst = 0.0;
  for (int k = 0; k < order(); ++k)
    for (int l = 0; l < order(); ++l) {
      const Complex t = normalized_trace((*this)[k].adjoint() * (*this)[l]);
      worst = std::max(worst, std::abs(t - Complex(k == l ? 1.0 : 0.0)));
    }
  return worst;
}

Cocycle extract_cocycle(const WeylBasis& basis, double tol) {
  const int big_n = basis.order();
  std::vector<Complex> table(static_cast<std::size_t>(big_n * big_n));
  for (int k = 0; k < big_n; ++k)
    for (int l = 0; l < big_n; ++l) {
      Complex s = normalized_trace(basis[basis.mul(k, l)].adjoint() * basis[k] * basis[l]);
      if (std::abs(std::abs(s) - 1.0) > tol) {
        throw InvariantViolation("basis is not projectively closed at (" + std::to_string(k) + ", " +
                                 std::to_string(l) + "): |sigma| = " + std::to_string(std::abs(s)));
      }
      if (k == 0 || l == 0) s = 1.0;
      table[static_cast<std::size_t>(k * big_n + l)] = s;
    }
  return Cocycle(big_n, std::move(table));
}

double cocycle_residual(const WeylBasis& basis, const Cocycle& sigma) {
  const int big_n = basis.order();
  double worst = 0.0;
  for (int g = 0; g < big_n; ++g) {
    worst = std::max({worst, std::abs(sigma(g, 0) - 1.0), std::abs(sigma(0, g) - 1.0)});
    for (int h = 0; h < big_n; ++h)
      for (int k = 0; k < big_n; ++k) {
        const Complex lhs = sigma(basis.mul(g, h), k) * sigma(g, h);
        const Complex rhs = sigma(g, basis.mul(h, k)) * sigma(h, k);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
  }
  return worst;
}

std::vector<Complex> pauli_scalars(const WeylBasis& basis) {
  if (basis.base_order() != 2) throw InputError("pauli_scalars needs H = Z_2");
  CMatrix w00 = CMatrix::Identity(2, 2);
  CMatrix w01(2, 2), w10(2, 2), w11(2, 2);
  w01 << 0, 1, 1, 0;
  w10 << 1, 0, 0, -1;
  w11 << 0, -1, 1, 0;
  const CMatrix ws[4] = {w00, w01, w10, w11};
  std::vector<Complex> out;
  for (int k = 0; k < 4; ++k) out.push_back(normalized_trace(ws[k].adjoint() * basis[k]));
  return out;
}

std::vector<WeightedUnitary> haar_samples(int n, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw InputError("need at least one sample");
  Rng rng(seed);
  std::vector<WeightedUnitary> out;
  out.reserve(samples);
  const double w = 1.0 / static_cast<double>(samples);
  for (std::size_t s = 0; s < samples; ++s) out.push_back({haar_unitary(n, rng), w});
  return out;
}

FlatModel weyl_model(const WeylBasis& basis, std::span<const WeightedUnitary> samples) {
  const int n = basis.base_order();
  const int big_n = basis.order();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  require_model_size(samples.size(), big_n, n * n);
  std::vector<ModelPoint> points;
  points.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.x.rows() != n || s.x.cols() != n || unitarity_defect(s.x) > kExactTol) {
      throw InputError("weyl_model: samples must be n x n unitaries");
    }
    std::vector<UnitVector> vectors;
    vectors.reserve(static_cast<std::size_t>(big_n * big_n));
    for (int i = 0; i < big_n; ++i) {
      const CMatrix left = basis[i] * s.x;
      for (int j = 0; j < big_n; ++j) {
        const CMatrix m = left * basis[j].adjoint();
        CVector v(n * n);
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) v(r * n + c) = m(r, c) * scale;
        vectors.emplace_back(std::move(v));
      }
    }
    points.push_back({s.weight, MagicBasis(big_n, std::move(vectors))});
  }
  return FlatModel(std::move(points));
}

namespace {

/// tau(a, b) = tr(g_a x g_b x^*) for all a, b.
CMatrix trace_table(const WeylBasis& basis, const CMatrix& x) {
  const int big_n = basis.order();
  CMatrix tau(big_n, big_n);
  std::vector<CMatrix> left(static_cast<std::size_t>(big_n)), right(static_cast<std::size_t>(big_n));
  for (int a = 0; a < big_n; ++a) {
    left[static_cast<std::size_t>(a)] = basis[a] * x;
    right[static_cast<std::size_t>(a)] = basis[a] * x.adjoint();
  }
  for (int a = 0; a < big_n; ++a)
    for (int b = 0; b < big_n; ++b)
      tau(a, b) = (left[static_cast<std::size_t>(a)].transpose().cwiseProduct(right[static_cast<std::size_t>(b)])).sum() /
                  static_cast<double>(basis.base_order());
  return tau;
}

}  // namespace

MomentTensor t_matrix_closed_form(const WeylBasis& basis, const Cocycle& sigma,
                                  std::span<const WeightedUnitary> samples, int p, long long cap) {
  if (p < 1) throw InputError("t_matrix_closed_form: p must be >= 1");
  const int big_n = basis.order();
  long long dim = 1;
  for (int t = 0; t < p; ++t) {
    dim *= big_n;
    if (dim > cap) throw CapExceeded("t_matrix_closed_form: N^p too large", cap);
  }
  std::vector<int> digits(static_cast<std::size_t>(dim * p));
  for (long long i = 0; i < dim; ++i) {
    const auto d = tuple_digits(i, big_n, p);
    std::copy(d.begin(), d.end(), digits.begin() + i * p);
  }
  // step_i[I*p + t] = i_t^{-1} i_{t+1};  step_j[J*p + t] = j_{t+1}^{-1} j_t.
  std::vector<int> step_i(digits.size()), step_j(digits.size());
  std::vector<Complex> pre_i(static_cast<std::size_t>(dim), 1.0), pre_j(static_cast<std::size_t>(dim), 1.0);
  for (long long i = 0; i < dim; ++i)
    for (int t = 0; t < p; ++t) {
      const int cur = digits[static_cast<std::size_t>(i * p + t)];
      const int next = digits[static_cast<std::size_t>(i * p + (t + 1) % p)];
      step_i[static_cast<std::size_t>(i * p + t)] = basis.mul(basis.inv(cur), next);
      step_j[static_cast<std::size_t>(i * p + t)] = basis.mul(basis.inv(next), cur);
      pre_i[static_cast<std::size_t>(i)] *= std::conj(sigma(cur, basis.mul(basis.inv(cur), next)));
      pre_j[static_cast<std::size_t>(i)] *= std::conj(sigma(next, basis.mul(basis.inv(next), cur)));
    }

  const double inv_n = 1.0 / static_cast<double>(big_n);
  auto map = [&](std::size_t begin, std::size_t end) {
    CMatrix acc = CMatrix::Zero(dim, dim);
    for (std::size_t s = begin; s < end; ++s) {
      const CMatrix tau = trace_table(basis, samples[s].x);
      for (long long i = 0; i < dim; ++i)
        for (long long j = 0; j < dim; ++j) {
          Complex prod = samples[s].weight;
          for (int t = 0; t < p; ++t)
            prod *= tau(step_i[static_cast<std::size_t>(i * p + t)], step_j[static_cast<std::size_t>(j * p + t)]);
          acc(i, j) += prod;
        }
    }
    return acc;
  };
  const std::size_t chunks = std::min<std::size_t>(samples.size(), 64);
  CMatrix avg = chunked_reduce(samples.size(), (samples.size() + chunks - 1) / chunks, CMatrix(CMatrix::Zero(dim, dim)),
                               map, [](CMatrix a, CMatrix b) { return CMatrix(a + b); });
  for (long long i = 0; i < dim; ++i)
    for (long long j = 0; j < dim; ++j) avg(i, j) *= pre_i[static_cast<std::size_t>(i)] * pre_j[static_cast<std::size_t>(j)] * inv_n;
  return {big_n, p, std::move(avg)};
}

WeylMoments weyl_character_moments(const WeylBasis& basis, std::span<const WeightedUnitary> samples, int p_max) {
  if (p_max < 1) throw InputError("p_max must be >= 1");
  const int big_n = basis.order();
  std::vector<std::vector<double>> values(static_cast<std::size_t>(p_max), std::vector<double>(samples.size()));
  chunked_reduce(samples.size(), 256, 0, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const CMatrix& x = samples[s].x;
      std::vector<Complex> a(static_cast<std::size_t>(big_n));
      for (int j = 0; j < big_n; ++j) a[static_cast<std::size_t>(j)] = normalized_trace(basis[j] * x * basis[j].adjoint() * x.adjoint());
      // f_p(g) = sum over j_1 ... j_p = g of prod_t a(j_t), by repeated convolution.
      std::vector<Complex> f = a;
      for (int p = 1; p <= p_max; ++p) {
        if (p > 1) {
          std::vector<Complex> next(static_cast<std::size_t>(big_n), 0.0);
          for (int g = 0; g < big_n; ++g)
            for (int j = 0; j < big_n; ++j) next[static_cast<std::size_t>(basis.mul(g, j))] += f[static_cast<std::size_t>(g)] * a[static_cast<std::size_t>(j)];
          f = std::move(next);
        }
        values[static_cast<std::size_t>(p - 1)][s] = f[0].real();
      }
    }
    return 0;
  }, [](int x, int) { return x; });

  WeylMoments out;
  double w2 = 0.0;
  for (const auto& s : samples) w2 += s.weight * s.weight;
  for (const auto& v : values) {
    double mean = 0.0;
    for (std::size_t s = 0; s < samples.size(); ++s) mean += samples[s].weight * v[s];
    double var = 0.0;
    for (std::size_t s = 0; s < samples.size(); ++s) var += samples[s].weight * (v[s] - mean) * (v[s] - mean);
    out.moments.push_back(mean);
    out.stderrs.push_back(std::sqrt(var * w2));
  }
  return out;
}

}  // namespace qpg
