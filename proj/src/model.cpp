#include "qpg/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qpg/errors.hpp"
#include "qpg/parallel.hpp"

namespace qpg {

const char* to_string(Flatness f) {
  switch (f) {
    case Flatness::flat: return "flat";
    case Flatness::quasi_flat: return "quasi-flat";
    case Flatness::neither: return "neither";
  }
  return "neither";
}

FlatnessReport flatness(const MagicUnitary& u) {
  const int n = u.size();
  const double k = static_cast<double>(u.dim());
  FlatnessReport r;
  r.ranks.resize(static_cast<std::size_t>(n * n));
  bool rank_le_one = true;
  r.all_nonzero = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int rank = projection_rank(u(i, j));
      r.ranks[static_cast<std::size_t>(i * n + j)] = rank;
      rank_le_one = rank_le_one && rank <= 1;
      r.all_nonzero = r.all_nonzero && rank > 0;
      r.trace_defect = std::max(r.trace_defect, std::abs(normalized_trace(u(i, j)) - Complex(rank / k)));
    }
  // Rank <= 1 everywhere plus no zero entry is exactly rank 1 everywhere.
  r.verdict = !rank_le_one ? Flatness::neither : (r.all_nonzero ? Flatness::flat : Flatness::quasi_flat);
  return r;
}

FlatnessReport flatness(const FlatModel& model) {
  const int n = model.size();
  const double k = static_cast<double>(model.dim());
  FlatnessReport r;
  r.ranks.assign(static_cast<std::size_t>(n * n), 1);
  for (const auto& pt : model.points())
    for (std::size_t a = 0; a < r.ranks.size(); ++a) {
      const auto& v = pt.basis.vectors()[a];
      if (v.is_zero()) r.ranks[a] = 0;
      const double expected = v.is_zero() ? 0.0 : 1.0 / k;
      r.trace_defect = std::max(r.trace_defect, std::abs(v.entries().squaredNorm() / k - expected));
    }
  r.all_nonzero = std::all_of(r.ranks.begin(), r.ranks.end(), [](int x) { return x == 1; });
  r.verdict = r.all_nonzero ? Flatness::flat : Flatness::quasi_flat;
  return r;
}

std::vector<int> tuple_digits(long long index, int size, int order) {
  std::vector<int> d(static_cast<std::size_t>(order));
  for (int t = order - 1; t >= 0; --t) {
    d[static_cast<std::size_t>(t)] = static_cast<int>(index % size);
    index /= size;
  }
  return d;
}

namespace {

long long checked_power(int n, int p, long long cap, const char* what) {
  if (p < 1) throw InputError(std::string(what) + ": order must be >= 1");
  long long v = 1;
  for (int t = 0; t < p; ++t) {
    v *= n;
    if (v > cap) throw CapExceeded(std::string(what) + ": N^p too large", cap);
  }
  return v;
}

/// Row-major table digits[I * p + t].
std::vector<int> digit_table(long long dim, int n, int p) {
  std::vector<int> out(static_cast<std::size_t>(dim * p));
  for (long long i = 0; i < dim; ++i) {
    const auto d = tuple_digits(i, n, p);
    std::copy(d.begin(), d.end(), out.begin() + i * p);
  }
  return out;
}

CMatrix point_gram(const MagicBasis& basis) {
  const CMatrix a = basis.stacked();
  return a.adjoint() * a;
}

/// Chunk count bounded so that the per-chunk partial tensors stay within
/// ~256 MiB; depends only on the problem, never on the thread count.
std::size_t grain_for(std::size_t points, long long dim) {
  const double bytes = static_cast<double>(dim) * static_cast<double>(dim) * sizeof(Complex);
  const auto max_chunks = static_cast<std::size_t>(std::clamp(268435456.0 / bytes, 1.0, 64.0));
  const std::size_t chunks = std::min(points, max_chunks);
  return (points + chunks - 1) / chunks;
}

}  // namespace

MomentTensor t_matrix(const FlatModel& model, int p, long long cap) {
  const int n = model.size();
  const long long dim = checked_power(n, p, cap, "t_matrix");
  const auto digits = digit_table(dim, n, p);
  const double inv_k = 1.0 / static_cast<double>(model.dim());
  const auto& pts = model.points();

  auto map = [&](std::size_t begin, std::size_t end) {
    CMatrix acc = CMatrix::Zero(dim, dim);
    std::vector<int> pair(static_cast<std::size_t>(p));
    for (std::size_t x = begin; x < end; ++x) {
      const CMatrix g = point_gram(pts[x].basis);
      const double w = pts[x].weight * inv_k;
      for (long long i = 0; i < dim; ++i) {
        const int* di = &digits[static_cast<std::size_t>(i * p)];
        for (long long j = 0; j < dim; ++j) {
          const int* dj = &digits[static_cast<std::size_t>(j * p)];
          for (int t = 0; t < p; ++t) pair[static_cast<std::size_t>(t)] = di[t] * n + dj[t];
          Complex prod = 1.0;
          for (int t = 0; t < p; ++t) prod *= g(pair[static_cast<std::size_t>(t)], pair[static_cast<std::size_t>((t + 1) % p)]);
          acc(i, j) += w * prod;
        }
      }
    }
    return acc;
  };
  CMatrix total = chunked_reduce(pts.size(), grain_for(pts.size(), dim), CMatrix(CMatrix::Zero(dim, dim)), map,
                                 [](CMatrix a, CMatrix b) { return CMatrix(a + b); });
  return {n, p, std::move(total)};
}

double idempotency_defect(const CMatrix& a) { return max_abs_diff(a * a, a); }

StationarityReport stationarity_test(const FlatModel& model, int p_max, double tol, long long cap) {
  if (p_max < 1) throw InputError("p_max must be >= 1");
  StationarityReport r;
  r.tol = tol;
  for (int p = 1; p <= p_max; ++p) r.defects.push_back(idempotency_defect(t_matrix(model, p, cap).matrix));
  r.stationary = std::all_of(r.defects.begin(), r.defects.end(), [&](double d) { return d <= tol; });
  return r;
}

CesaroResult cesaro_averages(const CMatrix& t, int r_max, double tol) {
  if (r_max < 1) throw InputError("r_max must be >= 1");
  CesaroResult out;
  CMatrix power = t;
  CMatrix sum = t;
  out.averages.push_back(t);
  for (int k = 2; k <= r_max; ++k) {
    power = power * t;
    sum += power;
    CMatrix avg = sum / static_cast<double>(k);
    const double d = max_abs_diff(avg, out.averages.back());
    out.distances.push_back(d);
    out.averages.push_back(std::move(avg));
    if (d < tol / 10.0) {
      out.converged = true;
      break;
    }
  }
  return out;
}

CesaroResult cesaro_moments(const FlatModel& model, int p, int r_max, double tol, long long cap) {
  return cesaro_averages(t_matrix(model, p, cap).matrix, r_max, tol);
}

namespace {

struct WeightedStats {
  double mean = 0.0;
  double stderr_ = 0.0;
};

WeightedStats weighted_stats(const std::vector<double>& values, const FlatModel& model) {
  const auto& pts = model.points();
  WeightedStats s;
  double w2 = 0.0;
  for (std::size_t x = 0; x < pts.size(); ++x) {
    s.mean += pts[x].weight * values[x];
    w2 += pts[x].weight * pts[x].weight;
  }
  double var = 0.0;
  for (std::size_t x = 0; x < pts.size(); ++x) var += pts[x].weight * (values[x] - s.mean) * (values[x] - s.mean);
  s.stderr_ = std::sqrt(var * w2);
  return s;
}

/// sum over m, m' in [N]^r of the cyclic products, for one r-tuple of points.
double gram_trace_power(const std::vector<const CMatrix*>& grams, int n, int r, int p) {
  long long dim = 1;
  for (int s = 0; s < r; ++s) dim *= n;
  const auto digits = digit_table(dim, n, r);
  CMatrix g(dim, dim);
  for (long long a = 0; a < dim; ++a)
    for (long long b = 0; b < dim; ++b) {
      const int* da = &digits[static_cast<std::size_t>(a * r)];
      const int* db = &digits[static_cast<std::size_t>(b * r)];
      Complex prod = 1.0;
      for (int s = 0; s < r; ++s) {
        const int sn = (s + 1) % r;
        prod *= (*grams[static_cast<std::size_t>(s)])(da[s] * n + da[sn], db[s] * n + db[sn]);
      }
      g(a, b) = prod;
    }
  CMatrix power = g;
  for (int q = 1; q < p; ++q) power = power * g;
  return power.trace().real();
}

}  // namespace

CharacterLaw character_law(const FlatModel& model, int r, int p_max, long long cap, long long gram_cap) {
  if (r < 1 || p_max < 1) throw InputError("character_law: r and p_max must be >= 1");
  const int n = model.size();
  const double k = static_cast<double>(model.dim());
  const auto& pts = model.points();
  CharacterLaw law;
  law.r = r;

  if (r == 1) {
    // Diagonal of T_p only: (1/K) sum_I prod_t <xi_{i_t i_t}, xi_{i_{t+1} i_{t+1}}> per point.
    std::vector<std::vector<double>> per_point(static_cast<std::size_t>(p_max), std::vector<double>(pts.size()));
    std::vector<std::vector<double>> gram_point(static_cast<std::size_t>(p_max), std::vector<double>(pts.size()));
    std::vector<std::vector<int>> tables;
    for (int p = 1; p <= p_max; ++p) tables.push_back(digit_table(checked_power(n, p, cap * cap, "character_law"), n, p));
    chunked_reduce(pts.size(), 256, 0, [&](std::size_t begin, std::size_t end) {
      for (std::size_t x = begin; x < end; ++x) {
        const CMatrix g = point_gram(pts[x].basis);
        CMatrix d(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) d(i, j) = g(i * n + i, j * n + j);
        CMatrix power = CMatrix::Identity(n, n);
        for (int p = 1; p <= p_max; ++p) {
          power = power * d;
          gram_point[static_cast<std::size_t>(p - 1)][x] = power.trace().real() / k;
          const auto& table = tables[static_cast<std::size_t>(p - 1)];
          Complex sum = 0.0;
          for (std::size_t base = 0; base < table.size(); base += static_cast<std::size_t>(p)) {
            const int* t = &table[base];
            Complex prod = 1.0;
            for (int s = 0; s < p; ++s) prod *= d(t[s], t[(s + 1) % p]);
            sum += prod;
          }
          per_point[static_cast<std::size_t>(p - 1)][x] = sum.real() / k;
        }
      }
      return 0;
    }, [](int a, int) { return a; });
    law.stderrs.emplace();
    law.gram_moments.emplace();
    for (int p = 1; p <= p_max; ++p) {
      const double scale = std::pow(static_cast<double>(n), -p);
      const auto s = weighted_stats(per_point[static_cast<std::size_t>(p - 1)], model);
      law.moments.push_back(s.mean * scale);
      law.stderrs->push_back(s.stderr_ * scale);
      law.gram_moments->push_back(weighted_stats(gram_point[static_cast<std::size_t>(p - 1)], model).mean * scale);
    }
    return law;
  }

  for (int p = 1; p <= p_max; ++p) {
    const CMatrix t = t_matrix(model, p, cap).matrix;
    CMatrix power = t;
    for (int q = 1; q < r; ++q) power = power * t;
    law.moments.push_back(power.trace().real() * std::pow(static_cast<double>(n), -p));
  }

  long long tuples = 1;
  for (int s = 0; s < r; ++s) {
    tuples *= static_cast<long long>(pts.size());
    if (tuples > gram_cap) return law;
  }
  long long nr = 1;
  for (int s = 0; s < r; ++s) nr *= n;
  if (nr > cap) return law;

  std::vector<CMatrix> grams;
  grams.reserve(pts.size());
  for (const auto& pt : pts) grams.push_back(point_gram(pt.basis));
  std::vector<double> sums(static_cast<std::size_t>(p_max), 0.0);
  for (long long tup = 0; tup < tuples; ++tup) {
    const auto idx = tuple_digits(tup, static_cast<int>(pts.size()), r);
    std::vector<const CMatrix*> chosen;
    double w = 1.0;
    for (int x : idx) {
      chosen.push_back(&grams[static_cast<std::size_t>(x)]);
      w *= pts[static_cast<std::size_t>(x)].weight;
    }
    for (int p = 1; p <= p_max; ++p) sums[static_cast<std::size_t>(p - 1)] += w * gram_trace_power(chosen, n, r, p);
  }
  law.gram_moments.emplace();
  for (int p = 1; p <= p_max; ++p)
    law.gram_moments->push_back(sums[static_cast<std::size_t>(p - 1)] / (std::pow(n, p) * std::pow(k, r)));
  return law;
}

namespace {

void finish_relation(RelationData& rel) {
  const auto m = rel.related.size();
  rel.reflexive = true;
  rel.symmetric = true;
  rel.transitive = true;
  for (std::size_t a = 0; a < m; ++a) {
    rel.reflexive = rel.reflexive && rel.related[a][a];
    for (std::size_t b = 0; b < m; ++b) {
      if (rel.related[a][b] != rel.related[b][a]) rel.symmetric = false;
      if (!rel.related[a][b]) continue;
      for (std::size_t c = 0; c < m && rel.transitive; ++c)
        if (rel.related[b][c] && !rel.related[a][c]) rel.transitive = false;
    }
  }
  const bool equivalence = rel.reflexive && rel.symmetric && rel.transitive;
  if (equivalence) {
    std::vector<bool> seen(m, false);
    for (std::size_t a = 0; a < m; ++a) {
      if (seen[a]) continue;
      std::vector<long long> cls;
      for (std::size_t b = 0; b < m; ++b)
        if (rel.related[a][b]) {
          seen[b] = true;
          cls.push_back(static_cast<long long>(b));
        }
      rel.classes.push_back(std::move(cls));
    }
  }
  if (rel.k <= 2 && !equivalence) {
    throw InvariantViolation("relation ~" + std::to_string(rel.k) + " is not an equivalence (reflexive " +
                             std::to_string(rel.reflexive) + ", symmetric " + std::to_string(rel.symmetric) +
                             ", transitive " + std::to_string(rel.transitive) + "); support threshold too loose or tight");
  }
}

RelationData empty_relation(int n, int k) {
  if (k < 1 || k > 3) throw InputError("orbit_relations: k must be 1, 2 or 3");
  long long m = 1;
  for (int t = 0; t < k; ++t) m *= n;
  if (m > 4096) throw CapExceeded("orbit_relations: N^k too large", 4096);
  RelationData rel;
  rel.k = k;
  rel.size = n;
  rel.related.assign(static_cast<std::size_t>(m), std::vector<bool>(static_cast<std::size_t>(m), false));
  return rel;
}

}  // namespace

RelationData orbit_relations(const MagicUnitary& u, int k, double threshold) {
  const int n = u.size();
  RelationData rel = empty_relation(n, k);
  const auto m = static_cast<long long>(rel.related.size());
  for (long long a = 0; a < m; ++a) {
    const auto da = tuple_digits(a, n, k);
    for (long long b = 0; b < m; ++b) {
      const auto db = tuple_digits(b, n, k);
      CMatrix prod = u(da[0], db[0]);
      for (int t = 1; t < k; ++t) prod = prod * u(da[static_cast<std::size_t>(t)], db[static_cast<std::size_t>(t)]);
      rel.related[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = prod.cwiseAbs().maxCoeff() > threshold;
    }
  }
  finish_relation(rel);
  return rel;
}

RelationData orbit_relations(const FlatModel& model, int k, double threshold) {
  const int n = model.size();
  RelationData rel = empty_relation(n, k);
  const auto m = static_cast<long long>(rel.related.size());
  const auto digits = digit_table(m, n, k);
  for (const auto& pt : model.points()) {
    // P_{a_1} ... P_{a_k} = xi_{a_1} (prod <xi_{a_t}, xi_{a_{t+1}}>) xi_{a_k}^*, whose
    // largest entry is |prod| |xi_{a_1}|_inf |xi_{a_k}|_inf.
    const CMatrix g = point_gram(pt.basis);
    std::vector<double> sup(pt.basis.vectors().size());
    for (std::size_t c = 0; c < sup.size(); ++c) {
      const auto& e = pt.basis.vectors()[c].entries();
      sup[c] = e.size() ? e.cwiseAbs().maxCoeff() : 0.0;
    }
    for (long long a = 0; a < m; ++a)
      for (long long b = 0; b < m; ++b) {
        if (rel.related[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) continue;
        const int* da = &digits[static_cast<std::size_t>(a * k)];
        const int* db = &digits[static_cast<std::size_t>(b * k)];
        double mag = sup[static_cast<std::size_t>(da[0] * n + db[0])] * sup[static_cast<std::size_t>(da[k - 1] * n + db[k - 1])];
        for (int t = 0; t + 1 < k; ++t) mag *= std::abs(g(da[t] * n + db[t], da[t + 1] * n + db[t + 1]));
        if (mag > threshold) rel.related[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
      }
  }
  finish_relation(rel);
  return rel;
}

TransitivityVerdict transitivity_estimate(const FlatModel& model, int r_max, double tol) {
  const auto ces = cesaro_moments(model, 1, r_max, tol);
  TransitivityVerdict v;
  v.estimate = ces.averages.back();
  v.converged = ces.converged || ces.averages.size() == 1;
  const double target = 1.0 / model.size();
  v.max_deviation = (v.estimate.array() - Complex(target)).abs().maxCoeff();
  v.transitive = v.max_deviation <= tol;
  return v;
}

double double_transitive_table(int n, int i, int j, int k, int l) {
  if (i == k && j == l) return 1.0 / n;
  if (i == k || j == l) return 0.0;
  if (n < 2) return 0.0;
  return 1.0 / (static_cast<double>(n) * (n - 1));
}

DoubleTransitivityVerdict double_transitivity_test(const FlatModel& model, int r_max, double tol) {
  const int n = model.size();
  const double inv_k = 1.0 / static_cast<double>(model.dim());
  DoubleTransitivityVerdict v;
  v.tol = tol;
  for (const auto& pt : model.points()) {
    const CMatrix g = point_gram(pt.basis);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const double tr = std::norm(g(i * n + j, k * n + l)) * inv_k;
            v.doubly_flat_defect = std::max(v.doubly_flat_defect, std::abs(tr - double_transitive_table(n, i, j, k, l)));
          }
  }
  v.doubly_flat = v.doubly_flat_defect <= tol;

  const auto ces = cesaro_moments(model, 2, r_max, tol);
  v.estimate = ces.averages.back();
  v.converged = ces.converged || ces.averages.size() == 1;
  // Row (i, k), column (j, l) of T_2 integrates u_ij u_kl.
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          v.integral_defect = std::max(v.integral_defect,
                                       std::abs(v.estimate(i * n + k, j * n + l) - double_transitive_table(n, i, j, k, l)));
  v.doubly_transitive = v.integral_defect <= tol;
  return v;
}

FlatModel tensor_model(const FlatModel& a, const FlatModel& b) {
  const int na = a.size(), nb = b.size();
  const int n = na * nb;
  require_model_size(a.points().size() * b.points().size(), n, a.dim() * b.dim());
  std::vector<ModelPoint> points;
  points.reserve(a.points().size() * b.points().size());
  for (const auto& x : a.points())
    for (const auto& y : b.points()) {
      std::vector<UnitVector> vectors;
      vectors.reserve(static_cast<std::size_t>(n * n));
      for (int i = 0; i < na; ++i)
        for (int s = 0; s < nb; ++s)
          for (int j = 0; j < na; ++j)
            for (int t = 0; t < nb; ++t) {
              const auto& u = x.basis(i, j);
              const auto& v = y.basis(s, t);
              if (u.is_zero() || v.is_zero()) {
                vectors.push_back(UnitVector::zero(u.dim() * v.dim()));
              } else {
                vectors.emplace_back(kron(u.entries(), v.entries()));
              }
            }
      points.push_back({x.weight * y.weight, MagicBasis(n, std::move(vectors))});
    }
  return FlatModel(std::move(points));
}

FlatModel direct_sum_model(const FlatModel& a, const FlatModel& b) {
  if (a.dim() != b.dim()) throw InputError("direct_sum_model: models must share K");
  const int na = a.size(), nb = b.size();
  const int n = na + nb;
  const auto k = a.dim();
  require_model_size(a.points().size() * b.points().size(), n, k);
  std::vector<ModelPoint> points;
  for (const auto& x : a.points())
    for (const auto& y : b.points()) {
      std::vector<UnitVector> vectors;
      vectors.reserve(static_cast<std::size_t>(n * n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i < na && j < na) {
            vectors.push_back(x.basis(i, j));
          } else if (i >= na && j >= na) {
            vectors.push_back(y.basis(i - na, j - na));
          } else {
            vectors.push_back(UnitVector::zero(k));
          }
        }
      points.push_back({x.weight * y.weight, MagicBasis(n, std::move(vectors))});
    }
  return FlatModel(std::move(points));
}

}  // namespace qpg
