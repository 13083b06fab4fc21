#include "qpg/pipelines.hpp"

#include <chrono>
#include <cmath>
#include <set>

#include "qpg/errors.hpp"
#include "qpg/weyl.hpp"

namespace qpg::pipelines {

using perm::PermGroup;
using perm::Permutation;

namespace {

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json rationals_json(const std::vector<perm::Rational>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(perm::to_string(w));
  return out;
}

Json tuple_json(const std::vector<Permutation>& tuple) {
  Json out = Json::array();
  for (const auto& s : tuple) out.push_back(s.one_based());
  return out;
}

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

PermGroup group_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("generators")) {
    throw InputError("group JSON needs degree and generators");
  }
  const int degree = j.at("degree").get<int>();
  if (degree < 1) throw InputError("degree must be positive");
  std::vector<Permutation> gens;
  for (const auto& g : j.at("generators")) {
    const auto images = g.get<std::vector<int>>();
    if (static_cast<int>(images.size()) != degree) throw InputError("generator length differs from the degree");
    gens.push_back(Permutation::from_one_based(images));
  }
  return perm::closure(degree, gens);
}

Json group_to_json(const PermGroup& group) {
  Json gens = Json::array();
  for (const auto& g : group.generators()) gens.push_back(g.one_based());
  return {{"degree", group.degree()}, {"generators", gens}};
}

PermGroup group_from_spec(std::string_view spec) {
  if (starts_with(spec, "regular:")) return perm::regular_action(perm::named_group(spec.substr(8)));
  return perm::named_group(spec);
}

HadamardMatrix hadamard_from_spec(std::string_view spec, const std::optional<CMatrix>& q,
                                  std::optional<std::uint64_t> seed) {
  if (starts_with(spec, "fourier:")) {
    const auto cycles = parse_cycle_sizes(spec.substr(8));
    return fourier_matrix(cycles);
  }
  if (starts_with(spec, "dita:")) {
    const auto body = spec.substr(5);
    const auto bar = body.find('|');
    if (bar == std::string_view::npos) throw InputError("dita spec must look like dita:G|H");
    const auto left = parse_cycle_sizes(body.substr(0, bar));
    const auto right = parse_cycle_sizes(body.substr(bar + 1));
    int m = 1, n = 1;
    for (int c : left) m *= c;
    for (int c : right) n *= c;
    if (q) return dita_deform(left, right, DeformationParam(*q));
    if (!seed) throw InputError("dita spec needs a Q file or --random-q with --seed");
    Rng rng(*seed);
    return dita_deform(left, right, DeformationParam::random(m, n, rng));
  }
  throw InputError("unknown Hadamard spec '" + std::string(spec) + "'");
}

FlatModel model_from_spec(std::string_view spec, const ModelSpecOptions& opts) {
  if (starts_with(spec, "sum:") || starts_with(spec, "tensor:")) {
    const bool sum = starts_with(spec, "sum:");
    const auto body = spec.substr(sum ? 4 : 7);
    const auto cut = body.find(sum ? '+' : '*');
    if (cut == std::string_view::npos) throw InputError("composite model spec needs two parts");
    const auto a = model_from_spec(body.substr(0, cut), opts);
    const auto b = model_from_spec(body.substr(cut + 1), opts);
    return sum ? direct_sum_model(a, b) : tensor_model(a, b);
  }
  if (starts_with(spec, "hadamard:")) {
    const auto h = hadamard_from_spec(spec.substr(9), std::nullopt, opts.seed);
    std::vector<ModelPoint> pts;
    pts.push_back({1.0, magic_from_hadamard(h)});
    return FlatModel(std::move(pts));
  }
  if (starts_with(spec, "regular:")) return regular_model(group_from_spec(spec));
  if (starts_with(spec, "classical:")) return permutation_grid_model(group_from_spec(spec.substr(10)));
  if (starts_with(spec, "latin:")) {
    if (!opts.seed) throw InputError("latin models draw Haar frames and need --seed");
    const auto group = group_from_spec(spec.substr(6));
    std::vector<perm::LatinSquare> squares;
    for (const auto& t : perm::latin_tuples(group, opts.latin_limit)) squares.push_back(perm::LatinSquare::from_rows(t));
    if (squares.empty()) throw InputError("the group admits no Latin tuples");
    Rng rng(*opts.seed);
    std::vector<CMatrix> frames;
    for (int f = 0; f < opts.frames; ++f) frames.push_back(haar_unitary(group.degree(), rng));
    return latin_square_model(group, squares, frames);
  }
  if (starts_with(spec, "weyl:")) {
    if (!opts.seed) throw InputError("Weyl models draw Haar samples and need --seed");
    const WeylBasis basis(parse_cycle_sizes(spec.substr(5)));
    const auto samples = haar_samples(basis.base_order(), opts.samples, *opts.seed);
    return weyl_model(basis, samples);
  }
  throw InputError("unknown model spec '" + std::string(spec) + "'");
}

FlatModel model_from_file(const std::string& path) {
  const Json j = read_json_file(path);
  if (j.is_object() && j.contains("kind") && j.at("kind") == "hadamard") {
    std::vector<ModelPoint> pts;
    pts.push_back({1.0, magic_from_hadamard(HadamardMatrix::from_json(j))});
    return FlatModel(std::move(pts));
  }
  return FlatModel::from_json(j);
}

Report group_analyze(const ExperimentConfig& cfg, const PermGroup& group) {
  Report report(cfg);
  Stopwatch clock;
  const int n = group.degree();
  auto& data = report.data();
  data["degree"] = n;
  data["order"] = group.order();
  data["generators"] = group_to_json(group)["generators"];
  Json orbit_blocks = Json::array();
  for (const auto& block : perm::orbits(group)) {
    Json b = Json::array();
    for (int x : block) b.push_back(x + 1);
    orbit_blocks.push_back(b);
  }
  data["orbits"] = orbit_blocks;
  const bool transitive = perm::is_transitive(group);
  data["transitive"] = transitive;
  const auto derangements = perm::derangements(group);
  data["derangements"] = derangements.size();

  const auto mu = perm::character_measure(group);
  data["character_measure"] = rationals_json(mu.weights);
  Json moments = Json::array();
  for (int p = 1; p <= std::max(cfg.p_max, 4); ++p) moments.push_back(perm::to_string(mu.moment(p)));
  data["character_moments"] = moments;
  const auto order = static_cast<std::int64_t>(group.order());
  report.verdict("measure total is 1", mu.total() == perm::Rational(1));
  report.verdict("c_{N-1} = 0", n < 2 || mu.weights[static_cast<std::size_t>(n - 1)] == perm::Rational(0));
  report.verdict("c_0 = |D_G|/|G|", mu.weights[0] == perm::Rational(static_cast<std::int64_t>(derangements.size()), order));
  report.verdict("c_N = 1/|G|", mu.weights[static_cast<std::size_t>(n)] == perm::Rational(1, order));
  report.add_timing("measure", clock.lap());

  if (transitive) {
    const int level = perm::transitivity_level(group);
    data["transitivity_level"] = level;
    report.add_timing("transitivity_level", clock.lap());
    const auto cert = perm::strongest_transitive_certificate(group);
    data["certificate"] = cert ? tuple_json(*cert) : Json(nullptr);
    data["strongest_transitive"] = cert.has_value();
    report.add_timing("certificate", clock.lap());
    const auto tuples = perm::latin_tuples(group, 1);
    report.verdict("level >= N", level >= n);
    report.verdict("level = N iff certificate", (level == n) == cert.has_value());
    report.verdict("certificate iff Latin tuples", cert.has_value() == !tuples.empty());
    if (cert) {
      report.verdict("|D_G| >= N-1", static_cast<int>(derangements.size()) >= n - 1);
      report.verdict("c_0 >= (N-1) c_N", mu.weights[0] >= perm::Rational(n - 1) * mu.weights[static_cast<std::size_t>(n)]);
    }
    if (group.order() % static_cast<std::size_t>(n) == 0) {
      const auto subs = perm::deranging_subgroups(group, static_cast<std::size_t>(n));
      Json list = Json::array();
      for (const auto& h : subs) list.push_back(group_to_json(h)["generators"]);
      data["deranging_subgroups_order_N"] = list;
      report.verdict("deranging subgroup implies certificate", subs.empty() || cert.has_value());
      report.add_timing("deranging_subgroups", clock.lap());
    } else {
      data["deranging_subgroups_order_N"] = Json::array();
    }
  }

  const auto family = cfg.options.find("family");
  if (family != cfg.options.end() && starts_with(family->second, "pgl2:")) {
    const int p = n - 1;
    const auto formula = perm::pgl2_measure_formula(p);
    data["pgl2_formula"] = rationals_json(formula.weights);
    report.verdict("order = (p-1)p(p+1)", group.order() == static_cast<std::size_t>((p - 1) * p * (p + 1)));
    report.verdict("measure equals the PGL2 formula", formula == mu);
  }
  return report;
}

Report hadamard_validate(const ExperimentConfig& cfg, const CMatrix& m, double tol) {
  Report report(cfg);
  const auto d = validate_hadamard(m, tol);
  report.check("entry moduli", d.modulus_defect, tol);
  report.check("row orthogonality", d.orthogonality_defect, tol * static_cast<double>(m.rows()));
  if (!d.passes) return report;
  const HadamardMatrix h(m, tol);
  const auto xi = magic_from_hadamard(h);
  const auto magic = validate_magic(xi.projectors(), tol);
  report.check("magic projections", magic.projection_defect, tol);
  report.check("magic row/column sums", magic.sum_defect, tol);
  const auto flat = flatness(xi.projectors());
  report.data()["flatness"] = to_string(flat.verdict);
  report.verdict("flat", flat.verdict == Flatness::flat);
  const auto back = magic_basis_is_hadamard_type(xi, 1e-8);
  report.verdict("Hadamard-type magic basis", back.matrix.has_value());
  if (back.matrix) report.check("reconstruction vs dephased input", max_abs_diff(back.matrix->matrix(), dephase(m)), 1e-8);
  return report;
}

Report model_check(const ExperimentConfig& cfg, const FlatModel& model, const ModelCheckOptions& opts) {
  Report report(cfg);
  Stopwatch clock;
  const int n = model.size();
  auto& data = report.data();
  data["size"] = n;
  data["dim"] = model.dim();
  data["points"] = model.points().size();

  MagicDiagnostics worst;
  for (const auto& pt : model.points()) {
    const auto d = validate_magic(pt.basis.projectors(), opts.tol);
    worst.projection_defect = std::max(worst.projection_defect, d.projection_defect);
    worst.sum_defect = std::max(worst.sum_defect, d.sum_defect);
  }
  report.check("magic projections", worst.projection_defect, opts.tol);
  report.check("magic row/column sums", worst.sum_defect, opts.tol);
  const auto flat = flatness(model);
  data["flatness"] = to_string(flat.verdict);
  report.check("trace equals rank/K", flat.trace_defect, opts.tol);

  const CMatrix t1 = t_matrix(model, 1).matrix;
  double stochastic = 0.0;
  for (int i = 0; i < n; ++i) {
    stochastic = std::max(stochastic, std::abs(t1.row(i).sum() - 1.0));
    stochastic = std::max(stochastic, std::abs(t1.col(i).sum() - 1.0));
  }
  report.check("T_1 doubly stochastic", stochastic, opts.tol);
  if (flat.verdict == Flatness::flat && model.dim() == n) {
    report.check("flat: T_1 = (1/N) ones", (t1.array() - Complex(1.0 / n)).abs().maxCoeff(), opts.tol);
  }
  report.add_timing("basic", clock.lap());

  if (opts.stationary) {
    const double tol = opts.monte_carlo_tol > 0 ? opts.monte_carlo_tol : opts.tol;
    const auto st = stationarity_test(model, cfg.p_max, tol);
    Series s{{"p", "defect"}, {}};
    for (std::size_t p = 0; p < st.defects.size(); ++p) {
      report.check("stationarity p=" + std::to_string(p + 1), st.defects[p], tol);
      s.rows.push_back({static_cast<double>(p + 1), st.defects[p]});
    }
    report.add_series("stationarity", std::move(s));
    report.add_timing("stationarity", clock.lap());
  }
  const int r_max = cfg.r_max > 0 ? cfg.r_max : 50;
  if (opts.transitivity) {
    const auto tv = transitivity_estimate(model, r_max, opts.tol);
    report.check("transitivity: integrals of u_ij = 1/N", tv.max_deviation, opts.tol);
    data["transitivity_converged"] = tv.converged;
  }
  if (opts.double_transitivity) {
    const auto dt = double_transitivity_test(model, r_max, opts.tol);
    report.check("doubly flat", dt.doubly_flat_defect, opts.tol, false);
    report.check("doubly transitive integrals", dt.integral_defect, opts.tol, false);
    data["double_transitivity_converged"] = dt.converged;
  }
  if (opts.cesaro) {
    Series s{{"p", "k", "distance"}, {}};
    for (int p = 1; p <= cfg.p_max; ++p) {
      const auto ces = cesaro_moments(model, p, r_max, opts.tol);
      for (std::size_t k = 0; k < ces.distances.size(); ++k)
        s.rows.push_back({static_cast<double>(p), static_cast<double>(k + 2), ces.distances[k]});
      report.verdict("Cesaro converged p=" + std::to_string(p), ces.converged, false);
    }
    report.add_series("cesaro", std::move(s));
  }
  return report;
}

Report model_character(const ExperimentConfig& cfg, const FlatModel& model, int r) {
  Report report(cfg);
  const auto law = character_law(model, r, cfg.p_max);
  auto& data = report.data();
  data["r"] = r;
  data["normalization"] = "chi/N";
  data["moments"] = law.moments;
  if (law.stderrs) data["stderrs"] = *law.stderrs;
  // moments of chi itself, comparable with sum_i i^p c_i of a group measure
  std::vector<double> raw(law.moments.size());
  double scale = 1.0;
  for (std::size_t p = 0; p < raw.size(); ++p) {
    scale *= model.size();
    raw[p] = law.moments[p] * scale;
  }
  data["chi_moments"] = raw;
  Series s{{"p", "moment", "chi_moment"}, {}};
  for (std::size_t p = 0; p < law.moments.size(); ++p) s.rows.push_back({static_cast<double>(p + 1), law.moments[p], raw[p]});
  if (law.gram_moments) {
    data["gram_moments"] = *law.gram_moments;
    for (std::size_t p = 0; p < law.moments.size(); ++p) {
      const double se = law.stderrs ? (*law.stderrs)[p] : 0.0;
      auto& c = report.check("Gram route agrees p=" + std::to_string(p + 1), std::abs(law.moments[p] - (*law.gram_moments)[p]),
                             3 * se + kExactTol);
      if (law.stderrs) c.stderr_ = se;
    }
  }
  report.add_series("moments", std::move(s));
  return report;
}

Report model_orbits(const ExperimentConfig& cfg, const FlatModel& model, int k) {
  Report report(cfg);
  const auto rel = orbit_relations(model, k);
  const int n = model.size();
  Json classes = Json::array();
  for (const auto& cls : rel.classes) {
    Json c = Json::array();
    for (long long a : cls) {
      Json tuple = Json::array();
      for (int d : tuple_digits(a, n, k)) tuple.push_back(d + 1);
      c.push_back(tuple);
    }
    classes.push_back(c);
  }
  report.data()["k"] = k;
  report.data()["classes"] = classes;
  report.data()["class_count"] = rel.classes.size();
  const bool asserted = k <= 2;
  report.verdict("reflexive", rel.reflexive, asserted);
  report.verdict("symmetric", rel.symmetric, asserted);
  report.verdict("transitive", rel.transitive, asserted);
  return report;
}

Report weyl_run(const ExperimentConfig& cfg, const WeylRunOptions& opts) {
  cfg.validate(true);
  Report report(cfg);
  Stopwatch clock;
  const WeylBasis basis(opts.cycles);
  const int big_n = basis.order();
  const std::size_t m = cfg.samples;
  if (m == 0) throw InputError("--samples must be positive");
  const int p_max = std::max(cfg.p_max, 1);
  auto& data = report.data();
  data["base_group"] = opts.cycles;
  data["N"] = big_n;

  report.check("trace orthogonality of the basis", basis.orthogonality_defect(), kExactTol);
  const Cocycle sigma = extract_cocycle(basis);
  Json table = Json::array();
  for (int k = 0; k < big_n; ++k) {
    Json row = Json::array();
    for (int l = 0; l < big_n; ++l) row.push_back(complex_json(sigma(k, l)));
    table.push_back(row);
  }
  data["cocycle"] = table;
  report.check("cocycle identity", cocycle_residual(basis, sigma), 1e-12);
  if (basis.base_order() == 2) {
    Json sc = Json::array();
    for (auto z : pauli_scalars(basis)) sc.push_back(complex_json(z));
    data["pauli_scalars"] = sc;
  }

  const auto samples = haar_samples(basis.base_order(), m, *cfg.seed);
  const FlatModel model = weyl_model(basis, samples);
  report.add_timing("model", clock.lap());
  report.verdict("magic basis at every sample", true);

  const double mc_tol = monte_carlo_tol(m);
  for (int p = 1; p <= std::min(p_max, opts.closed_form_p_max); ++p) {
    const CMatrix generic = t_matrix(model, p).matrix;
    const CMatrix closed = t_matrix_closed_form(basis, sigma, samples, p).matrix;
    report.check("closed form T_" + std::to_string(p) + " = generic T_" + std::to_string(p), max_abs_diff(generic, closed), kExactTol);
    if (p == 1) {
      report.check("T_1 = (1/N) ones", (generic.array() - Complex(1.0 / big_n)).abs().maxCoeff(), kExactTol);
    }
  }
  report.add_timing("closed_form", clock.lap());

  if (opts.check_stationary) {
    Series s{{"samples", "p", "defect"}, {}};
    for (int p = 1; p <= p_max; ++p) {
      const double d = idempotency_defect(t_matrix(model, p).matrix);
      auto& c = report.check("stationarity p=" + std::to_string(p), d, mc_tol);
      c.samples = m;
      for (std::size_t sub : {m / 100, m / 10}) {
        if (sub < 10) continue;
        std::vector<WeightedUnitary> prefix(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(sub));
        for (auto& w : prefix) w.weight = 1.0 / static_cast<double>(sub);
        s.rows.push_back({static_cast<double>(sub), static_cast<double>(p),
                          idempotency_defect(t_matrix(weyl_model(basis, prefix), p).matrix)});
      }
      s.rows.push_back({static_cast<double>(m), static_cast<double>(p), d});
    }
    report.add_series("stationarity_vs_samples", std::move(s));
    report.add_timing("stationarity", clock.lap());
  }

  const auto wm = weyl_character_moments(basis, samples, p_max);
  const auto law = character_law(model, 1, p_max);
  Series s{{"p", "c_p", "stderr", "t_diagonal"}, {}};
  Json moments = Json::array();
  for (int p = 1; p <= p_max; ++p) {
    const auto i = static_cast<std::size_t>(p - 1);
    const double diag = law.moments[i] * std::pow(big_n, p);
    const double se = wm.stderrs[i];
    moments.push_back({{"p", p}, {"c_p", wm.moments[i]}, {"stderr", se}, {"t_diagonal", diag}});
    s.rows.push_back({static_cast<double>(p), wm.moments[i], se, diag});
    auto& c = report.check("c_" + std::to_string(p) + " = diagonal sum of T_" + std::to_string(p),
                           std::abs(wm.moments[i] - diag), 3 * se + kExactTol);
    c.stderr_ = se;
    c.samples = m;
  }
  auto& c1 = report.check("c_1 = 1", std::abs(wm.moments[0] - 1.0), std::max(3 * wm.stderrs[0], kExactTol));
  c1.stderr_ = wm.stderrs[0];
  c1.samples = m;
  data["character_moments"] = moments;
  report.add_series("character_moments", std::move(s));
  report.add_timing("moments", clock.lap());
  return report;
}

}  // namespace qpg::pipelines
