// qpg: command-line front end. Exit codes: 0 pass, 2 check failed,
// 3 input error, 4 resource cap.
#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "qpg/acceptance.hpp"
#include "qpg/errors.hpp"
#include "qpg/pipelines.hpp"

namespace {

using namespace qpg;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 2;
constexpr int kExitInput = 3;
constexpr int kExitCap = 4;

struct Common {
  std::string output;
  std::string csv;
  bool timings = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--output,-o", c.output, "Write the report (or artifact) here instead of stdout");
  cmd->add_option("--csv", c.csv, "Write data series as <prefix>.<series>.csv");
  cmd->add_flag("--timings", c.timings, "Include wall-clock timings in the report");
}

void emit(const Json& j, const std::string& output) {
  if (output.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(output, j);
  }
}

int finish(Report& report, const Common& c) {
  report.enable_timings(c.timings);
  emit(report.to_json(), c.output);
  if (!c.csv.empty()) report.write_series_csv(c.csv);
  return report.all_asserted_passed() ? kExitPass : kExitCheckFailed;
}

int error_record(const char* kind, const std::string& message, int code, std::optional<long long> cap = {}) {
  Json err = {{"kind", kind}, {"message", message}, {"exit_code", code}};
  if (cap) err["cap"] = *cap;
  std::cerr << Json{{"error", err}}.dump() << "\n";
  return code;
}

std::optional<CMatrix> load_q(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return matrix_from_json(read_json_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum permutation group matrix-model laboratory"};
  app.require_subcommand(1);
  Common common;
  ExperimentConfig cfg;
  std::uint64_t seed = 0;

  // group analyze
  auto* group = app.add_subcommand("group", "Permutation group analysis");
  group->require_subcommand(1);
  auto* group_analyze = group->add_subcommand("analyze", "Orders, orbits, transitivity level, certificates, measures");
  std::string family, input;
  group_analyze->add_option("--family", family, "cyclic:N, symmetric:N, alternating:N, dihedral:N, trivial:N, pgl2:p, affine:p, "
                                                "hyperoctahedral-segments:n, regular:<family>");
  group_analyze->add_option("--input", input, "Group JSON {\"degree\", \"generators\"}");
  add_common(group_analyze, common);

  // hadamard validate | build | deform
  auto* hadamard = app.add_subcommand("hadamard", "Complex Hadamard matrices");
  hadamard->require_subcommand(1);
  double tol = kExactTol;
  std::string spec, q_file;
  bool random_q = false;
  auto* had_validate = hadamard->add_subcommand("validate", "Validate a matrix file and its magic unitary");
  had_validate->add_option("--input", input)->required();
  had_validate->add_option("--tol", tol);
  add_common(had_validate, common);
  auto* had_build = hadamard->add_subcommand("build", "Write a Hadamard matrix: fourier:N1xN2..., dita:G|H");
  auto* had_deform = hadamard->add_subcommand("deform", "Write a Dita deformation dita:G|H");
  for (auto* cmd : {had_build, had_deform}) {
    cmd->add_option("--spec", spec)->required();
    cmd->add_option("--q-file", q_file, "Matrix JSON with the unimodular Q");
    cmd->add_flag("--random-q", random_q, "Draw Q_ib = exp(2 pi i u)");
    cmd->add_option("--seed", seed);
    add_common(cmd, common);
  }

  // model build | check | character | orbits
  auto* model = app.add_subcommand("model", "Flat matrix models");
  model->require_subcommand(1);
  pipelines::ModelSpecOptions mopts;
  pipelines::ModelCheckOptions copts;
  int r = 1, k = 2, frames = 20;
  std::size_t samples = 1000;
  auto add_model_source = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "Model JSON, or a Hadamard JSON (kind: hadamard)");
    cmd->add_option("--spec", spec, "hadamard:<spec>, regular:<family>, classical:<family>, latin:<family>, weyl:<cycles>, "
                                    "sum:<a>+<b>, tensor:<a>*<b>");
    cmd->add_option("--seed", seed);
    cmd->add_option("--samples", samples, "Haar samples for weyl specs");
    cmd->add_option("--frames", frames, "Haar frames for latin specs");
    add_common(cmd, common);
  };
  auto* model_build = model->add_subcommand("build", "Write a model file");
  add_model_source(model_build);
  auto* model_check = model->add_subcommand("check", "Magic, flatness, stationarity, transitivity checks");
  add_model_source(model_check);
  model_check->add_flag("--stationary", copts.stationary);
  model_check->add_flag("--transitivity", copts.transitivity);
  model_check->add_flag("--double-transitivity", copts.double_transitivity);
  model_check->add_flag("--cesaro", copts.cesaro);
  model_check->add_option("--tol", copts.tol);
  model_check->add_option("--mc-tol", copts.monte_carlo_tol, "Tolerance for the stationarity check of sampled models");
  model_check->add_option("--p-max", cfg.p_max);
  model_check->add_option("--r-max", cfg.r_max);
  auto* model_character = model->add_subcommand("character", "Moments of the normalized main character");
  add_model_source(model_character);
  model_character->add_option("--r", r, "Convolution power");
  model_character->add_option("--p-max", cfg.p_max);
  auto* model_orbits = model->add_subcommand("orbits", "Orbit (k=1), orbital (k=2) and k=3 relations");
  add_model_source(model_orbits);
  model_orbits->add_option("--k", k)->check(CLI::Range(1, 3));

  // weyl run
  auto* weyl = app.add_subcommand("weyl", "Weyl cocycle models");
  weyl->require_subcommand(0, 1);
  auto* weyl_run = weyl->add_subcommand("run", "Cocycle, closed-form T_p, stationarity, character moments (default)");
  weyl_run->fallthrough();
  std::string weyl_group = "2";
  pipelines::WeylRunOptions wopts;
  cfg.samples = 10000;
  weyl->add_option("--group", weyl_group, "Cycle sizes of H, e.g. 2 or 2x2");
  weyl->add_option("--samples", cfg.samples);
  weyl->add_option("--seed", seed);
  weyl->add_option("--p-max", cfg.p_max);
  weyl->add_flag("--check-stationary", wopts.check_stationary);
  add_common(weyl, common);

  // suite acceptance
  auto* suite = app.add_subcommand("suite", "Batteries");
  suite->require_subcommand(1);
  auto* suite_acceptance = suite->add_subcommand("acceptance", "Run the acceptance battery");
  int only = 0;
  suite_acceptance->add_option("--only", only, "Run a single criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  auto seed_opt = [&](CLI::App* cmd) -> std::optional<std::uint64_t> {
    if (cmd->count("--seed")) return seed;
    return std::nullopt;
  };
  auto base_config = [&](const std::string& command) {
    cfg.command = command;
    cfg.output = common.output;
    if (!common.csv.empty()) cfg.options["csv"] = common.csv;
    return cfg;
  };

  try {
    if (*group_analyze) {
      if (family.empty() == input.empty()) throw InputError("give exactly one of --family or --input");
      auto c = base_config("group analyze");
      c.inputs = {family.empty() ? input : family};
      if (!family.empty()) c.options["family"] = family;
      const auto g = family.empty() ? pipelines::group_from_json(read_json_file(input)) : pipelines::group_from_spec(family);
      auto report = pipelines::group_analyze(c, g);
      return finish(report, common);
    }
    if (*had_validate) {
      auto c = base_config("hadamard validate");
      c.inputs = {input};
      c.tolerances["tol"] = tol;
      c.validate(false);
      auto report = pipelines::hadamard_validate(c, matrix_from_json(read_json_file(input)), tol);
      return finish(report, common);
    }
    if (*had_build || *had_deform) {
      CLI::App* cmd = *had_build ? had_build : had_deform;
      if (*had_deform && spec.rfind("dita:", 0) != 0) throw InputError("deform needs a dita:G|H spec");
      if (spec.rfind("dita:", 0) == 0 && q_file.empty() && !random_q) throw InputError("dita needs --q-file or --random-q");
      if (random_q && !seed_opt(cmd)) throw InputError("--random-q needs --seed");
      const auto h = pipelines::hadamard_from_spec(spec, load_q(q_file), seed_opt(cmd));
      emit(h.to_json(), common.output);
      return kExitPass;
    }
    for (CLI::App* cmd : {model_build, model_check, model_character, model_orbits}) {
      if (!*cmd) continue;
      if (spec.empty() == input.empty()) throw InputError("give exactly one of --input or --spec");
      mopts.seed = seed_opt(cmd);
      mopts.samples = samples;
      mopts.frames = frames;
      const FlatModel m = input.empty() ? pipelines::model_from_spec(spec, mopts) : pipelines::model_from_file(input);
      if (cmd == model_build) {
        emit(m.to_json(), common.output);
        return kExitPass;
      }
      auto c = base_config(std::string("model ") + cmd->get_name());
      c.inputs = {input.empty() ? spec : input};
      c.seed = mopts.seed;
      if (!spec.empty()) c.samples = spec.rfind("weyl:", 0) == 0 ? samples : 0;
      if (c.p_max == 0) c.p_max = 3;
      if (cmd == model_check) {
        c.tolerances["tol"] = copts.tol;
        if (copts.monte_carlo_tol > 0) c.tolerances["mc_tol"] = copts.monte_carlo_tol;
        for (auto [flag, on] : {std::pair{"stationary", copts.stationary}, {"transitivity", copts.transitivity},
                                {"double_transitivity", copts.double_transitivity}, {"cesaro", copts.cesaro}})
          if (on) c.options[flag] = "on";
        c.validate(false);
        auto report = pipelines::model_check(c, m, copts);
        return finish(report, common);
      }
      if (cmd == model_character) {
        c.r_max = r;
        c.options["r"] = std::to_string(r);
        c.validate(false);
        auto report = pipelines::model_character(c, m, r);
        return finish(report, common);
      }
      c.options["k"] = std::to_string(k);
      auto report = pipelines::model_orbits(c, m, k);
      return finish(report, common);
    }
    if (*weyl) {
      auto c = base_config("weyl run");
      c.inputs = {weyl_group};
      c.seed = seed_opt(weyl);
      if (c.p_max == 0) c.p_max = 2;
      if (wopts.check_stationary) c.options["check_stationary"] = "on";
      wopts.cycles = parse_cycle_sizes(weyl_group);
      auto report = pipelines::weyl_run(c, wopts);
      return finish(report, common);
    }
    if (*suite_acceptance) {
      bool all = true;
      for (const auto& crit : acceptance::criteria()) {
        if (only && crit.id != only) continue;
        const auto res = acceptance::run(crit);
        all = all && res.passed;
        std::printf("[%s] criterion %2d: %s (%.1fs)", res.passed ? "PASS" : "FAIL", res.id, res.title.c_str(), res.seconds);
        for (const auto& note : res.notes) std::printf(" | %s", note.c_str());
        std::printf("\n");
        std::fflush(stdout);
      }
      return all ? kExitPass : kExitCheckFailed;
    }
  } catch (const CapExceeded& e) {
    return error_record("resource_cap", e.what(), kExitCap, e.cap());
  } catch (const InputError& e) {
    return error_record("input", e.what(), kExitInput);
  } catch (const nlohmann::json::exception& e) {
    return error_record("input", e.what(), kExitInput);
  } catch (const std::filesystem::filesystem_error& e) {
    return error_record("input", e.what(), kExitInput);
  } catch (const InvariantViolation& e) {
    return error_record("invariant", e.what(), kExitCheckFailed);
  }
  return kExitInput;
}
