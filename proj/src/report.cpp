#include "qpg/report.hpp"

#include <cstdio>
#include <fstream>

#include "qpg/errors.hpp"

namespace qpg {

void ExperimentConfig::validate(bool stochastic) const {
  if (p_max < 0 || r_max < 0) throw InputError("numeric parameters must be positive");
  for (const auto& [name, tol] : tolerances)
    if (!(tol > 0.0)) throw InputError("tolerance '" + name + "' must be positive");
  if (stochastic && !seed) throw InputError("a seed is mandatory for stochastic runs (--seed)");
}

Json ExperimentConfig::to_json() const {
  Json j = {{"command", command}, {"inputs", inputs}, {"samples", samples}, {"p_max", p_max}, {"r_max", r_max}};
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["tolerances"] = Json(tolerances);
  j["options"] = Json(options);
  j["output"] = output;
  return j;
}

CheckRecord& Report::check(std::string name, double defect, double tolerance, bool asserted) {
  CheckRecord r;
  r.name = std::move(name);
  r.defect = defect;
  r.tolerance = tolerance;
  r.passed = defect <= tolerance;
  r.asserted = asserted;
  checks_.push_back(std::move(r));
  return checks_.back();
}

CheckRecord& Report::verdict(std::string name, bool passed, bool asserted) {
  auto& r = check(std::move(name), passed ? 0.0 : 1.0, 0.0, asserted);
  r.passed = passed;
  return r;
}

void Report::add_series(const std::string& name, Series series) { series_[name] = std::move(series); }

void Report::add_timing(const std::string& stage, double seconds) { timings_[stage] = seconds; }

bool Report::all_asserted_passed() const {
  for (const auto& c : checks_)
    if (c.asserted && !c.passed) return false;
  return true;
}

Json Report::to_json() const {
  Json checks = Json::array();
  for (const auto& c : checks_) {
    Json r = {{"name", c.name}, {"verdict", c.passed ? "pass" : "fail"}, {"asserted", c.asserted},
              {"defect", c.defect}, {"tolerance", c.tolerance}};
    if (c.samples) r["samples"] = *c.samples;
    if (c.stderr_) r["stderr"] = *c.stderr_;
    if (!c.detail.is_null()) r["detail"] = c.detail;
    checks.push_back(std::move(r));
  }
  Json series = Json::object();
  for (const auto& [name, s] : series_) series[name] = {{"columns", s.columns}, {"rows", s.rows}};
  Json j = {{"config", config_.to_json()}, {"checks", checks}, {"data", data_}, {"series", series},
            {"passed", all_asserted_passed()}};
  if (timings_enabled_) j["timings_seconds"] = Json(timings_);
  return j;
}

std::string to_csv(const Series& series) {
  std::string out;
  for (std::size_t c = 0; c < series.columns.size(); ++c) out += (c ? "," : "") + series.columns[c];
  out += "\n";
  char buf[64];
  for (const auto& row : series.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      out += (c ? "," : "") + std::string(buf);
    }
    out += "\n";
  }
  return out;
}

void Report::write_series_csv(const std::filesystem::path& stem) const {
  for (const auto& [name, s] : series_) {
    std::filesystem::path path = stem;
    path += "." + name + ".csv";
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path.string());
    f << to_csv(s);
  }
}

}  // namespace qpg
