#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qpg/hadamard.hpp"
#include "qpg/model.hpp"
#include "qpg/permgroup.hpp"
#include "qpg/report.hpp"

namespace qpg::pipelines {

/// {"degree": N, "generators": [[images, 1-based], ...]}
perm::PermGroup group_from_json(const Json& j);
Json group_to_json(const perm::PermGroup& group);

/// A named family (see perm::named_group) or "regular:<family>" for the
/// left-regular action of a named group on itself.
perm::PermGroup group_from_spec(std::string_view spec);

/// "fourier:N1xN2..." or "dita:G|H" (G, H cycle lists such as 2x2). Dita
/// specs need `q` (from a file) or a seed for random phases.
HadamardMatrix hadamard_from_spec(std::string_view spec, const std::optional<CMatrix>& q,
                                  std::optional<std::uint64_t> seed);

struct ModelSpecOptions {
  std::optional<std::uint64_t> seed;
  std::size_t samples = 1000;   // Weyl Haar samples
  int frames = 20;              // Haar frames per Latin square
  std::size_t latin_limit = 100000;
};

/// Model builders: "hadamard:<fourier/dita spec>", "regular:<family>",
/// "classical:<family>" (K = 1 permutation grids), "latin:<family>" (all
/// Latin tuples x Haar frames), "weyl:<cycles>" (Haar samples),
/// "sum:<spec>+<spec>", "tensor:<spec>*<spec>".
FlatModel model_from_spec(std::string_view spec, const ModelSpecOptions& opts);

/// Reads a model file; a {"kind": "hadamard"} matrix file gives its
/// single-point Hadamard model.
FlatModel model_from_file(const std::string& path);

Report group_analyze(const ExperimentConfig& cfg, const perm::PermGroup& group);
Report hadamard_validate(const ExperimentConfig& cfg, const CMatrix& m, double tol);

struct ModelCheckOptions {
  double tol = kExactTol;
  bool stationary = false;
  bool transitivity = false;
  bool double_transitivity = false;  // recorded, not asserted
  bool cesaro = false;               // recorded, not asserted
  double monte_carlo_tol = 0.0;      // > 0 replaces tol for the stationarity check
};

Report model_check(const ExperimentConfig& cfg, const FlatModel& model, const ModelCheckOptions& opts);
Report model_character(const ExperimentConfig& cfg, const FlatModel& model, int r);
Report model_orbits(const ExperimentConfig& cfg, const FlatModel& model, int k);

struct WeylRunOptions {
  std::vector<int> cycles{2};
  bool check_stationary = false;
  int closed_form_p_max = 3;
};

Report weyl_run(const ExperimentConfig& cfg, const WeylRunOptions& opts);

}  // namespace qpg::pipelines
