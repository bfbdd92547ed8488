#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "shocklab/harness.hpp"

namespace shocklab {

/// Parsed configuration document. Keys mirror the ExperimentConfig and
/// SweepSpec field names:
///
///   {
///     "medium": {"profile": "layered", "theta": 45, "period": 1,
///                "K_A": 1, "K_B": 4, "rho_A": 1, "rho_B": 4, "fraction": 0.5},
///     "law": {"kind": "exponential"}  |  {"kind": "cubic", "alpha": 0.1, ...},
///     "sigma_l": 2, "sigma_r": 0, "u_r": 0,
///     "resolution": 64, "length_x": 20, "shock_x": 5, "t_final": 0,
///     "snapshot_interval": 0, "samples": 40,
///     "solver": {"cfl": 0.9, "limiter": "mc", "threads": 1},
///     "diagnostics": {"track_front": true, "classify": false, "kinetic": "full",
///                     "tau_abs": 0.01, "rho_persist": 0.8, "kappa": 0.6},
///     "sweep": {"rho_B": [...], "K_B": [...], "sigma_l": [...], "sigma_r": [...],
///               "theta": [...], "profile": [...], "law": [...],
///               "tie_K_B_to_rho_B": false}
///   }
///
/// A top-level "theta" overrides medium.theta. Unknown keys are rejected.
struct ConfigDocument {
    ExperimentConfig experiment;
    std::optional<SweepSpec> sweep;
};

ConfigDocument parse_config(const std::string& text);
ConfigDocument load_config(const std::filesystem::path& path);

/// Canonical JSON of a single experiment (round-trips through parse_config).
std::string to_json(const ExperimentConfig& config);

}  // namespace shocklab
