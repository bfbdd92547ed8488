#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "shocklab/diagnostics.hpp"
#include "shocklab/homogenize.hpp"
#include "shocklab/media.hpp"
#include "shocklab/rh.hpp"
#include "shocklab/solver.hpp"

namespace shocklab {

struct ExperimentConfig {
    MediumSpec medium;
    ConstitutiveLaw law = ConstitutiveLaw::exponential();
    double sigma_l = 2.0;
    double sigma_r = 0.0;
    double u_r = 0.0;
    double resolution = 64.0;  // cells per unit length
    double length_x = 0.0;     // 0: 20 periods
    double shock_x = -1.0;     // negative: length_x / 4
    double t_final = 0.0;      // 0: the front reaches 85% of length_x
    double snapshot_interval = 0.0;
    int samples = 40;  // diagnostic samples over the run
    double cfl = 0.9;
    Limiter limiter = Limiter::mc;
    int threads = 1;

    // Diagnostics toggles.
    bool track_front = true;
    bool classify = false;  // adds a run at half resolution
    ClassificationThresholds thresholds;
    KineticTerm kinetic = KineticTerm::full;

    void validate() const;
    double domain_length() const;
    double shock_start() const;
};

struct SweepSpec {
    ExperimentConfig base;
    std::vector<double> rho_B;
    std::vector<double> K_B;
    std::vector<double> sigma_l;
    std::vector<double> sigma_r;
    std::vector<double> theta;
    std::vector<Profile> profile;
    std::vector<ConstitutiveLaw> law;
    /// Pair K_B with rho_B (K_B = rho_B) instead of crossing the two lists.
    bool tie_K_B_to_rho_B = false;

    std::size_t size() const;
};

/// Cartesian product in the order rho_B, K_B, sigma_l, sigma_r, theta,
/// profile, law (rho_B varies slowest). Throws InvalidArgument on empty lists.
std::vector<ExperimentConfig> expand_sweep(const SweepSpec& sweep);

/// Reference coefficients for the cubic law: alpha = 0.1, beta = 0, gamma = 5.
ConstitutiveLaw reference_cubic();

struct ExperimentRecord {
    std::string id;
    ExperimentConfig config;
    std::uint64_t digest = 0;
    double s_predicted = 0.0;
    std::optional<double> s_measured;
    std::optional<double> rel_error;
    double fit_residual = 0.0;
    double c_h = 0.0;
    double c_m = 0.0;
    double t_final = 0.0;
    double entropy_loss = 0.0;  // at t_final
    std::optional<RunClass> classification;
    double dispersion_proxy = 0.0;
    EntropyTrace entropy;
    FrontTrace front;
    std::string note;  // non-fatal problems, e.g. front not found
};

/// FNV-1a over the canonical text of every config field.
std::uint64_t config_digest(const ExperimentConfig& config);
std::string canonical_text(const ExperimentConfig& config);

/// |Z_B/Z_A - 1| + |c_B/c_A - 1| with linear impedances and speeds.
double dispersion_proxy(const MediumSpec& spec);

/// Resolved final time for a config (automatic when t_final == 0).
double planned_t_final(const ExperimentConfig& config, double s_predicted);

/// 2D variable-coefficient problem with RH-connected initial data.
Problem build_problem(const ExperimentConfig& config, double resolution);

ExperimentRecord run_experiment(const ExperimentConfig& config, const SampleObserver& observer = {});

/// Runs configs on `jobs` threads; records come back in config order.
std::vector<ExperimentRecord> run_sweep(const std::vector<ExperimentConfig>& configs, int jobs);

struct SpeedSummary {
    double theta_deg = 0.0;
    std::size_t count = 0;
    std::size_t measured = 0;
    double median_rel_error = 0.0;
    double max_rel_error = 0.0;
};

/// One entry per distinct angle (ascending), over records with a measurement.
std::vector<SpeedSummary> summarize(const std::vector<ExperimentRecord>& records);

double median(std::vector<double> values);

/// speeds.csv header and one row per record.
std::string speeds_csv(const std::vector<ExperimentRecord>& records);
std::string entropy_csv(const ExperimentRecord& record);
std::string front_csv(const ExperimentRecord& record);
std::string summary_json(const std::vector<ExperimentRecord>& records);

/// Writes speeds.csv, entropy_<id>.csv and summary.json into dir.
void emit_outputs(const std::vector<ExperimentRecord>& records, const std::filesystem::path& dir);

/// Row of a speeds.csv file as read back by the compare tool.
struct SpeedRow {
    std::string profile;
    std::string law;
    double theta_deg = 0.0;
    double K_B = 0.0;
    double rho_B = 0.0;
    double sigma_l = 0.0;
    double sigma_r = 0.0;
    double s_predicted = 0.0;
    std::optional<double> s_measured;
    std::optional<double> rel_error;
    double dispersion_proxy = 0.0;
    std::string classification;
};

std::vector<SpeedRow> read_speeds_csv(const std::filesystem::path& path);
std::vector<SpeedRow> parse_speeds_csv(const std::string& text);

struct ScatterStats {
    std::size_t rows = 0;
    std::size_t measured = 0;
    double median_rel_error = 0.0;
    double max_rel_error = 0.0;
    double slope = 0.0;        // least-squares measured = slope * predicted through the origin
    double correlation = 0.0;  // Pearson correlation of predicted and measured
};

ScatterStats scatter_stats(const std::vector<SpeedRow>& rows);

}  // namespace shocklab
