// shocklab: command line front end for single experiments and sweeps.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "shocklab/config.hpp"
#include "shocklab/errors.hpp"
#include "shocklab/harness.hpp"
#include "shocklab/snapshot_io.hpp"

using namespace shocklab;
namespace fs = std::filesystem;

namespace {

std::string fmt(double v) { return format_double(v); }

int cmd_effective(const std::string& path, bool as_json) {
    const auto cfg = load_config(path).experiment;
    const auto m = effective_parameters(cfg.medium);
    if (as_json) {
        nlohmann::ordered_json j;
        j["theta_deg"] = m.theta_deg;
        j["K_bar"] = m.K_bar;
        j["rho_m"] = m.rho_m;
        j["rho_h"] = m.rho_h;
        j["rho_bar"] = m.rho_bar;
        j["c_eff"] = m.c_eff;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "theta_deg " << fmt(m.theta_deg) << "\n"
              << "K_bar     " << fmt(m.K_bar) << "\n"
              << "rho_m     " << fmt(m.rho_m) << "\n"
              << "rho_h     " << fmt(m.rho_h) << "\n"
              << "rho_bar   " << fmt(m.rho_bar) << "\n"
              << "c_eff     " << fmt(m.c_eff) << "\n";
    return 0;
}

int cmd_predict(const std::string& path) {
    const auto cfg = load_config(path).experiment;
    const auto med = effective_parameters(cfg.medium);
    const auto shock = connect_right_going(cfg.sigma_l, cfg.sigma_r, cfg.u_r, cfg.law, med);
    std::cout << "s_eff " << fmt(shock.s_eff) << "\n"
              << "u_l   " << fmt(shock.u_l) << "\n"
              << "c_h   " << fmt(threshold_ch(cfg.medium, cfg.law, cfg.sigma_r)) << "\n"
              << "c_m   " << fmt(threshold_cm(cfg.medium, cfg.law, cfg.sigma_r)) << "\n"
              << "c_eff " << fmt(med.c_eff) << "\n";
    return 0;
}

void print_record(const ExperimentRecord& r) {
    std::cout << "s_predicted   " << fmt(r.s_predicted) << "\n";
    if (r.s_measured) {
        std::cout << "s_measured    " << fmt(*r.s_measured) << "\n"
                  << "rel_error     " << fmt(*r.rel_error) << "\n"
                  << "fit_residual  " << fmt(r.fit_residual) << "\n";
    }
    std::cout << "t_final       " << fmt(r.t_final) << "\n"
              << "entropy_loss  " << fmt(r.entropy_loss) << "\n";
    if (r.classification) std::cout << "class         " << to_string(*r.classification) << "\n";
    if (!r.note.empty()) std::cout << "note          " << r.note << "\n";
}

int cmd_simulate(const std::string& path, const std::string& snap_dir, bool binary,
                 const std::string& out_dir) {
    const auto cfg = load_config(path).experiment;
    SampleObserver observer;
    int written = 0;
    double next = 0.0;
    if (!snap_dir.empty()) {
        fs::create_directories(snap_dir);
        observer = [&](double t, const StateField& state) {
            if (t + 1e-12 < next) return;
            char name[32];
            std::snprintf(name, sizeof name, "snap_%05d.%s", written++, binary ? "bin" : "csv");
            write_snapshot_file(fs::path(snap_dir) / name, extract_snapshot(t, state));
            // Cadence 0 writes every diagnostic sample.
            while (cfg.snapshot_interval > 0 && next <= t + 1e-12) next += cfg.snapshot_interval;
        };
    }
    auto rec = run_experiment(cfg, observer);
    rec.id = "0001";
    print_record(rec);
    if (!snap_dir.empty()) std::cout << "snapshots     " << written << "\n";
    if (!out_dir.empty()) emit_outputs({rec}, out_dir);
    return rec.note.empty() ? 0 : 3;
}

int cmd_sweep(const std::string& path, const std::string& out_dir, int jobs) {
    const auto doc = load_config(path);
    std::vector<ExperimentConfig> cfgs;
    if (doc.sweep) {
        std::cout << "sweep size " << doc.sweep->size() << "\n" << std::flush;
        cfgs = expand_sweep(*doc.sweep);
    } else {
        cfgs.push_back(doc.experiment);
    }
    const auto records = run_sweep(cfgs, jobs);
    emit_outputs(records, out_dir);
    std::size_t flagged = 0;
    for (const auto& r : records)
        if (!r.note.empty()) ++flagged;
    for (const auto& s : summarize(records))
        std::cout << "theta " << fmt(s.theta_deg) << "  measured " << s.measured << "/" << s.count
                  << "  median " << fmt(s.median_rel_error) << "  max " << fmt(s.max_rel_error)
                  << "\n";
    std::cout << "records " << records.size() << "  flagged " << flagged << "  -> " << out_dir
              << "\n";
    return 0;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("bad resolution list entry '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty resolution list");
    return out;
}

int cmd_entropy(const std::string& path, const std::string& res_list, const std::string& out_dir) {
    auto cfg = load_config(path).experiment;
    cfg.classify = false;
    std::vector<ResolvedTrace> traces;
    std::vector<ExperimentRecord> records;
    for (double n : parse_list(res_list)) {
        cfg.resolution = n;
        auto rec = run_experiment(cfg);
        if (!rec.note.empty() && rec.entropy.times.empty())
            throw Error("run at resolution " + fmt(n) + " failed: " + rec.note);
        char id[16];
        std::snprintf(id, sizeof id, "%04zu", records.size() + 1);
        rec.id = id;
        std::cout << "resolution " << fmt(n) << "  t " << fmt(rec.t_final) << "  loss "
                  << fmt(rec.entropy_loss) << "\n";
        traces.push_back({n, rec.entropy});
        records.push_back(std::move(rec));
    }
    if (traces.size() >= 2) {
        const auto c = classify_run(traces, records.back().t_final, cfg.thresholds);
        std::cout << "class " << to_string(c) << "\n";
    }
    if (!out_dir.empty()) emit_outputs(records, out_dir);
    return 0;
}

int cmd_compare(const std::string& path) {
    const auto st = scatter_stats(read_speeds_csv(path));
    std::cout << "rows        " << st.rows << "\n"
              << "measured    " << st.measured << "\n"
              << "median_rel  " << fmt(st.median_rel_error) << "\n"
              << "max_rel     " << fmt(st.max_rel_error) << "\n"
              << "slope       " << fmt(st.slope) << "\n"
              << "correlation " << fmt(st.correlation) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shocklab: shocks in periodic media"};
    app.require_subcommand(1);

    std::string config, out, snaps, resolutions = "32,64,128", csv;
    bool as_json = false, binary = false;
    int jobs = 1;

    auto* eff = app.add_subcommand("effective", "Print effective medium parameters");
    eff->add_option("config", config)->required()->check(CLI::ExistingFile);
    eff->add_flag("--json", as_json);

    auto* pred = app.add_subcommand("predict-speed", "Print predicted shock speed and thresholds");
    pred->add_option("config", config)->required()->check(CLI::ExistingFile);

    auto* sim = app.add_subcommand("simulate", "Run one experiment");
    sim->add_option("config", config)->required()->check(CLI::ExistingFile);
    sim->add_option("--snapshots", snaps, "Directory for snapshot files");
    sim->add_flag("--binary", binary, "Write binary snapshots instead of CSV");
    sim->add_option("--out", out, "Directory for speeds/entropy/summary files");

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
    sweep->add_option("config", config)->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out)->required();
    sweep->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    auto* ent = app.add_subcommand("entropy", "Entropy loss across resolutions");
    ent->add_option("config", config)->required()->check(CLI::ExistingFile);
    ent->add_option("--resolutions", resolutions);
    ent->add_option("--out", out);

    auto* cmp = app.add_subcommand("compare", "Scatter statistics of a speeds.csv");
    cmp->add_option("records", csv)->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eff->parsed()) return cmd_effective(config, as_json);
        if (pred->parsed()) return cmd_predict(config);
        if (sim->parsed()) return cmd_simulate(config, snaps, binary, out);
        if (sweep->parsed()) return cmd_sweep(config, out, jobs);
        if (ent->parsed()) return cmd_entropy(config, resolutions, out);
        if (cmp->parsed()) return cmd_compare(csv);
    } catch (const Error& e) {
        std::cerr << "shocklab: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "shocklab: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
