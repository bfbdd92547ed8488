#include "shocklab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "shocklab/errors.hpp"
#include "shocklab/snapshot_io.hpp"

namespace shocklab {

void ExperimentConfig::validate() const {
    medium.validate();
    if (!(resolution > 0.0) || resolution * medium.period < 8.0) {
        throw ConfigError("resolution must give at least 8 cells per material period");
    }
    if (sigma_l == sigma_r) {
        throw ConfigError("sigma_l and sigma_r must differ");
    }
    if (samples < 10) {
        throw ConfigError("samples must be at least 10");
    }
    if (!(cfl > 0.0 && cfl < 1.0)) {
        throw ConfigError("cfl must lie in (0, 1)");
    }
    if (length_x < 0.0 || t_final < 0.0 || snapshot_interval < 0.0 || threads < 0) {
        throw ConfigError("length_x, t_final, snapshot_interval and threads must be non-negative");
    }
    const double L = domain_length();
    const double xs = shock_start();
    if (!(xs > 0.0 && xs < L)) {
        throw ConfigError("shock_x must lie inside the domain");
    }
}

double ExperimentConfig::domain_length() const {
    return length_x > 0.0 ? length_x : 20.0 * medium.period;
}

double ExperimentConfig::shock_start() const {
    return shock_x >= 0.0 ? shock_x : 0.25 * domain_length();
}

std::size_t SweepSpec::size() const {
    const std::size_t k = tie_K_B_to_rho_B ? 1 : K_B.size();
    return rho_B.size() * k * sigma_l.size() * sigma_r.size() * theta.size() * profile.size() *
           law.size();
}

std::vector<ExperimentConfig> expand_sweep(const SweepSpec& sw) {
    if (sw.rho_B.empty() || (!sw.tie_K_B_to_rho_B && sw.K_B.empty()) || sw.sigma_l.empty() ||
        sw.sigma_r.empty() || sw.theta.empty() || sw.profile.empty() || sw.law.empty()) {
        throw InvalidArgument("every sweep list must be non-empty");
    }
    const std::vector<double> tied{0.0};
    std::vector<ExperimentConfig> out;
    out.reserve(sw.size());
    for (double rb : sw.rho_B) {
        for (double kb : sw.tie_K_B_to_rho_B ? tied : sw.K_B) {
            for (double sl : sw.sigma_l) {
                for (double sr : sw.sigma_r) {
                    for (double th : sw.theta) {
                        for (Profile p : sw.profile) {
                            for (const ConstitutiveLaw& law : sw.law) {
                                ExperimentConfig c = sw.base;
                                c.medium.rho_B = rb;
                                c.medium.K_B = sw.tie_K_B_to_rho_B ? rb : kb;
                                c.sigma_l = sl;
                                c.sigma_r = sr;
                                c.medium.theta_deg = th;
                                c.medium.profile = p;
                                c.law = law;
                                out.push_back(c);
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

ConstitutiveLaw reference_cubic() { return ConstitutiveLaw::cubic(0.1, 0.0, 5.0); }

std::string canonical_text(const ExperimentConfig& c) {
    std::ostringstream s;
    auto f = [](double v) { return format_double(v); };
    s << "profile=" << to_string(c.medium.profile) << ";theta=" << f(c.medium.theta_deg)
      << ";period=" << f(c.medium.period) << ";K_A=" << f(c.medium.K_A) << ";K_B=" << f(c.medium.K_B)
      << ";rho_A=" << f(c.medium.rho_A) << ";rho_B=" << f(c.medium.rho_B)
      << ";fraction=" << f(c.medium.fraction) << ";law=" << to_string(c.law.kind());
    if (c.law.kind() == LawKind::cubic) {
        s << ";alpha=" << f(c.law.alpha()) << ";beta=" << f(c.law.beta()) << ";gamma=" << f(c.law.gamma());
    }
    s << ";sigma_l=" << f(c.sigma_l) << ";sigma_r=" << f(c.sigma_r) << ";u_r=" << f(c.u_r)
      << ";resolution=" << f(c.resolution) << ";length_x=" << f(c.length_x)
      << ";shock_x=" << f(c.shock_x) << ";t_final=" << f(c.t_final)
      << ";samples=" << c.samples << ";cfl=" << f(c.cfl) << ";limiter=" << to_string(c.limiter)
      << ";classify=" << c.classify << ";tau_abs=" << f(c.thresholds.tau_abs)
      << ";rho_persist=" << f(c.thresholds.rho_persist) << ";kappa=" << f(c.thresholds.kappa)
      << ";kinetic=" << (c.kinetic == KineticTerm::full ? "full" : "x_only");
    return s.str();
}

std::uint64_t config_digest(const ExperimentConfig& c) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : canonical_text(c)) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

double dispersion_proxy(const MediumSpec& spec) {
    const Material a{spec.K_A, spec.rho_A};
    const Material b{spec.K_B, spec.rho_B};
    return std::fabs(b.linear_impedance() / a.linear_impedance() - 1.0) +
           std::fabs(b.linear_speed() / a.linear_speed() - 1.0);
}

double planned_t_final(const ExperimentConfig& c, double s_predicted) {
    const double L = c.domain_length();
    const double xs = c.shock_start();
    if (!(s_predicted > 0.0)) {
        throw ConfigError("predicted speed must be positive for a right-going shock");
    }
    if (c.t_final > 0.0) {
        if (xs + s_predicted * c.t_final > 0.9 * L) {
            throw ConfigError("t_final lets the front come within 10% of the outflow boundary");
        }
        return c.t_final;
    }
    const double t = (0.85 * L - xs) / s_predicted;
    if (!(t > 0.0)) {
        throw ConfigError("shock starts too close to the outflow boundary");
    }
    return t;
}

Problem build_problem(const ExperimentConfig& c, double resolution) {
    const EffectiveMedium eff = effective_parameters(c.medium);
    const ShockSetup setup = connect_right_going(c.sigma_l, c.sigma_r, c.u_r, c.law, eff);
    const Grid2D g = oblique_grid(c.medium, resolution, c.domain_length());

    Problem p;
    p.initial = StateField(g);
    sample_material(p.initial, c.medium);
    const double xs = c.shock_start();
    initialize_from_stress(p.initial, c.law, [&](double x, double) {
        return x < xs ? PointState{setup.sigma_l, setup.u_l, 0.0}
                      : PointState{setup.sigma_r, setup.u_r, 0.0};
    });
    p.law = c.law;
    p.config.cfl_target = c.cfl;
    p.config.limiter = c.limiter;
    p.config.t_final = planned_t_final(c, setup.s_eff);
    p.config.diagnostic_interval = p.config.t_final / c.samples;
    p.config.snapshot_interval = c.snapshot_interval;
    p.config.threads = c.threads;
    p.config.bc_x = BoundaryX::outflow;
    if (c.track_front) {
        p.front = FrontLevels{c.sigma_l, c.sigma_r};
    }
    return p;
}

namespace {

EntropyTrace trace_with_kinetic(const RunResult& r, const ExperimentConfig& c,
                                const std::vector<double>& alt_eta) {
    EntropyTrace tr = r.entropy_trace();
    if (c.kinetic == KineticTerm::x_only) {
        tr.eta = alt_eta;
    }
    return tr;
}

}  // namespace

ExperimentRecord run_experiment(const ExperimentConfig& c, const SampleObserver& observer) {
    c.validate();
    ExperimentRecord rec;
    rec.config = c;
    rec.digest = config_digest(c);
    rec.dispersion_proxy = dispersion_proxy(c.medium);

    const EffectiveMedium eff = effective_parameters(c.medium);
    rec.s_predicted = effective_shock_speed(c.sigma_l, c.sigma_r, c.law, eff, Direction::right);
    rec.c_h = threshold_ch(c.medium, c.law, c.sigma_r);
    rec.c_m = threshold_cm(c.medium, c.law, c.sigma_r);

    auto solve = [&](double resolution, const SampleObserver& obs) {
        const Problem p = build_problem(c, resolution);
        std::vector<double> x_only;
        SampleObserver wrapped = [&](double t, const StateField& s) {
            if (c.kinetic == KineticTerm::x_only) {
                x_only.push_back(entropy(s, c.law, KineticTerm::x_only));
            }
            if (obs) obs(t, s);
        };
        RunResult r = run(p, wrapped);
        EntropyTrace tr = trace_with_kinetic(r, c, x_only);
        return std::make_pair(std::move(r), std::move(tr));
    };

    try {
        auto [result, trace] = solve(c.resolution, observer);
        rec.t_final = result.t_final;
        rec.entropy = trace;
        rec.entropy_loss = trace.loss_at(result.t_final);
        rec.front = result.front_trace();
        try {
            const SpeedFit fit = measure_speed(rec.front);
            rec.s_measured = fit.speed;
            rec.fit_residual = fit.residual;
            rec.rel_error = std::fabs(fit.speed - rec.s_predicted) / rec.s_predicted;
        } catch (const InsufficientSamples&) {
            rec.note = "front not found";
        }
        if (c.classify) {
            auto [coarse_result, coarse_trace] = solve(0.5 * c.resolution, {});
            const ResolvedTrace traces[] = {{0.5 * c.resolution, coarse_trace},
                                            {c.resolution, trace}};
            rec.classification = classify_run(traces, result.t_final, c.thresholds);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        rec.note = std::string("solver error: ") + e.what();
    }
    return rec;
}

std::vector<ExperimentRecord> run_sweep(const std::vector<ExperimentConfig>& configs, int jobs) {
    std::vector<ExperimentRecord> out(configs.size());
    auto label = [](std::size_t k) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%04zu", k + 1);
        return std::string(buf);
    };
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        for (std::size_t k = next++; k < configs.size(); k = next++) {
            try {
                out[k] = run_experiment(configs[k]);
            } catch (const Error& e) {
                ExperimentRecord r;
                r.config = configs[k];
                r.digest = config_digest(configs[k]);
                r.dispersion_proxy = dispersion_proxy(configs[k].medium);
                r.note = std::string("error: ") + e.what();
                out[k] = std::move(r);
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
            out[k].id = label(k);
        }
    };
    const int n = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(1, configs.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

double median(std::vector<double> v) {
    if (v.empty()) {
        throw InvalidArgument("median of an empty list");
    }
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<SpeedSummary> summarize(const std::vector<ExperimentRecord>& records) {
    std::map<double, std::vector<const ExperimentRecord*>> by_angle;
    for (const auto& r : records) by_angle[r.config.medium.theta_deg].push_back(&r);
    std::vector<SpeedSummary> out;
    for (const auto& [theta, recs] : by_angle) {
        SpeedSummary s;
        s.theta_deg = theta;
        s.count = recs.size();
        std::vector<double> errs;
        for (const auto* r : recs) {
            if (r->rel_error) errs.push_back(*r->rel_error);
        }
        s.measured = errs.size();
        if (!errs.empty()) {
            s.median_rel_error = median(errs);
            s.max_rel_error = *std::max_element(errs.begin(), errs.end());
        }
        out.push_back(s);
    }
    return out;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string class_label(const ExperimentRecord& r) {
    return r.classification ? std::string(to_string(*r.classification)) : "unclassified";
}

const char* kSpeedsHeader =
    "profile,law,theta_deg,K_B,rho_B,sigma_l,sigma_r,s_predicted,s_measured,rel_error,"
    "dispersion_proxy,classification";

}  // namespace

std::string speeds_csv(const std::vector<ExperimentRecord>& records) {
    std::ostringstream s;
    s << kSpeedsHeader << '\n';
    for (const auto& r : records) {
        const auto& c = r.config;
        s << to_string(c.medium.profile) << ',' << to_string(c.law.kind()) << ','
          << format_double(c.medium.theta_deg) << ',' << format_double(c.medium.K_B) << ','
          << format_double(c.medium.rho_B) << ',' << format_double(c.sigma_l) << ','
          << format_double(c.sigma_r) << ',' << format_double(r.s_predicted) << ','
          << opt(r.s_measured) << ',' << opt(r.rel_error) << ','
          << format_double(r.dispersion_proxy) << ',' << class_label(r) << '\n';
    }
    return s.str();
}

std::string entropy_csv(const ExperimentRecord& r) {
    std::ostringstream s;
    s << "t,eta,eta_normalized,boundary_work\n";
    if (r.entropy.size() == 0) return s.str();
    const auto norm = r.entropy.normalized();
    for (std::size_t k = 0; k < r.entropy.size(); ++k) {
        s << format_double(r.entropy.times[k]) << ',' << format_double(r.entropy.eta[k]) << ','
          << format_double(norm[k]) << ',' << format_double(r.entropy.boundary_work[k]) << '\n';
    }
    return s.str();
}

std::string front_csv(const ExperimentRecord& r) {
    std::ostringstream s;
    s << "t,x_front\n";
    for (std::size_t k = 0; k < r.front.size(); ++k) {
        s << format_double(r.front.times[k]) << ',' << format_double(r.front.positions[k]) << '\n';
    }
    return s.str();
}

std::string summary_json(const std::vector<ExperimentRecord>& records) {
    using nlohmann::json;
    json j;
    std::vector<double> errs;
    for (const auto& r : records) {
        if (r.rel_error) errs.push_back(*r.rel_error);
    }
    j["records"] = records.size();
    j["measured"] = errs.size();
    j["median_rel_error"] = errs.empty() ? 0.0 : median(errs);
    j["max_rel_error"] = errs.empty() ? 0.0 : *std::max_element(errs.begin(), errs.end());
    json angles = json::array();
    for (const auto& s : summarize(records)) {
        angles.push_back({{"theta_deg", s.theta_deg},
                          {"count", s.count},
                          {"measured", s.measured},
                          {"median_rel_error", s.median_rel_error},
                          {"max_rel_error", s.max_rel_error}});
    }
    j["per_angle"] = angles;
    return j.dump(2) + "\n";
}

namespace {

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out || !(out << text)) {
        throw IoError("cannot write " + p.string());
    }
}

}  // namespace

void emit_outputs(const std::vector<ExperimentRecord>& records, const std::filesystem::path& dir) {
    if (records.empty()) {
        throw InvalidArgument("no records to emit");
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    write_text(dir / "speeds.csv", speeds_csv(records));
    for (std::size_t k = 0; k < records.size(); ++k) {
        const std::string id = records[k].id.empty() ? std::to_string(k + 1) : records[k].id;
        write_text(dir / ("entropy_" + id + ".csv"), entropy_csv(records[k]));
    }
    write_text(dir / "summary.json", summary_json(records));
}

std::vector<SpeedRow> parse_speeds_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kSpeedsHeader) {
        throw IoError("not a speeds.csv file (unexpected header)");
    }
    auto num = [](const std::string& s) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw IoError("malformed number '" + s + "'");
            return v;
        } catch (const std::logic_error&) {
            throw IoError("malformed number '" + s + "'");
        }
    };
    auto onum = [&](const std::string& s) -> std::optional<double> {
        if (s.empty()) return std::nullopt;
        return num(s);
    };
    std::vector<SpeedRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        if (line.back() == ',') f.emplace_back();
        if (f.size() != 12) {
            throw IoError("speeds.csv row has " + std::to_string(f.size()) + " fields");
        }
        SpeedRow r;
        r.profile = f[0];
        r.law = f[1];
        r.theta_deg = num(f[2]);
        r.K_B = num(f[3]);
        r.rho_B = num(f[4]);
        r.sigma_l = num(f[5]);
        r.sigma_r = num(f[6]);
        r.s_predicted = num(f[7]);
        r.s_measured = onum(f[8]);
        r.rel_error = onum(f[9]);
        r.dispersion_proxy = num(f[10]);
        r.classification = f[11];
        rows.push_back(r);
    }
    return rows;
}

std::vector<SpeedRow> read_speeds_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_speeds_csv(ss.str());
}

ScatterStats scatter_stats(const std::vector<SpeedRow>& rows) {
    ScatterStats st;
    st.rows = rows.size();
    std::vector<double> p, m, errs;
    for (const auto& r : rows) {
        if (r.s_measured) {
            p.push_back(r.s_predicted);
            m.push_back(*r.s_measured);
            errs.push_back(r.rel_error ? *r.rel_error
                                       : std::fabs(*r.s_measured - r.s_predicted) / r.s_predicted);
        }
    }
    st.measured = p.size();
    if (p.empty()) return st;
    st.median_rel_error = median(errs);
    st.max_rel_error = *std::max_element(errs.begin(), errs.end());
    double spm = 0.0, spp = 0.0;
    double mp = 0.0, mm = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        spm += p[k] * m[k];
        spp += p[k] * p[k];
        mp += p[k];
        mm += m[k];
    }
    st.slope = spm / spp;
    mp /= p.size();
    mm /= m.size();
    double cov = 0.0, vp = 0.0, vm = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        cov += (p[k] - mp) * (m[k] - mm);
        vp += (p[k] - mp) * (p[k] - mp);
        vm += (m[k] - mm) * (m[k] - mm);
    }
    st.correlation = (vp > 0.0 && vm > 0.0) ? cov / std::sqrt(vp * vm) : 0.0;
    return st;
}

}  // namespace shocklab
