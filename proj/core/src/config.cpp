#include "shocklab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "shocklab/errors.hpp"

namespace shocklab {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) {
        throw ConfigError(where + " must be an object");
    }
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

template <class T>
void read(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) {
        try {
            out = obj.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
        }
    }
}

ConstitutiveLaw parse_law(const json& j) {
    if (j.is_string()) {
        const LawKind k = law_kind_from_string(j.get<std::string>());
        return k == LawKind::exponential ? ConstitutiveLaw::exponential() : reference_cubic();
    }
    reject_unknown(j, {"kind", "alpha", "beta", "gamma"}, "law");
    std::string kind = "exponential";
    read(j, "kind", kind);
    if (law_kind_from_string(kind) == LawKind::exponential) {
        return ConstitutiveLaw::exponential();
    }
    double a = 0.1, b = 0.0, g = 5.0;
    read(j, "alpha", a);
    read(j, "beta", b);
    read(j, "gamma", g);
    return ConstitutiveLaw::cubic(a, b, g);
}

json law_json(const ConstitutiveLaw& law) {
    if (law.kind() == LawKind::exponential) {
        return json{{"kind", "exponential"}};
    }
    return json{{"kind", "cubic"}, {"alpha", law.alpha()}, {"beta", law.beta()}, {"gamma", law.gamma()}};
}

void parse_medium(const json& j, MediumSpec& m) {
    reject_unknown(j, {"profile", "theta", "period", "K_A", "K_B", "rho_A", "rho_B", "fraction"},
                   "medium");
    if (j.contains("profile")) {
        m.profile = profile_from_string(j.at("profile").get<std::string>());
    }
    read(j, "theta", m.theta_deg);
    read(j, "period", m.period);
    read(j, "K_A", m.K_A);
    read(j, "K_B", m.K_B);
    read(j, "rho_A", m.rho_A);
    read(j, "rho_B", m.rho_B);
    read(j, "fraction", m.fraction);
}

KineticTerm kinetic_from_string(const std::string& s) {
    if (s == "full") return KineticTerm::full;
    if (s == "x_only") return KineticTerm::x_only;
    throw ConfigError("unknown kinetic term '" + s + "'");
}

SweepSpec parse_sweep(const json& j, const ExperimentConfig& base) {
    reject_unknown(j,
                   {"rho_B", "K_B", "sigma_l", "sigma_r", "theta", "profile", "law",
                    "tie_K_B_to_rho_B"},
                   "sweep");
    SweepSpec s;
    s.base = base;
    s.rho_B = {base.medium.rho_B};
    s.K_B = {base.medium.K_B};
    s.sigma_l = {base.sigma_l};
    s.sigma_r = {base.sigma_r};
    s.theta = {base.medium.theta_deg};
    s.profile = {base.medium.profile};
    s.law = {base.law};
    read(j, "rho_B", s.rho_B);
    read(j, "K_B", s.K_B);
    read(j, "sigma_l", s.sigma_l);
    read(j, "sigma_r", s.sigma_r);
    read(j, "theta", s.theta);
    read(j, "tie_K_B_to_rho_B", s.tie_K_B_to_rho_B);
    if (j.contains("profile")) {
        s.profile.clear();
        for (const auto& p : j.at("profile")) {
            s.profile.push_back(profile_from_string(p.get<std::string>()));
        }
    }
    if (j.contains("law")) {
        s.law.clear();
        for (const auto& l : j.at("law")) {
            s.law.push_back(parse_law(l));
        }
    }
    return s;
}

}  // namespace

ConfigDocument parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    reject_unknown(j,
                   {"medium", "law", "theta", "sigma_l", "sigma_r", "u_r", "resolution", "length_x",
                    "shock_x", "t_final", "snapshot_interval", "samples", "solver", "diagnostics",
                    "sweep"},
                   "config");
    ConfigDocument doc;
    ExperimentConfig& c = doc.experiment;
    try {
        if (j.contains("medium")) parse_medium(j.at("medium"), c.medium);
        read(j, "theta", c.medium.theta_deg);
        if (j.contains("law")) c.law = parse_law(j.at("law"));
        read(j, "sigma_l", c.sigma_l);
        read(j, "sigma_r", c.sigma_r);
        read(j, "u_r", c.u_r);
        read(j, "resolution", c.resolution);
        read(j, "length_x", c.length_x);
        read(j, "shock_x", c.shock_x);
        read(j, "t_final", c.t_final);
        read(j, "snapshot_interval", c.snapshot_interval);
        read(j, "samples", c.samples);
        if (j.contains("solver")) {
            const json& s = j.at("solver");
            reject_unknown(s, {"cfl", "limiter", "threads"}, "solver");
            read(s, "cfl", c.cfl);
            read(s, "threads", c.threads);
            if (s.contains("limiter")) c.limiter = limiter_from_string(s.at("limiter").get<std::string>());
        }
        if (j.contains("diagnostics")) {
            const json& d = j.at("diagnostics");
            reject_unknown(d, {"track_front", "classify", "kinetic", "tau_abs", "rho_persist", "kappa"},
                           "diagnostics");
            read(d, "track_front", c.track_front);
            read(d, "classify", c.classify);
            read(d, "tau_abs", c.thresholds.tau_abs);
            read(d, "rho_persist", c.thresholds.rho_persist);
            read(d, "kappa", c.thresholds.kappa);
            if (d.contains("kinetic")) c.kinetic = kinetic_from_string(d.at("kinetic").get<std::string>());
        }
        if (j.contains("sweep")) doc.sweep = parse_sweep(j.at("sweep"), c);
    } catch (const ConfigError&) {
        throw;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    try {
        c.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return doc;
}

ConfigDocument load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_json(const ExperimentConfig& c) {
    json j;
    j["medium"] = {{"profile", std::string(to_string(c.medium.profile))},
                   {"theta", c.medium.theta_deg},
                   {"period", c.medium.period},
                   {"K_A", c.medium.K_A},
                   {"K_B", c.medium.K_B},
                   {"rho_A", c.medium.rho_A},
                   {"rho_B", c.medium.rho_B},
                   {"fraction", c.medium.fraction}};
    j["law"] = law_json(c.law);
    j["sigma_l"] = c.sigma_l;
    j["sigma_r"] = c.sigma_r;
    j["u_r"] = c.u_r;
    j["resolution"] = c.resolution;
    j["length_x"] = c.length_x;
    j["shock_x"] = c.shock_x;
    j["t_final"] = c.t_final;
    j["snapshot_interval"] = c.snapshot_interval;
    j["samples"] = c.samples;
    j["solver"] = {{"cfl", c.cfl}, {"limiter", std::string(to_string(c.limiter))}, {"threads", c.threads}};
    j["diagnostics"] = {{"track_front", c.track_front},
                        {"classify", c.classify},
                        {"kinetic", c.kinetic == KineticTerm::full ? "full" : "x_only"},
                        {"tau_abs", c.thresholds.tau_abs},
                        {"rho_persist", c.thresholds.rho_persist},
                        {"kappa", c.thresholds.kappa}};
    return j.dump(2);
}

}  // namespace shocklab
