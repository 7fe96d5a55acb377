#include "ota/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ota {

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& msg) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& path, int line, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        fail(path, line, "expected a number, got '" + v + "'");
    }
}

long parse_long(const std::string& path, int line, const std::string& v) {
    try {
        size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        fail(path, line, "expected an integer, got '" + v + "'");
    }
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::pair<std::string, int>> parse_keyvalue_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::map<std::string, std::pair<std::string, int>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos) fail(path, lineno, "expected key=value");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty()) fail(path, lineno, "empty key");
        if (out.count(key)) fail(path, lineno, "duplicate key '" + key + "'");
        out[key] = {val, lineno};
    }
    return out;
}

ScenarioConfig load_scenario_config(const std::string& path) {
    auto kv = parse_keyvalue_file(path);
    ScenarioConfig cfg;
    for (const auto& [key, vl] : kv) {
        const auto& [val, line] = vl;
        if (key == "K")
            cfg.K = static_cast<int>(parse_long(path, line, val));
        else if (key == "snr_db")
            cfg.snr_db = parse_double(path, line, val);
        else if (key == "P")
            cfg.P = parse_double(path, line, val);
        else if (key == "sigma_eps")
            cfg.sigma_eps = parse_double(path, line, val);
        else if (key == "mu") {
            cfg.mu = static_cast<int>(parse_long(path, line, val));
            if (cfg.mu < 0 || cfg.mu % 2 != 0) fail(path, line, "mu must be even");
        } else if (key == "data_dist") {
            if (val == "uniform_sqrt3")
                cfg.data_dist = DataDist::UniformSqrt3;
            else if (val == "gaussian_unit")
                cfg.data_dist = DataDist::GaussianUnit;
            else if (val == "laplace_unit")
                cfg.data_dist = DataDist::LaplaceUnit;
            else
                fail(path, line, "data_dist must be uniform_sqrt3|gaussian_unit|laplace_unit");
        } else if (key == "csi") {
            if (val == "perfect")
                cfg.csi = CsiMode::Perfect;
            else if (val == "noisy")
                cfg.csi = CsiMode::Noisy;
            else
                fail(path, line, "csi must be perfect|noisy");
        } else if (key == "error_mode") {
            if (val == "per_device")
                cfg.error_mode = ErrorMode::PerDevice;
            else if (val == "receiver_equivalent")
                cfg.error_mode = ErrorMode::ReceiverEquivalent;
            else
                fail(path, line, "error_mode must be per_device|receiver_equivalent");
        } else if (key == "trials")
            cfg.trials = parse_long(path, line, val);
        else if (key == "seed")
            cfg.seed = static_cast<std::uint64_t>(parse_long(path, line, val));
        else
            fail(path, line, "unknown key '" + key + "'");
    }
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return cfg;
}

DesignConfig load_design_config(const std::string& path) {
    auto kv = parse_keyvalue_file(path);
    DesignConfig cfg;
    for (const auto& [key, vl] : kv) {
        const auto& [val, line] = vl;
        if (key == "K")
            cfg.K = static_cast<int>(parse_long(path, line, val));
        else if (key == "samples_per_symbol")
            cfg.samples_per_symbol = static_cast<int>(parse_long(path, line, val));
        else if (key == "mu") {
            cfg.mu = static_cast<int>(parse_long(path, line, val));
            if (cfg.mu < 0 || cfg.mu % 2 != 0) fail(path, line, "mu must be even");
        } else if (key == "delta_alpha")
            cfg.delta_alpha = parse_double(path, line, val);
        else if (key == "alpha")
            cfg.alpha = parse_double(path, line, val);
        else if (key == "gamma_thr")
            cfg.gamma_thr = parse_double(path, line, val);
        else if (key == "penalty_f")
            cfg.penalty_f = parse_double(path, line, val);
        else if (key == "penalty_e")
            cfg.penalty_e = parse_double(path, line, val);
        else if (key == "penalty_s")
            cfg.penalty_s = parse_double(path, line, val);
        else if (key == "energy_target")
            cfg.energy_target = parse_double(path, line, val);
        else if (key == "hidden") {
            cfg.hidden.clear();
            std::stringstream ss(val);
            std::string tok;
            while (std::getline(ss, tok, ','))
                cfg.hidden.push_back(static_cast<int>(parse_long(path, line, trim(tok))));
            if (cfg.hidden.empty()) fail(path, line, "hidden needs at least one width");
        } else if (key == "batch")
            cfg.batch = static_cast<int>(parse_long(path, line, val));
        else if (key == "epochs")
            cfg.epochs = static_cast<int>(parse_long(path, line, val));
        else if (key == "n_train")
            cfg.n_train = parse_long(path, line, val);
        else if (key == "n_val")
            cfg.n_val = parse_long(path, line, val);
        else if (key == "n_test")
            cfg.n_test = parse_long(path, line, val);
        else if (key == "adam_lr")
            cfg.adam_lr = parse_double(path, line, val);
        else if (key == "adam_beta1")
            cfg.adam_beta1 = parse_double(path, line, val);
        else if (key == "adam_beta2")
            cfg.adam_beta2 = parse_double(path, line, val);
        else if (key == "adam_eps")
            cfg.adam_eps = parse_double(path, line, val);
        else if (key == "sigma_eps")
            cfg.sigma_eps = parse_double(path, line, val);
        else if (key == "snr_db")
            cfg.snr_db = parse_double(path, line, val);
        else if (key == "P")
            cfg.P = parse_double(path, line, val);
        else if (key == "seed")
            cfg.seed = static_cast<std::uint64_t>(parse_long(path, line, val));
        else
            fail(path, line, "unknown key '" + key + "'");
    }
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return cfg;
}

std::string scenario_to_string(const ScenarioConfig& cfg) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "K=%d\nsnr_db=%.12g\nP=%.12g\nsigma_eps=%.12g\nmu=%d\ndata_dist=%s\n"
                  "csi=%s\nerror_mode=%s\ntrials=%ld\nseed=%llu\n",
                  cfg.K, cfg.snr_db, cfg.P, cfg.sigma_eps, cfg.mu, to_string(cfg.data_dist),
                  to_string(cfg.csi), to_string(cfg.error_mode), cfg.trials,
                  static_cast<unsigned long long>(cfg.seed));
    return buf;
}

std::string design_to_string(const DesignConfig& cfg) {
    std::ostringstream out;
    out << "K=" << cfg.K << "\nsamples_per_symbol=" << cfg.samples_per_symbol
        << "\nmu=" << cfg.mu << "\ndelta_alpha=" << cfg.delta_alpha << "\nalpha=" << cfg.alpha
        << "\ngamma_thr=" << cfg.gamma_thr << "\npenalty_f=" << cfg.penalty_f
        << "\npenalty_e=" << cfg.penalty_e << "\npenalty_s=" << cfg.penalty_s
        << "\nenergy_target=" << cfg.energy_target << "\nhidden=";
    for (size_t i = 0; i < cfg.hidden.size(); ++i)
        out << (i ? "," : "") << cfg.hidden[i];
    out << "\nbatch=" << cfg.batch << "\nepochs=" << cfg.epochs << "\nn_train=" << cfg.n_train
        << "\nn_val=" << cfg.n_val << "\nn_test=" << cfg.n_test << "\nadam_lr=" << cfg.adam_lr
        << "\nadam_beta1=" << cfg.adam_beta1 << "\nadam_beta2=" << cfg.adam_beta2
        << "\nadam_eps=" << cfg.adam_eps << "\nsigma_eps=" << cfg.sigma_eps
        << "\nsnr_db=" << cfg.snr_db << "\nP=" << cfg.P << "\nseed=" << cfg.seed << "\n";
    return out.str();
}

}  // namespace ota
