#include "koplab/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace koplab {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

using KvMap = std::map<std::string, std::string>;  // "section.key" -> value

KvMap parse_kv(const std::string& text) {
    KvMap kv;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw Error(ErrorCode::IoError,
                            "config line " + std::to_string(lineno) +
                                ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::IoError, "config line " +
                                                std::to_string(lineno) +
                                                ": expected key=value");
        kv[section + "." + trim(line.substr(0, eq))] =
            trim(line.substr(eq + 1));
    }
    return kv;
}

double get_num(const KvMap& kv, const std::string& key, double fallback,
               bool* found = nullptr) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
        if (found) *found = false;
        return fallback;
    }
    if (found) *found = true;
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(it->second, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != it->second.size())
        throw Error(ErrorCode::IoError, "config: bad number for " + key);
    return v;
}

} // namespace

std::vector<double> parse_alpha_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != tok.size() || !(v > 0))
            throw Error(ErrorCode::IoError, "bad alpha entry: " + tok);
        out.push_back(v);
    }
    for (std::size_t i = 1; i < out.size(); ++i)
        if (!(out[i] > out[i - 1]))
            throw Error(ErrorCode::ParameterOutOfRange,
                        "alpha list must be strictly increasing");
    return out;
}

ExperimentConfig parse_config_text(const std::string& text) {
    const KvMap kv = parse_kv(text);
    ExperimentConfig cfg;

    cfg.fluid = make_params(get_num(kv, "fluid.mu", 1.0),
                            get_num(kv, "fluid.lambda", 0.0),
                            get_num(kv, "fluid.kappa", 1.0),
                            get_num(kv, "fluid.p", 1.0),
                            get_num(kv, "fluid.gamma", 1.4));

    cfg.grid = GridSpec(static_cast<int>(get_num(kv, "grid.d", 1)),
                        static_cast<int>(get_num(kv, "grid.n", 256)),
                        get_num(kv, "grid.L", GridSpec().L));

    cfg.step.dt = get_num(kv, "time.dt", 1e-2);
    cfg.step.t_final = get_num(kv, "time.T", 5.0);
    cfg.step.record_every =
        static_cast<int>(get_num(kv, "time.record_every", 10));
    if (cfg.step.record_every < 0)
        throw Error(ErrorCode::ParameterOutOfRange, "record_every must be >= 0");

    const auto it = kv.find("sweep.alphas");
    cfg.alphas = it == kv.end() ? std::vector<double>{4, 8, 16, 32, 64}
                                : parse_alpha_list(it->second);
    cfg.h = get_num(kv, "sweep.h", 0.5);
    if (!(cfg.h > 0.0) || cfg.h > 1.0 || (cfg.grid.d == 2 && cfg.h == 1.0))
        throw Error(ErrorCode::ParameterOutOfRange,
                    "h must lie in (0,1], exclusive at 1 when d = 2");
    const double seed = get_num(kv, "sweep.seed", 1.0);
    if (!(seed >= 0))
        throw Error(ErrorCode::ParameterOutOfRange, "seed must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);

    cfg.amplitude = get_num(kv, "init.amplitude", cfg.amplitude);
    cfg.j_lo = static_cast<int>(get_num(kv, "init.j_lo", cfg.j_lo));
    cfg.j_hi = static_cast<int>(get_num(kv, "init.j_hi", cfg.j_hi));
    if (cfg.j_lo > cfg.j_hi)
        throw Error(ErrorCode::BandOutOfRange, "init band: j_lo > j_hi");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open config file: " + path);
    std::ostringstream body;
    body << in.rdbuf();
    return parse_config_text(body.str());
}

} // namespace koplab
