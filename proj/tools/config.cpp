#include "config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>

namespace lightcone::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

double parse_real(const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ConfigError("bad number for '" + key + "': " + text);
    }
    return value;
}

int parse_count(const std::string& key, const std::string& text) {
    int value = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) throw ConfigError("bad integer for '" + key + "': " + text);
    return value;
}

}  // namespace

WeingartenFamily NetConfig::family() const { return family_coeffs(k, a1, a2, eps2_of(eps)); }

NetSpec NetConfig::spec() const {
    NetSpec s{Axis::span(t1.lo, t1.hi, n1), Axis::span(t2.lo, t2.hi, n2), Axis::span(r.lo, r.hi, nr)};
    s.t_init = t_init;
    s.loop_tol = loop_tol;
    return s;
}

double default_tolerance() {
    const Tolerances fallback;
    const char* env = std::getenv("NETS_TOL");
    if (env == nullptr) return fallback.tol;
    const std::string text = trim(env);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !(value > 0.0)) return fallback.tol;
    return value;
}

Epsilon parse_eps(std::string token) {
    token = unquote(trim(token));
    if (token == "1") return Epsilon::one;
    if (token == "i") return Epsilon::i;
    throw ConfigError("eps must be \"1\" or \"i\", got '" + token + "'");
}

NetConfig parse_config(std::istream& in) {
    NetConfig cfg;
    cfg.tolerances.tol = default_tolerance();

    auto real = [](double& slot) {
        return [&slot](const std::string& key, const std::string& v) { slot = parse_real(key, v); };
    };
    auto count = [](int& slot) {
        return [&slot](const std::string& key, const std::string& v) { slot = parse_count(key, v); };
    };
    const std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters{
        {"k", real(cfg.k)},
        {"a1", real(cfg.a1)},
        {"a2", real(cfg.a2)},
        {"eps", [&](const std::string&, const std::string& v) { cfg.eps = parse_eps(v); }},
        {"N1", count(cfg.n1)},
        {"N2", count(cfg.n2)},
        {"Nr", count(cfg.nr)},
        {"t1_min", real(cfg.t1.lo)},
        {"t1_max", real(cfg.t1.hi)},
        {"t2_min", real(cfg.t2.lo)},
        {"t2_max", real(cfg.t2.hi)},
        {"r_min", real(cfg.r.lo)},
        {"r_max", real(cfg.r.hi)},
        {"t_init", real(cfg.t_init)},
        {"u0", real(cfg.profile.u0)},
        {"du0", real(cfg.profile.du0)},
        {"theta", real(cfg.profile.theta)},
        {"loop_tol", real(cfg.loop_tol)},
        {"tol", real(cfg.tolerances.tol)},
        {"fd_tol", real(cfg.tolerances.fd_tol)},
        {"out", [&](const std::string&, const std::string& v) { cfg.out = unquote(v); }},
    };

    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto setter = setters.find(key);
        if (setter == setters.end()) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        if (value.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty value for '" + key + "'");
        setter->second(key, value);
    }
    if (in.bad()) throw ConfigError("read error");

    for (const char* key : {"k", "a1", "a2", "eps"}) {
        if (!seen.contains(key)) throw ConfigError(std::string("missing required key '") + key + "'");
    }
    if (cfg.n1 < 8 || cfg.n2 < 8 || cfg.nr < 8) throw ConfigError("grid sizes must be at least 8");
    if (!(cfg.a2 > 0.0)) throw ConfigError("a2 must be positive");
    for (const Range* r : {&cfg.t1, &cfg.t2, &cfg.r}) {
        if (!(r->hi > r->lo)) throw ConfigError("empty parameter range");
    }
    if (!(cfg.tolerances.tol > 0.0) || !(cfg.tolerances.fd_tol > 0.0) || !(cfg.loop_tol > 0.0)) {
        throw ConfigError("tolerances must be positive");
    }
    return cfg;
}

NetConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    return parse_config(in);
}

}  // namespace lightcone::cli
