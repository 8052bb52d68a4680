#include "chemo/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "chemo/errors.hpp"

namespace chemo {

void SweepSpec::validate() const {
    base.validate();
    if (base.params.production.kind != ProductionLaw::Kind::PowerShift)
        throw ValidationError("sweep: beta sweeps need production=power_shift");
    if (beta_values.empty())
        throw ValidationError("sweep: beta list is empty");
    for (std::size_t k = 0; k < beta_values.size(); ++k) {
        if (!(beta_values[k] >= 0.0 && beta_values[k] <= 1.0))
            throw ValidationError("sweep: beta must lie in [0,1]");
        if (k > 0 && !(beta_values[k] > beta_values[k - 1]))
            throw ValidationError("sweep: beta values must be ascending and unique");
    }
    if (runs_per_beta < 1) throw ValidationError("sweep: runs_per_beta must be >= 1");
    if (concurrency < 1) throw ValidationError("sweep: concurrency must be >= 1");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

struct RawEntry {
    std::string value;
    int line;
};

using Section = std::map<std::string, RawEntry>;

double to_double(const RawEntry& e, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError(key + ": cannot parse '" + e.value + "' as a number",
                         e.line);
    }
}

long long to_int(const RawEntry& e, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError(key + ": cannot parse '" + e.value + "' as an integer",
                         e.line);
    }
}

std::uint64_t to_uint64(const RawEntry& e, const std::string& key) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError(key + ": cannot parse '" + e.value + "' as an integer",
                         e.line);
    }
}

const std::set<std::string> kSections = {"grid", "model", "init",
                                         "control", "events", "sweep"};

const std::map<std::string, std::set<std::string>> kKeys = {
    {"grid", {"nx", "ny", "lx", "ly"}},
    {"model",
     {"sensitivity", "chi", "k", "production", "beta", "lambda1", "lambda2"}},
    {"init", {"u_bar", "sigma", "seed"}},
    {"control",
     {"dt0", "dt_min", "dt_max", "rtol", "cfl", "diag_stride", "elliptic_tol"}},
    {"events",
     {"t_end", "blowup_threshold", "steady_rel_tol", "steady_window",
      "heterogeneity_tol"}},
    {"sweep", {"beta", "runs_per_beta", "concurrency"}},
};

} // namespace

std::vector<double> expand_range(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double a = 0.0, b = 0.0, step = 0.0;
        char c1 = 0, c2 = 0;
        std::istringstream ss(text);
        if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
            !(step > 0.0) || b < a)
            throw ValidationError("range '" + text + "': expected lo:hi:step");
        const long count = std::lround((b - a) / step);
        for (long k = 0; k <= count; ++k) {
            double v = a + k * step;
            if (k == count) v = b; // snap the endpoint
            out.push_back(v);
        }
    } else {
        std::istringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            out.push_back(std::stod(item));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-12; }),
              out.end());
    return out;
}

ParsedConfig parse_config_stream(std::istream& is) {
    std::map<std::string, Section> sections;
    std::string line;
    std::string current;
    int lineno = 0;

    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("unterminated section header", lineno);
            current = trim(line.substr(1, line.size() - 2));
            if (!kSections.count(current))
                throw ParseError("unknown section [" + current + "]", lineno);
            sections[current]; // materialize even if empty
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key = value", lineno);
        if (current.empty())
            throw ParseError("key outside of any [section]", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        if (key.empty() || value.empty())
            throw ParseError("empty key or value", lineno);
        if (!kKeys.at(current).count(key))
            throw ParseError("unknown key '" + key + "' in [" + current + "]",
                             lineno);
        if (sections[current].count(key))
            throw ParseError("duplicate key '" + key + "'", lineno);
        sections[current][key] = {value, lineno};
    }

    SimConfig cfg;

    // Model defaults: constant sensitivity chi=1, power_shift beta=1/2.
    std::string sens_name = "constant";
    double chi = 1.0, kexp = 1.0;
    std::string prod_name = "power_shift";
    double beta = 0.5, lambda1 = 1.0, lambda2 = 1.0;

    if (auto it = sections.find("grid"); it != sections.end()) {
        int nx = cfg.grid.nx, ny = cfg.grid.ny;
        double lx = cfg.grid.lx, ly = cfg.grid.ly;
        for (const auto& [key, e] : it->second) {
            if (key == "nx") nx = static_cast<int>(to_int(e, key));
            else if (key == "ny") ny = static_cast<int>(to_int(e, key));
            else if (key == "lx") lx = to_double(e, key);
            else if (key == "ly") ly = to_double(e, key);
        }
        cfg.grid = GridSpec(nx, ny, lx, ly);
    }

    if (auto it = sections.find("model"); it != sections.end()) {
        for (const auto& [key, e] : it->second) {
            if (key == "sensitivity") sens_name = e.value;
            else if (key == "chi") chi = to_double(e, key);
            else if (key == "k") kexp = to_double(e, key);
            else if (key == "production") prod_name = e.value;
            else if (key == "beta") beta = to_double(e, key);
            else if (key == "lambda1") lambda1 = to_double(e, key);
            else if (key == "lambda2") lambda2 = to_double(e, key);
        }
    }

    if (sens_name == "constant") cfg.params.sensitivity = SensitivityLaw::constant(chi);
    else if (sens_name == "inverse") cfg.params.sensitivity = SensitivityLaw::inverse(chi);
    else if (sens_name == "inverse_power")
        cfg.params.sensitivity = SensitivityLaw::inverse_power(chi, kexp);
    else if (sens_name == "log") cfg.params.sensitivity = SensitivityLaw::logarithmic(chi);
    else throw ValidationError("model.sensitivity: unknown law '" + sens_name + "'");

    if (prod_name == "linear") cfg.params.production = ProductionLaw::linear(lambda1, lambda2);
    else if (prod_name == "power_shift")
        cfg.params.production = ProductionLaw::power_shift(beta, lambda2, lambda1);
    else throw ValidationError("model.production: unknown law '" + prod_name + "'");

    if (auto it = sections.find("init"); it != sections.end()) {
        for (const auto& [key, e] : it->second) {
            if (key == "u_bar") cfg.u_bar = to_double(e, key);
            else if (key == "sigma") cfg.sigma = to_double(e, key);
            else if (key == "seed") cfg.seed = to_uint64(e, key);
        }
    }

    if (auto it = sections.find("control"); it != sections.end()) {
        for (const auto& [key, e] : it->second) {
            if (key == "dt0") cfg.controller.dt = to_double(e, key);
            else if (key == "dt_min") cfg.controller.dt_min = to_double(e, key);
            else if (key == "dt_max") cfg.controller.dt_max = to_double(e, key);
            else if (key == "rtol") cfg.controller.rtol = to_double(e, key);
            else if (key == "cfl") cfg.controller.cfl = to_double(e, key);
            else if (key == "diag_stride")
                cfg.diag_stride = static_cast<int>(to_int(e, key));
            else if (key == "elliptic_tol")
                cfg.solver.elliptic_tol = to_double(e, key);
        }
    }

    if (auto it = sections.find("events"); it != sections.end()) {
        for (const auto& [key, e] : it->second) {
            if (key == "t_end") cfg.t_end = to_double(e, key);
            else if (key == "blowup_threshold") cfg.blowup_threshold = to_double(e, key);
            else if (key == "steady_rel_tol") cfg.steady_rel_tol = to_double(e, key);
            else if (key == "steady_window")
                cfg.steady_window = static_cast<int>(to_int(e, key));
            else if (key == "heterogeneity_tol")
                cfg.heterogeneity_tol = to_double(e, key);
        }
    }

    if (auto it = sections.find("sweep"); it != sections.end()) {
        SweepSpec sweep;
        sweep.base = cfg;
        for (const auto& [key, e] : it->second) {
            if (key == "beta") {
                try {
                    sweep.beta_values = expand_range(e.value);
                } catch (const ValidationError& ve) {
                    throw ParseError(ve.what(), e.line);
                }
            } else if (key == "runs_per_beta") {
                sweep.runs_per_beta = static_cast<int>(to_int(e, key));
            } else if (key == "concurrency") {
                sweep.concurrency = static_cast<int>(to_int(e, key));
            }
        }
        sweep.validate();
        return sweep;
    }

    cfg.validate();
    return cfg;
}

ParsedConfig parse_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open config file: " + path);
    return parse_config_stream(is);
}

std::string config_reference() {
    return
        "Config file: key = value lines under [sections]; '#' comments.\n"
        "Unknown sections or keys are errors. Defaults in parentheses.\n"
        "\n"
        "[grid]    nx (64), ny (64), lx (0.1), ly (0.1)\n"
        "[model]   sensitivity = constant|inverse|inverse_power|log (constant)\n"
        "          chi (1): coefficient chi or chi0\n"
        "          k (1): inverse_power exponent, k >= 1\n"
        "          production = linear|power_shift (power_shift)\n"
        "          beta (0.5): power_shift exponent in [0,1]\n"
        "          lambda1 (1), lambda2 (1): production bounds, 0 < l1 <= l2\n"
        "[init]    u_bar (1), sigma (0), seed (0)\n"
        "[control] dt0 (1e-8), dt_min (1e-14), dt_max (1), rtol (1e-4),\n"
        "          cfl (0.5), diag_stride (1), elliptic_tol (1e-10)\n"
        "[events]  t_end (100), blowup_threshold (1e10),\n"
        "          steady_rel_tol (1e-7), steady_window (50),\n"
        "          heterogeneity_tol (1e-3)\n"
        "[sweep]   beta = lo:hi:step or comma list (required)\n"
        "          runs_per_beta (1), concurrency (1)\n"
        "\n"
        "A [sweep] section makes the file a sweep spec; the other sections\n"
        "define the per-run base configuration.\n";
}

} // namespace chemo
