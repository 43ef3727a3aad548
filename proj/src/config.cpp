#include "varmult/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace varmult {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

double parse_real(const std::string& where, const std::string& text) {
    const std::string v = trim(text);
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": expected a real number, got '" + v + "'");
    }
    if (used != v.size() || !std::isfinite(x))
        throw std::invalid_argument(where + ": expected a real number, got '" + v + "'");
    return x;
}

std::int64_t parse_integer(const std::string& where, const std::string& text) {
    const std::string v = trim(text);
    std::size_t used = 0;
    std::int64_t x = 0;
    try {
        x = std::stoll(v, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": expected an integer, got '" + v + "'");
    }
    if (used != v.size())
        throw std::invalid_argument(where + ": expected an integer, got '" + v + "'");
    return x;
}

std::uint64_t parse_seed(const std::string& where, const std::string& text) {
    const std::string v = trim(text);
    std::size_t used = 0;
    std::uint64_t x = 0;
    try {
        x = std::stoull(v, &used, 0);  // base 0: decimal or 0x hex
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": expected a 64-bit seed, got '" + v + "'");
    }
    if (used != v.size())
        throw std::invalid_argument(where + ": expected a 64-bit seed, got '" + v + "'");
    return x;
}

WeightSpec parse_weight(const std::string& where, const std::string& text) {
    const std::vector<std::string> parts = split(text, ':');
    WeightSpec spec;
    spec.name = parts[0];
    if (spec.name != "constant" && spec.name != "power" && spec.name != "step")
        throw std::invalid_argument(where + ": unknown weight family '" + spec.name +
                                    "' (known: constant, power, step)");
    if (parts.size() > 2)
        throw std::invalid_argument(where + ": weight takes at most one parameter, got '" +
                                    text + "'");
    if (parts.size() == 2) {
        spec.param = parse_real(where, parts[1]);
        spec.has_param = true;
    }
    return spec;
}

} // namespace

std::string WeightSpec::str() const {
    if (!has_param) return name;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s:%.17g", name.c_str(), param);
    return buf;
}

Exponent parse_exponent(const std::string& text) {
    const std::string v = trim(text);
    if (v == "inf") return Exponent::infinity();
    const double x = parse_real("parse_exponent", v);
    if (x < 1.0)
        throw std::invalid_argument("parse_exponent: exponent must be >= 1, got '" + v + "'");
    return Exponent::finite(x);
}

SpaceDescriptor parse_space(const std::string& text) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts[0] == "scalar") {
        if (parts.size() != 1)
            throw std::invalid_argument("parse_space: 'scalar' takes no parameters, got '" +
                                        text + "'");
        return SpaceDescriptor::scalar();
    }
    if (parts[0] == "sequence_p") {
        if (parts.size() != 3)
            throw std::invalid_argument(
                "parse_space: expected 'sequence_p:<p>:<dim>', got '" + text + "'");
        const Exponent p = parse_exponent(parts[1]);
        const std::int64_t n = parse_integer("parse_space", parts[2]);
        return SpaceDescriptor::sequence_p(p, static_cast<int>(n));
    }
    if (parts[0] == "schatten") {
        if (parts.size() != 3)
            throw std::invalid_argument(
                "parse_space: expected 'schatten:<t>:<side>', got '" + text + "'");
        const Exponent t = parse_exponent(parts[1]);
        const std::int64_t side = parse_integer("parse_space", parts[2]);
        return SpaceDescriptor::schatten(t, static_cast<int>(side));
    }
    throw std::invalid_argument("parse_space: unknown space kind '" + parts[0] +
                                "' (known: scalar, sequence_p, schatten)");
}

ExperimentConfig parse_config(const std::string& text) {
    static const char* kKnown =
        "experiment, space, p, q, r, s, t, theta, grid_sizes, N, n_dims, modes, "
        "trials, seed, weight, signs, output";
    ExperimentConfig cfg;
    std::vector<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("parse_config: line " + std::to_string(lineno) +
                                        ": expected 'key = value', got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const std::string where =
            "parse_config: line " + std::to_string(lineno) + ": " + key;
        if (key.empty() || value.empty())
            throw std::invalid_argument(where + ": empty key or value");
        for (const std::string& s : seen) {
            // N and grid_sizes write the same field; flag that collision too.
            const bool same = s == key || (s == "N" && key == "grid_sizes") ||
                              (s == "grid_sizes" && key == "N");
            if (same)
                throw std::invalid_argument(where + ": duplicate key");
        }
        seen.push_back(key);
        if (key == "experiment") {
            cfg.experiment = value;
        } else if (key == "space") {
            try {
                cfg.space = parse_space(value);
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument(where + ": " + e.what());
            }
        } else if (key == "p" || key == "q" || key == "r") {
            Exponent e = Exponent::finite(1.0);
            try {
                e = parse_exponent(value);
            } catch (const std::invalid_argument& err) {
                throw std::invalid_argument(where + ": " + err.what());
            }
            if (key == "p") cfg.p = e;
            if (key == "q") cfg.q = e;
            if (key == "r") cfg.r = e;
        } else if (key == "s") {
            cfg.s = parse_real(where, value);
        } else if (key == "t") {
            cfg.t = parse_real(where, value);
        } else if (key == "theta") {
            const double th = parse_real(where, value);
            if (!(th > 0.0 && th <= 1.0))
                throw std::invalid_argument(where + ": theta must lie in (0, 1]");
            cfg.theta = th;
        } else if (key == "grid_sizes" || key == "N") {
            for (const std::string& item : split(value, ','))
                cfg.grid_sizes.push_back(
                    static_cast<int>(parse_integer(where, item)));
        } else if (key == "n_dims") {
            cfg.n_dims = static_cast<int>(parse_integer(where, value));
        } else if (key == "modes") {
            cfg.modes = static_cast<int>(parse_integer(where, value));
        } else if (key == "trials") {
            cfg.trials = static_cast<int>(parse_integer(where, value));
        } else if (key == "seed") {
            cfg.seed = parse_seed(where, value);
        } else if (key == "weight") {
            for (const std::string& item : split(value, ','))
                cfg.weights.push_back(parse_weight(where, item));
        } else if (key == "signs") {
            if (value != "rademacher" && value != "eighth_roots")
                throw std::invalid_argument(
                    where + ": expected 'rademacher' or 'eighth_roots', got '" + value + "'");
            cfg.signs = value;
        } else if (key == "output") {
            cfg.output = value;
        } else {
            throw std::invalid_argument("parse_config: line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "' (known: " + kKnown + ")");
        }
    }
    if (cfg.experiment.empty())
        throw std::invalid_argument("parse_config: missing mandatory key 'experiment'");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("load_config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_echo(const ExperimentConfig& cfg) {
    std::ostringstream out;
    char buf[64];
    auto real_str = [&buf](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    out << "experiment = " << cfg.experiment << "\n";
    if (cfg.space) out << "space = " << cfg.space->str() << "\n";
    if (cfg.p) out << "p = " << cfg.p->str() << "\n";
    if (cfg.q) out << "q = " << cfg.q->str() << "\n";
    if (cfg.r) out << "r = " << cfg.r->str() << "\n";
    if (cfg.s) out << "s = " << real_str(*cfg.s) << "\n";
    if (cfg.t) out << "t = " << real_str(*cfg.t) << "\n";
    if (cfg.theta) out << "theta = " << real_str(*cfg.theta) << "\n";
    if (!cfg.grid_sizes.empty()) {
        out << "grid_sizes = ";
        for (std::size_t i = 0; i < cfg.grid_sizes.size(); ++i)
            out << (i ? "," : "") << cfg.grid_sizes[i];
        out << "\n";
    }
    if (cfg.n_dims) out << "n_dims = " << *cfg.n_dims << "\n";
    if (cfg.modes) out << "modes = " << *cfg.modes << "\n";
    if (cfg.trials) out << "trials = " << *cfg.trials << "\n";
    if (cfg.seed) out << "seed = " << *cfg.seed << "\n";
    if (!cfg.weights.empty()) {
        out << "weight = ";
        for (std::size_t i = 0; i < cfg.weights.size(); ++i)
            out << (i ? "," : "") << cfg.weights[i].str();
        out << "\n";
    }
    if (cfg.signs) out << "signs = " << *cfg.signs << "\n";
    if (cfg.output) out << "output = " << *cfg.output << "\n";
    return out.str();
}

} // namespace varmult
