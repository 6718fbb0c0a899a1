#include "nnconv/study/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nnconv/study/corpus.hpp"

namespace nnconv::study {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string current;
    for (char c : value) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!current.empty()) {
                items.push_back(current);
                current.clear();
            }
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) {
        items.push_back(current);
    }
    return items;
}

double parse_double(const std::string& key, const std::string& token) {
    // Allow "e" as a literal for the natural base; studies use it a lot.
    if (token == "e") {
        return M_E;
    }
    try {
        std::size_t pos = 0;
        const double v = std::stod(token, &pos);
        if (pos != token.size()) {
            throw std::invalid_argument(token);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "': cannot parse number '" + token + "'");
    }
}

int parse_int(const std::string& key, const std::string& token) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(token, &pos);
        if (pos != token.size()) {
            throw std::invalid_argument(token);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "': cannot parse integer '" + token + "'");
    }
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const std::string& token : split_list(value)) {
        out.push_back(parse_double(key, token));
    }
    if (out.empty()) {
        throw ConfigError("config: key '" + key + "': empty list");
    }
    return out;
}

}  // namespace

OperatorKind parse_kind(const std::string& name) {
    if (name == "direct") {
        return OperatorKind::direct;
    }
    if (name == "kantorovich") {
        return OperatorKind::kantorovich;
    }
    if (name == "quadrature") {
        return OperatorKind::quadrature;
    }
    throw ConfigError("config: unknown operator kind '" + name + "'");
}

void apply_key(StudyConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "q") {
        cfg.q_list = parse_double_list(key, value);
    } else if (key == "beta") {
        cfg.beta_list = parse_double_list(key, value);
    } else if (key == "B") {
        cfg.base_list = parse_double_list(key, value);
    } else if (key == "kinds") {
        cfg.kinds.clear();
        for (const std::string& token : split_list(value)) {
            cfg.kinds.push_back(parse_kind(token));
        }
        if (cfg.kinds.empty()) {
            throw ConfigError("config: key 'kinds': empty list");
        }
    } else if (key == "n") {
        cfg.n_list.clear();
        for (const std::string& token : split_list(value)) {
            cfg.n_list.push_back(parse_int(key, token));
        }
    } else if (key == "alpha") {
        cfg.alpha = parse_double(key, value);
    } else if (key == "labels") {
        cfg.labels = split_list(value);
        if (cfg.labels.empty()) {
            throw ConfigError("config: key 'labels': empty list");
        }
    } else if (key == "window_lo") {
        cfg.window_lo = parse_double(key, value);
    } else if (key == "window_hi") {
        cfg.window_hi = parse_double(key, value);
    } else if (key == "step") {
        cfg.step = parse_double(key, value);
    } else if (key == "tail_eps") {
        cfg.quad.tail_epsilon = parse_double(key, value);
    } else if (key == "rel_tol") {
        cfg.quad.rel_tol = parse_double(key, value);
    } else if (key == "max_refinements") {
        cfg.quad.max_refinements = parse_int(key, value);
    } else if (key == "panel_width") {
        cfg.quad.panel_width = parse_double(key, value);
    } else if (key == "quad_r") {
        cfg.quad_r = parse_int(key, value);
    } else if (key == "format") {
        if (value != "csv" && value != "json") {
            throw ConfigError("config: format must be csv or json, got '" + value + "'");
        }
        cfg.format = value;
    } else if (key == "out") {
        cfg.out_path = value;
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
    cfg.explicit_keys.insert(key);
}

StudyConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    StudyConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

std::vector<double> StudyConfig::make_grid() const {
    if (!(window_lo < window_hi) || !(step > 0.0)) {
        throw ConfigError("config: window requires window_lo < window_hi and step > 0");
    }
    const std::size_t count =
        static_cast<std::size_t>(std::floor((window_hi - window_lo) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = window_lo + static_cast<double>(i) * step;
    }
    return grid;
}

void StudyConfig::validate_for_bounds() const {
    if (q_list.empty() || beta_list.empty() || base_list.empty() || n_list.empty() ||
        labels.empty() || kinds.empty()) {
        throw ConfigError("config: empty study dimension");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ConfigError("config: alpha must be in (0, 1)");
    }
    for (int n : n_list) {
        if (n < 1 || !(std::pow(n, 1.0 - alpha) > 2.0)) {
            throw ConfigError("config: every n must satisfy n^(1-alpha) > 2; n=" +
                              std::to_string(n) + " alpha=" + std::to_string(alpha) + " fails");
        }
    }
    try {
        for (const std::string& label : labels) {
            find_corpus(label);
        }
        quad.validate();
        for (double q : q_list) {
            for (double beta : beta_list) {
                for (double base : base_list) {
                    ActivationParams probe(q, beta, base);
                    (void)probe;
                }
            }
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (quad_r < 1) {
        throw ConfigError("config: quad_r must be >= 1");
    }
}

}  // namespace nnconv::study
