#include "psdamp/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "psdamp/errors.hpp"

namespace psdamp {
namespace {

std::string fmt(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, p);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct RawDoc {
    // section.key -> value, in a deterministic order
    std::vector<std::pair<std::string, std::string>> entries;
};

RawDoc tokenize(const std::string& text) {
    RawDoc doc;
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw DataError("config line " + std::to_string(lineno) +
                                ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw DataError("config line " + std::to_string(lineno) + ": empty key or value");
        doc.entries.emplace_back(section.empty() ? key : section + "." + key, value);
    }
    return doc;
}

class Binder {
public:
    Binder(ExperimentConfig& c, std::vector<std::string>& violations)
        : c_(c), violations_(violations) {
        bind_double("pressure.p_ref", c_.p_ref);
        bind_double("pressure.gamma_p", c_.gamma_p);
        bind_double("damping.alpha_bar", c_.alpha_bar);
        bind_string("damping.shape", c_.shape);
        bind_double("damping.a", c_.a);
        bind_double("damping.w", c_.w);
        bind_double("damping.x_c", c_.x_c);
        bind_double("damping.a2", c_.a2);
        bind_double("damping.w2", c_.w2);
        bind_double("damping.x_c2", c_.x_c2);
        bind_double("end_states.v_minus", c_.ends.v_minus);
        bind_double("end_states.v_plus", c_.ends.v_plus);
        bind_double("end_states.u_minus", c_.ends.u_minus);
        bind_double("end_states.u_plus", c_.ends.u_plus);
        bind_double("grid.half_length", c_.half_length);
        bind_size("grid.n_cells", c_.n_cells);
        bind_double("time.t_final", c_.t_final);
        bind_double("time.cfl", c_.cfl);
        bind_double("time.snapshot_stride", c_.snapshot_stride);
        bind_string("time.boundary", c_.boundary);
        bind_double("init.amplitude", c_.amplitude);
        bind_double("init.width", c_.width);
        bind_double("profile.w_m", c_.w_m);
        bind_double("profile.x_m", c_.x_m);
        bind_double("profile.xi_max", c_.xi_max);
        bind_size("profile.n_nodes", c_.n_nodes);
        bind_double("profile.tol", c_.profile_tol);
        bind_double("verify.gamma_w", c_.gamma_w);
        bind_double("verify.fit_window_lo", c_.fit_window_lo);
        bind_double("verify.fit_window_hi", c_.fit_window_hi);
        bind_double("verify.tolerances", c_.tolerances);
        bind_string("output.directory", c_.directory);
        bind_size("output.stride", c_.stride);
        setters_["case"] = [this](const std::string& v) {
            if (v == "const_state") c_.case_kind = CaseKind::const_state;
            else if (v == "similarity") c_.case_kind = CaseKind::similarity;
            else violations_.push_back("case: must be const_state or similarity, got " + v);
        };
        setters_["init.kind"] = [this](const std::string& v) {
            if (v == "profile_plus_perturbation") c_.init_kind = InitKind::profile_plus_perturbation;
            else if (v == "gaussian_hump") c_.init_kind = InitKind::gaussian_hump;
            else if (v == "custom_table") c_.init_kind = InitKind::custom_table;
            else violations_.push_back("init.kind: unknown kind " + v);
        };
    }

    void apply(const RawDoc& doc) {
        std::vector<std::string> unknown;
        for (const auto& [key, value] : doc.entries) {
            auto it = setters_.find(key);
            if (it == setters_.end()) {
                unknown.push_back(key);
                continue;
            }
            it->second(value);
        }
        if (!unknown.empty()) {
            std::string msg = "config: unknown key(s):";
            for (const auto& k : unknown) msg += " " + k;
            throw DataError(msg);
        }
    }

private:
    void bind_double(const std::string& key, double& target) {
        setters_[key] = [this, key, &target](const std::string& v) {
            try {
                std::size_t pos = 0;
                const double parsed = std::stod(v, &pos);
                if (pos != v.size()) throw std::invalid_argument("trailing characters");
                target = parsed;
            } catch (const std::exception&) {
                violations_.push_back(key + ": not a number: " + v);
            }
        };
    }

    void bind_size(const std::string& key, std::size_t& target) {
        setters_[key] = [this, key, &target](const std::string& v) {
            try {
                std::size_t pos = 0;
                const long long parsed = std::stoll(v, &pos);
                if (pos != v.size() || parsed < 0) throw std::invalid_argument("bad integer");
                target = static_cast<std::size_t>(parsed);
            } catch (const std::exception&) {
                violations_.push_back(key + ": not a non-negative integer: " + v);
            }
        };
    }

    void bind_string(const std::string& key, std::string& target) {
        setters_[key] = [&target](const std::string& v) { target = v; };
    }

    ExperimentConfig& c_;
    std::vector<std::string>& violations_;
    std::map<std::string, std::function<void(const std::string&)>> setters_;
};

} // namespace

void validate_config(const ExperimentConfig& c) {
    std::vector<std::string> bad;
    if (!(c.p_ref > 0.0)) bad.push_back("pressure.p_ref must be positive");
    if (!(c.gamma_p >= 1.0)) bad.push_back("pressure.gamma_p must be >= 1");
    if (!(c.alpha_bar > 0.0)) bad.push_back("damping.alpha_bar must be positive");
    if (c.shape != "constant" && c.shape != "gaussian_bump" && c.shape != "double_bump")
        bad.push_back("damping.shape must be constant, gaussian_bump, or double_bump");
    double bump_sum = 0.0;
    if (c.shape == "gaussian_bump" || c.shape == "double_bump") {
        if (!(c.w > 0.0)) bad.push_back("damping.w must be positive");
        bump_sum += std::abs(c.a);
    }
    if (c.shape == "double_bump") {
        if (!(c.w2 > 0.0)) bad.push_back("damping.w2 must be positive");
        bump_sum += std::abs(c.a2);
    }
    if (!(c.alpha_bar - bump_sum > 0.0))
        bad.push_back("damping: alpha_bar - sum|a| must stay positive (alpha0 > 0)");
    if (!(c.ends.v_minus > 0.0)) bad.push_back("end_states.v_minus must be positive");
    if (!(c.ends.v_plus > 0.0)) bad.push_back("end_states.v_plus must be positive");
    if (c.case_kind == CaseKind::const_state && c.ends.v_minus != c.ends.v_plus)
        bad.push_back("case const_state requires equal volumes v_minus = v_plus");
    if (c.case_kind == CaseKind::similarity && c.ends.v_minus == c.ends.v_plus)
        bad.push_back("case similarity requires distinct volumes v_minus != v_plus");
    if (c.case_kind == CaseKind::similarity && !(c.gamma_w > 0.5 && c.gamma_w < 1.0))
        bad.push_back("verify.gamma_w must lie in the open interval (1/2, 1)");
    if (!(c.half_length > 0.0)) bad.push_back("grid.half_length must be positive");
    if (c.n_cells < 16) bad.push_back("grid.n_cells must be at least 16");
    if (!(c.t_final >= 0.0)) bad.push_back("time.t_final must be non-negative");
    if (!(c.cfl > 0.0 && c.cfl < 1.0)) bad.push_back("time.cfl must lie in (0, 1)");
    if (!(c.snapshot_stride > 0.0)) bad.push_back("time.snapshot_stride must be positive");
    if (c.boundary != "farfield_decay" && c.boundary != "extrapolation")
        bad.push_back("time.boundary must be farfield_decay or extrapolation");
    if (!(c.width > 0.0)) bad.push_back("init.width must be positive");
    if (!(c.w_m > 0.0)) bad.push_back("profile.w_m must be positive");
    if (!(c.xi_max > 0.0)) bad.push_back("profile.xi_max must be positive");
    if (c.n_nodes < 64) bad.push_back("profile.n_nodes must be at least 64");
    if (!(c.profile_tol > 0.0)) bad.push_back("profile.tol must be positive");
    if (!(c.fit_window_lo >= 1.0)) bad.push_back("verify.fit_window_lo must be >= 1");
    if (!(c.fit_window_hi > c.fit_window_lo))
        bad.push_back("verify.fit_window_hi must exceed fit_window_lo");
    if (!(c.tolerances > 0.0)) bad.push_back("verify.tolerances must be positive");
    if (c.directory.empty()) bad.push_back("output.directory must not be empty");
    if (c.stride < 1) bad.push_back("output.stride must be at least 1");
    if (!bad.empty()) throw ValidationError(bad);
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    std::vector<std::string> violations;
    Binder binder(config, violations);
    binder.apply(tokenize(text));
    if (!violations.empty()) throw ValidationError(violations);
    validate_config(config);
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string emit_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "case = " << (c.case_kind == CaseKind::const_state ? "const_state" : "similarity")
        << "\n\n";
    out << "[pressure]\n";
    out << "p_ref = " << fmt(c.p_ref) << "\n";
    out << "gamma_p = " << fmt(c.gamma_p) << "\n\n";
    out << "[damping]\n";
    out << "alpha_bar = " << fmt(c.alpha_bar) << "\n";
    out << "shape = " << c.shape << "\n";
    out << "a = " << fmt(c.a) << "\n";
    out << "w = " << fmt(c.w) << "\n";
    out << "x_c = " << fmt(c.x_c) << "\n";
    out << "a2 = " << fmt(c.a2) << "\n";
    out << "w2 = " << fmt(c.w2) << "\n";
    out << "x_c2 = " << fmt(c.x_c2) << "\n\n";
    out << "[end_states]\n";
    out << "v_minus = " << fmt(c.ends.v_minus) << "\n";
    out << "v_plus = " << fmt(c.ends.v_plus) << "\n";
    out << "u_minus = " << fmt(c.ends.u_minus) << "\n";
    out << "u_plus = " << fmt(c.ends.u_plus) << "\n\n";
    out << "[grid]\n";
    out << "half_length = " << fmt(c.half_length) << "\n";
    out << "n_cells = " << c.n_cells << "\n\n";
    out << "[time]\n";
    out << "t_final = " << fmt(c.t_final) << "\n";
    out << "cfl = " << fmt(c.cfl) << "\n";
    out << "snapshot_stride = " << fmt(c.snapshot_stride) << "\n";
    out << "boundary = " << c.boundary << "\n\n";
    out << "[init]\n";
    out << "kind = "
        << (c.init_kind == InitKind::profile_plus_perturbation ? "profile_plus_perturbation"
            : c.init_kind == InitKind::gaussian_hump           ? "gaussian_hump"
                                                               : "custom_table")
        << "\n";
    out << "amplitude = " << fmt(c.amplitude) << "\n";
    out << "width = " << fmt(c.width) << "\n\n";
    out << "[profile]\n";
    out << "w_m = " << fmt(c.w_m) << "\n";
    out << "x_m = " << fmt(c.x_m) << "\n";
    out << "xi_max = " << fmt(c.xi_max) << "\n";
    out << "n_nodes = " << c.n_nodes << "\n";
    out << "tol = " << fmt(c.profile_tol) << "\n\n";
    out << "[verify]\n";
    out << "gamma_w = " << fmt(c.gamma_w) << "\n";
    out << "fit_window_lo = " << fmt(c.fit_window_lo) << "\n";
    out << "fit_window_hi = " << fmt(c.fit_window_hi) << "\n";
    out << "tolerances = " << fmt(c.tolerances) << "\n\n";
    out << "[output]\n";
    out << "directory = " << c.directory << "\n";
    out << "stride = " << c.stride << "\n";
    return out.str();
}

std::uint64_t config_hash(const ExperimentConfig& config) {
    const std::string text = emit_config(config);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string config_hash_hex(const ExperimentConfig& config) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(config_hash(config)));
    return std::string(buf);
}

PressureLaw make_law(const ExperimentConfig& c) { return PressureLaw(c.p_ref, c.gamma_p); }

DampingField make_field(const ExperimentConfig& c) {
    if (c.shape == "constant") return DampingField::constant(c.alpha_bar);
    if (c.shape == "gaussian_bump")
        return DampingField::gaussian_bump(c.alpha_bar, c.a, c.w, c.x_c);
    return DampingField::double_bump(c.alpha_bar, c.a, c.w, c.x_c, c.a2, c.w2, c.x_c2);
}

Grid1D make_grid(const ExperimentConfig& c) { return Grid1D(c.half_length, c.n_cells); }

} // namespace psdamp
