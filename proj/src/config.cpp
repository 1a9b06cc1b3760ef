#include "leopack/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace leopack {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, int line, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": key '" + key +
                         "' expects a number, got '" + v + "'");
    }
}

long to_long(const std::string& key, int line, const std::string& v) {
    double d = to_double(key, line, v);
    if (d != std::floor(d))
        throw ParseError("line " + std::to_string(line) + ": key '" + key +
                         "' expects an integer");
    return long(d);
}

bool to_bool(const std::string& key, int line, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ParseError("line " + std::to_string(line) + ": key '" + key +
                     "' expects true/false");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::string material;
    bool has_l = false, has_d = false, has_box = false;
    bool has_e = false, has_rho = false;
    double e_override = 0.0, rho_override = 0.0;

    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string s = trim(raw);
        if (s.empty()) continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line) +
                             ": expected key=value");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));

        if (key == "material") material = val;
        else if (key == "l_O") { cfg.object.length = to_double(key, line, val); has_l = true; }
        else if (key == "d_O") { cfg.object.diameter = to_double(key, line, val); has_d = true; }
        else if (key == "youngs_modulus") { e_override = to_double(key, line, val); has_e = true; }
        else if (key == "rho") { rho_override = to_double(key, line, val); has_rho = true; }
        else if (key == "l_B") { cfg.box.length = to_double(key, line, val); has_box = true; }
        else if (key == "w_B") cfg.box.width = to_double(key, line, val);
        else if (key == "h_B") cfg.box.height = to_double(key, line, val);
        else if (key == "M") cfg.M = int(to_long(key, line, val));
        else if (key == "N") cfg.N = int(to_long(key, line, val));
        else if (key == "Q") cfg.Q = int(to_long(key, line, val));
        else if (key == "delta_l") cfg.delta_l = to_double(key, line, val);
        else if (key == "delta_f") cfg.delta_f = to_double(key, line, val);
        else if (key == "dh") cfg.dh = to_double(key, line, val);
        else if (key == "df") cfg.df = to_double(key, line, val);
        else if (key == "z0") cfg.z0 = to_double(key, line, val);
        else if (key == "noise_sigma") cfg.noise_sigma = to_double(key, line, val);
        else if (key == "density") cfg.density = to_double(key, line, val);
        else if (key == "r_occ") cfg.r_occ = to_double(key, line, val);
        else if (key == "seed") cfg.seed = std::uint64_t(to_long(key, line, val));
        else if (key == "out_dir") cfg.out_dir = val;
        else if (key == "fix_enabled") cfg.fix_enabled = to_bool(key, line, val);
        else
            throw ParseError("line " + std::to_string(line) +
                             ": unknown key '" + key + "'");
    }

    if (material.empty() && !(has_e && has_rho))
        throw ValidationError("missing required key 'material'");
    if (!has_l || cfg.object.length <= 0)
        throw ValidationError("missing or non-positive 'l_O'");
    if (!has_d || cfg.object.diameter <= 0)
        throw ValidationError("missing or non-positive 'd_O'");
    if (!has_box || cfg.box.length <= 0 || cfg.box.width <= 0 ||
        cfg.box.height <= 0)
        throw ValidationError("missing or non-positive box dimensions "
                              "('l_B', 'w_B', 'h_B')");

    Material m = material.empty() ? Material::Custom
                                  : material_from_name(material);
    if (m != Material::Custom) {
        ObjectSpec catalog =
            make_object(m, cfg.object.length, cfg.object.diameter);
        cfg.object = catalog;
    } else {
        cfg.object.material = Material::Custom;
    }
    if (has_e) cfg.object.youngs_modulus = e_override;
    if (has_rho) cfg.object.density = rho_override;
    if (cfg.object.youngs_modulus <= 0)
        throw ValidationError("'youngs_modulus' must be positive");

    if (cfg.df == 0.0) cfg.df = cfg.object.diameter / 2;
    if (cfg.z0 == 0.0) cfg.z0 = cfg.box.height + 100.0;

    if (cfg.delta_l <= 0 || cfg.delta_l >= cfg.box.length / 2)
        throw ValidationError("'delta_l' must lie in (0, l_B/2)");
    if (cfg.delta_f <= 0) throw ValidationError("'delta_f' must be positive");
    if (cfg.noise_sigma < 0) throw ValidationError("'noise_sigma' must be >= 0");
    if (cfg.density <= 0) throw ValidationError("'density' must be positive");
    if (cfg.N < 8) throw ValidationError("'N' must be at least 8");

    cfg.object.validate();
    cfg.box.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

std::string render_config(const ExperimentConfig& c) {
    std::ostringstream os;
    os.precision(17);
    os << "material=" << material_name(c.object.material) << "\n";
    os << "l_O=" << c.object.length << "\n";
    os << "d_O=" << c.object.diameter << "\n";
    os << "youngs_modulus=" << c.object.youngs_modulus << "\n";
    os << "rho=" << c.object.density << "\n";
    os << "l_B=" << c.box.length << "\n";
    os << "w_B=" << c.box.width << "\n";
    os << "h_B=" << c.box.height << "\n";
    os << "M=" << c.M << "\n";
    os << "N=" << c.N << "\n";
    os << "Q=" << c.Q << "\n";
    os << "delta_l=" << c.delta_l << "\n";
    os << "delta_f=" << c.delta_f << "\n";
    os << "dh=" << c.dh << "\n";
    os << "df=" << c.df << "\n";
    os << "z0=" << c.z0 << "\n";
    os << "noise_sigma=" << c.noise_sigma << "\n";
    os << "density=" << c.density << "\n";
    os << "r_occ=" << c.r_occ << "\n";
    os << "seed=" << c.seed << "\n";
    os << "out_dir=" << c.out_dir << "\n";
    os << "fix_enabled=" << (c.fix_enabled ? "true" : "false") << "\n";
    return os.str();
}

RunParams run_params(const ExperimentConfig& c) {
    RunParams p;
    p.delta_l = c.delta_l;
    p.delta_f = c.delta_f;
    p.dh = c.dh;
    p.df = c.df;
    p.z0 = c.z0;
    p.template_samples = c.M;
    p.density = c.density;
    p.noise_sigma = c.noise_sigma;
    p.r_occ = c.r_occ;
    p.seed = c.seed;
    p.fix_enabled = c.fix_enabled;
    p.perception.rays = c.N;
    return p;
}

}  // namespace leopack
