#include "memtrans/device.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace memtrans {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Parsed key/value file with [section] headers. Values stay strings until a
// typed getter retrieves them, so unknown keys can be reported with context.
class SectionMap {
public:
    SectionMap(const std::string& path, const std::string& text) : path_(path) {
        std::istringstream in(text);
        std::string line, section;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find_first_of("#;");
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    fail_line(line_no, "unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                sections_[section];
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) fail_line(line_no, "expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty()) fail_line(line_no, "empty key or value");
            if (section.empty()) fail_line(line_no, "key outside any [section]");
            auto [it, inserted] = sections_[section].emplace(key, value);
            if (!inserted) fail_line(line_no, "duplicate key '" + key + "'");
        }
    }

    bool has_section(const std::string& s) const { return sections_.count(s) > 0; }

    bool has(const std::string& s, const std::string& k) const {
        auto it = sections_.find(s);
        return it != sections_.end() && it->second.count(k) > 0;
    }

    double number(const std::string& s, const std::string& k) const {
        const std::string& raw = fetch(s, k);
        char* end = nullptr;
        const double v = std::strtod(raw.c_str(), &end);
        if (end == raw.c_str() || *end != '\0')
            throw std::runtime_error(path_ + ": [" + s + "] " + k + " is not a number: '" + raw +
                                     "'");
        return v;
    }

    double number_or(const std::string& s, const std::string& k, double fallback) const {
        return has(s, k) ? number(s, k) : fallback;
    }

    std::string text(const std::string& s, const std::string& k) const { return fetch(s, k); }

    void check_known_keys(const std::string& s, std::initializer_list<const char*> known) const {
        auto it = sections_.find(s);
        if (it == sections_.end()) return;
        for (const auto& [key, value] : it->second) {
            bool ok = false;
            for (const char* k : known)
                if (key == k) ok = true;
            if (!ok)
                throw std::runtime_error(path_ + ": unknown key '" + key + "' in [" + s + "]");
        }
    }

private:
    const std::string& fetch(const std::string& s, const std::string& k) const {
        auto it = sections_.find(s);
        if (it == sections_.end())
            throw std::runtime_error(path_ + ": missing section [" + s + "]");
        auto kt = it->second.find(k);
        if (kt == it->second.end())
            throw std::runtime_error(path_ + ": missing key '" + k + "' in [" + s + "]");
        return kt->second;
    }

    [[noreturn]] void fail_line(int line_no, const std::string& what) const {
        throw std::runtime_error(path_ + ":" + std::to_string(line_no) + ": " + what);
    }

    std::string path_;
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

FilmLayer parse_layer(const SectionMap& map, const std::string& section) {
    map.check_known_keys(section, {"Y_pa", "nu", "rho_kg_m3", "h_m", "q_inv", "sigma0_pa"});
    FilmLayer layer;
    layer.young_modulus = map.number(section, "Y_pa");
    layer.poisson_ratio = map.number(section, "nu");
    layer.density = map.number(section, "rho_kg_m3");
    layer.thickness = map.number(section, "h_m");
    layer.intrinsic_loss = map.number(section, "q_inv");
    layer.prestress = map.number_or(section, "sigma0_pa", 0.0);
    return layer;
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void SolverSettings::validate() const {
    if (grid_n < 16) throw std::invalid_argument("solver.grid_n must be >= 16");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("solver.rel_tol must be positive");
}

void DeviceConfig::validate() const {
    stack.validate();
    solver.validate();
    if (modes.n_max < 0 || modes.m_max < 1)
        throw std::invalid_argument("modes.n_max/m_max out of range");
    if (electrode) electrode->validate();
}

DeviceConfig default_device() {
    DeviceConfig config;

    config.stack.base.young_modulus = 270e9;
    config.stack.base.poisson_ratio = 0.27;
    config.stack.base.density = 2700.0;
    config.stack.base.thickness = 100e-9;
    config.stack.base.intrinsic_loss = 2.0e-4;
    config.stack.base.prestress = 1e9;

    config.stack.coating.young_modulus = 600e9;
    config.stack.coating.poisson_ratio = 0.27;
    config.stack.coating.density = 5220.0;  // bulk TiN; calibrate against a measured mode
    config.stack.coating.thickness = 50e-9;
    config.stack.coating.intrinsic_loss = 1.0e-3;
    config.stack.coating.prestress = 0.0;

    config.stack.radius = 740e-6;
    config.stack.coating_inner = 250e-6;
    config.stack.coating_outer = config.stack.radius;

    config.electrode = eight_segment_layout(config.stack.coating_inner,
                                            config.stack.coating_outer, 5.12e-6);
    config.validate();
    return config;
}

DeviceConfig load_device(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open device file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const SectionMap map(path, ss.str());

    DeviceConfig config;
    config.stack.base = parse_layer(map, "base");
    config.stack.coating = parse_layer(map, "coating");

    map.check_known_keys("geometry", {"R_m", "Ri_m", "Re_m"});
    config.stack.radius = map.number("geometry", "R_m");
    config.stack.coating_inner = map.number("geometry", "Ri_m");
    config.stack.coating_outer = map.number_or("geometry", "Re_m", config.stack.radius);

    map.check_known_keys("solver", {"grid_n", "rel_tol"});
    if (map.has_section("solver")) {
        config.solver.grid_n = static_cast<int>(map.number_or("solver", "grid_n", 2000));
        config.solver.rel_tol = map.number_or("solver", "rel_tol", 1e-9);
    }

    map.check_known_keys("modes", {"n_max", "m_max"});
    if (map.has_section("modes")) {
        config.modes.n_max = static_cast<int>(map.number_or("modes", "n_max", 3));
        config.modes.m_max = static_cast<int>(map.number_or("modes", "m_max", 5));
    }

    map.check_known_keys("electrode", {"preset", "file", "gap_m", "r_in_m", "r_out_m",
                                       "notch_start_rad", "notch_end_rad"});
    if (map.has_section("electrode")) {
        const double gap = map.number("electrode", "gap_m");
        ElectrodeLayout layout;
        if (map.has("electrode", "file")) {
            layout = load_electrode_layout(map.text("electrode", "file"), gap);
        } else {
            const std::string preset =
                map.has("electrode", "preset") ? map.text("electrode", "preset") : "eight-segment";
            if (preset != "eight-segment")
                throw std::runtime_error(path + ": unknown electrode preset '" + preset + "'");
            const double r_in =
                map.number_or("electrode", "r_in_m", config.stack.coating_inner);
            const double r_out =
                map.number_or("electrode", "r_out_m", config.stack.coating_outer);
            layout = eight_segment_layout(r_in, r_out, gap);
        }
        if (map.has("electrode", "notch_start_rad") || map.has("electrode", "notch_end_rad")) {
            layout.mask.notch = {map.number("electrode", "notch_start_rad"),
                                 map.number("electrode", "notch_end_rad")};
        }
        config.electrode = layout;
    }

    config.validate();
    return config;
}

std::string device_to_string(const DeviceConfig& config) {
    std::ostringstream out;
    auto layer = [&out](const char* name, const FilmLayer& l) {
        out << "[" << name << "]\n"
            << "Y_pa = " << format_full(l.young_modulus) << "\n"
            << "nu = " << format_full(l.poisson_ratio) << "\n"
            << "rho_kg_m3 = " << format_full(l.density) << "\n"
            << "h_m = " << format_full(l.thickness) << "\n"
            << "q_inv = " << format_full(l.intrinsic_loss) << "\n"
            << "sigma0_pa = " << format_full(l.prestress) << "\n\n";
    };
    layer("base", config.stack.base);
    layer("coating", config.stack.coating);
    out << "[geometry]\n"
        << "R_m = " << format_full(config.stack.radius) << "\n"
        << "Ri_m = " << format_full(config.stack.coating_inner) << "\n"
        << "Re_m = " << format_full(config.stack.coating_outer) << "\n\n";
    out << "[solver]\n"
        << "grid_n = " << config.solver.grid_n << "\n"
        << "rel_tol = " << format_full(config.solver.rel_tol) << "\n\n";
    out << "[modes]\n"
        << "n_max = " << config.modes.n_max << "\n"
        << "m_max = " << config.modes.m_max << "\n";
    if (config.electrode) {
        // Only the eight-segment preset is serialized inline; custom sector
        // lists live in their own file.
        out << "\n[electrode]\n"
            << "preset = eight-segment\n"
            << "gap_m = " << format_full(config.electrode->gap) << "\n"
            << "r_in_m = " << format_full(config.electrode->mask.r_in) << "\n"
            << "r_out_m = " << format_full(config.electrode->mask.r_out) << "\n";
        if (config.electrode->mask.notch) {
            out << "notch_start_rad = " << format_full(config.electrode->mask.notch->first)
                << "\n"
                << "notch_end_rad = " << format_full(config.electrode->mask.notch->second) << "\n";
        }
    }
    return out.str();
}

void save_device(const DeviceConfig& config, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << device_to_string(config);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace memtrans
