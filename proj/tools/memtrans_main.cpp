// memtrans: design and analysis toolkit for metalized-membrane
// electromechanical transducers. Subcommands cover eigenmode prediction,
// dissipation budgets, coupling-capacitor models, bias-induced frequency
// shifts and experimental data fits.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "memtrans/analysis.hpp"
#include "memtrans/bessel.hpp"
#include "memtrans/constants.hpp"
#include "memtrans/csv.hpp"
#include "memtrans/device.hpp"
#include "memtrans/dissipation.hpp"
#include "memtrans/electromech.hpp"
#include "memtrans/modes.hpp"
#include "memtrans/svg.hpp"
#include "memtrans/version.hpp"

namespace {

using json = nlohmann::json;
using namespace memtrans;

// FNV-1a over the file bytes; cheap content fingerprint for run reports.
std::string file_digest(const std::string& path) {
    const std::string data = read_text_file(path);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct RunContext {
    std::string command;
    std::string report_path;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
    std::vector<std::string> artifacts;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void note_input(const std::string& path) {
        if (!path.empty() && std::filesystem::exists(path))
            inputs.emplace_back(path, file_digest(path));
    }
    void note_artifact(const std::string& path) { artifacts.push_back(path); }

    void finish() const {
        if (report_path.empty()) return;
        json report;
        report["command"] = command;
        report["toolkit_version"] = version_string;
        json in = json::object();
        for (const auto& [path, digest] : inputs) in[path] = digest;
        report["inputs"] = in;
        json arts = json::array();
        for (const auto& a : artifacts) {
            if (!std::filesystem::exists(a))
                throw std::runtime_error("report: artifact missing on completion: " + a);
            arts.push_back(a);
        }
        report["artifacts"] = arts;
        report["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_text_file(report_path, report.dump(2) + "\n");
    }
};

int thread_cap(int branches) {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
    if (const char* env = std::getenv("MEMTRANS_THREADS")) {
        const int requested = std::atoi(env);
        if (requested >= 1) cap = std::min(cap, requested);
    }
    return std::min(cap, branches);
}

DeviceConfig device_from(const std::string& path, RunContext& ctx) {
    if (path.empty()) return default_device();
    ctx.note_input(path);
    return load_device(path);
}

std::pair<int, int> parse_mode_pair(const std::string& text) {
    int n = 0, m = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d,%d%c", &n, &m, &extra) != 2)
        throw std::runtime_error("expected a mode index like '0,1', got '" + text + "'");
    return {n, m};
}

struct CalibrateSpec {
    int n = 0, m = 1;
    double target_hz = 0.0;
};

CalibrateSpec parse_calibrate(const std::string& text) {
    CalibrateSpec spec;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d,%d=%lf%c", &spec.n, &spec.m, &spec.target_hz, &extra) != 3)
        throw std::runtime_error("expected 'n,m=frequency_hz', got '" + text + "'");
    return spec;
}

// "0,1..0,10" (range over m, fixed n) or a ';'-separated list of "n,m".
std::vector<std::pair<int, int>> parse_mode_list(const std::string& text) {
    std::vector<std::pair<int, int>> modes;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ';')) {
        const auto dots = token.find("..");
        if (dots == std::string::npos) {
            modes.push_back(parse_mode_pair(token));
            continue;
        }
        const auto [n0, m0] = parse_mode_pair(token.substr(0, dots));
        const auto [n1, m1] = parse_mode_pair(token.substr(dots + 2));
        if (n0 != n1 || m1 < m0)
            throw std::runtime_error("mode range must keep n fixed and m ascending: " + token);
        for (int m = m0; m <= m1; ++m) modes.emplace_back(n0, m);
    }
    if (modes.empty()) throw std::runtime_error("empty mode list");
    return modes;
}

ModeTable compute_table(const DeviceConfig& config, int n_max, int m_max, int grid, bool uniform,
                        const std::optional<CalibrateSpec>& calibrate, double* rho_out = nullptr) {
    DeviceConfig work = config;
    if (calibrate && !uniform) {
        const double rho = calibrate_coating_density(work.stack, calibrate->n, calibrate->m,
                                                     calibrate->target_hz, grid,
                                                     work.solver.rel_tol);
        work.stack.coating.density = rho;
        if (rho_out) *rho_out = rho;
    }
    if (uniform) return uniform_modes(work.stack, n_max, m_max, std::min(grid, 512));
    return loaded_modes(work.stack, n_max, m_max, grid, thread_cap(n_max + 1));
}

int cmd_modes(const std::string& device_path, int n_max, int m_max, int grid, bool uniform,
              const std::string& calibrate_text, const std::string& out_path, RunContext& ctx) {
    DeviceConfig config = device_from(device_path, ctx);
    if (n_max >= 0) config.modes.n_max = n_max;
    if (m_max >= 1) config.modes.m_max = m_max;
    if (grid >= 16) config.solver.grid_n = grid;

    std::optional<CalibrateSpec> cal;
    if (!calibrate_text.empty()) cal = parse_calibrate(calibrate_text);

    const ModeTable table = compute_table(config, config.modes.n_max, config.modes.m_max,
                                          config.solver.grid_n, uniform, cal);
    write_text_file(out_path, mode_table_csv(table));
    ctx.note_artifact(out_path);
    std::cout << "wrote " << out_path << " (" << table.modes.size() << " modes, "
              << to_string(table.provenance) << ")\n";
    return 0;
}

int cmd_qbudget(const std::string& device_path, const std::string& modes_text,
                const std::string& out_path, const std::string& svg_path, int sweep_count,
                int sweep_m, const std::string& sweep_out, RunContext& ctx) {
    DeviceConfig config = device_from(device_path, ctx);

    std::vector<DissipationBudget> budgets;
    for (const auto& [n, m] : parse_mode_list(modes_text)) {
        if (n != 0)
            throw std::runtime_error(
                "qbudget: the loss budget is defined for axisymmetric modes only (n = 0)");
        budgets.push_back(q_total(config.stack, m));
    }
    write_text_file(out_path, budget_csv(budgets));
    ctx.note_artifact(out_path);
    std::cout << "wrote " << out_path << " (" << budgets.size() << " modes)\n";

    if (!svg_path.empty()) {
        SvgSeries bilayer{"Q_bilayer", {}, {}}, total{"Q_total", {}, {}};
        for (const auto& b : budgets) {
            if (!b.q_bilayer || !b.q_total) continue;
            bilayer.x.push_back(b.m);
            bilayer.y.push_back(*b.q_bilayer);
            total.x.push_back(b.m);
            total.y.push_back(*b.q_total);
        }
        write_text_file(svg_path, svg_line_chart("Dissipation budget", "radial index m",
                                                 "Q factor", {bilayer, total}, true));
        ctx.note_artifact(svg_path);
        std::cout << "wrote " << svg_path << "\n";
    }

    if (sweep_count > 0) {
        std::ostringstream sweep;
        sweep << "ri_m,f_Ri,Q_bilayer,Q_total\n";
        const double r_hi = config.stack.coating_outer;
        for (int i = 0; i < sweep_count; ++i) {
            MembraneStack stack = config.stack;
            stack.coating_inner = r_hi * i / (sweep_count - 1);
            const DissipationBudget b = q_total(stack, sweep_m);
            sweep << format_sci(stack.coating_inner) << "," << format_sci(b.coverage_f) << ","
                  << (b.q_bilayer ? format_sci(*b.q_bilayer) : "unbounded") << ","
                  << (b.q_total ? format_sci(*b.q_total) : "unbounded") << "\n";
        }
        write_text_file(sweep_out, sweep.str());
        ctx.note_artifact(sweep_out);
        std::cout << "wrote " << sweep_out << " (" << sweep_count << " rows)\n";
    }
    return 0;
}

int cmd_capacitance(const std::string& device_path, const std::string& mode_text, double phase,
                    double gap_override, bool uniform_shape, const std::string& out_path,
                    RunContext& ctx) {
    DeviceConfig config = device_from(device_path, ctx);
    if (!config.electrode)
        throw std::runtime_error("capacitance: the device file defines no [electrode] section");
    ElectrodeLayout layout = *config.electrode;
    if (gap_override > 0.0) layout.gap = gap_override;

    const auto [n, m] = parse_mode_pair(mode_text);
    const ModeTable table =
        uniform_shape ? uniform_modes(config.stack, n, m, 512)
                      : loaded_modes(config.stack, n, m, config.solver.grid_n, thread_cap(n + 1));
    const ModeSpec* mode = table.find(n, m);
    if (!mode) throw std::runtime_error("capacitance: mode not found in table");

    const CouplingPoint cp = coupling_point(layout, *mode, phase);
    const auto sens = dc_dbeta(layout, *mode, phase);

    json out;
    out["mode"] = {n, m};
    out["mode_frequency_hz"] = mode->frequency_hz;
    out["gap_m"] = layout.gap;
    out["c_plus_f"] = cp.c_plus;
    out["c_minus_f"] = cp.c_minus;
    out["c_series_f"] = cp.c_series;
    out["dc_plus_dbeta_f_per_m"] = sens.plus;
    out["dc_minus_dbeta_f_per_m"] = sens.minus;
    out["dc_series_dbeta_f_per_m"] = cp.dc_dbeta;
    out["d2c_series_dbeta2_f_per_m2"] = cp.d2c_dbeta2;
    out["effective_area_m2"] = cp.effective_area;
    const std::string text = out.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) {
        write_text_file(out_path, text);
        ctx.note_artifact(out_path);
    }
    return 0;
}

int cmd_shift(double a_eff, double m_eff, double gap, double f0, double v_max, double v_step,
              const std::string& out_path, const std::string& svg_path, RunContext& ctx) {
    std::ostringstream csv;
    csv << "v_dc,delta_f_hz\n";
    SvgSeries series{"plate model", {}, {}};
    for (double v = 0.0; v <= v_max + 1e-9; v += v_step) {
        const double df = frequency_shift_plate(a_eff, m_eff, gap, f0, v);
        csv << format_sci(v) << "," << format_sci(df) << "\n";
        series.x.push_back(v);
        series.y.push_back(df);
    }
    write_text_file(out_path, csv.str());
    ctx.note_artifact(out_path);
    std::cout << "wrote " << out_path << "\n";
    if (!svg_path.empty()) {
        write_text_file(svg_path, svg_line_chart("Bias-induced frequency shift", "V_dc (V)",
                                                 "delta f (Hz)", {series}, false));
        ctx.note_artifact(svg_path);
        std::cout << "wrote " << svg_path << "\n";
    }
    return 0;
}

int cmd_fit_ringdown(const std::string& data_path, const std::string& units_text, double freq_hz,
                     const std::string& out_path, RunContext& ctx) {
    ctx.note_input(data_path);
    const RingdownRecord record = read_ringdown_csv(data_path, freq_hz);
    const RingdownUnits units =
        units_text == "power" ? RingdownUnits::power : RingdownUnits::amplitude;
    const RingdownFit fit = fit_ringdown(record, units);

    json out;
    out["tau_s"] = fit.tau_s;
    out["tau_err_s"] = fit.tau_err_s;
    out["units"] = units_text;
    if (freq_hz > 0.0) out["q"] = q_from_tau(fit.tau_s, freq_hz);
    const std::string text = out.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) {
        write_text_file(out_path, text);
        ctx.note_artifact(out_path);
    }
    return 0;
}

int cmd_fit_gap(const std::string& data_path, double a_eff, double m_eff, double f0,
                const std::string& out_path, RunContext& ctx) {
    ctx.note_input(data_path);
    const ShiftDataset dataset = read_shift_csv(data_path, a_eff, m_eff, f0);
    const GapFit fit = fit_gap(dataset);

    json out;
    out["d_m"] = fit.d_m;
    out["d_err_m"] = fit.d_err_m;
    out["slope_hz_per_v2"] = fit.slope_hz_per_v2;
    const std::string text = out.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) {
        write_text_file(out_path, text);
        ctx.note_artifact(out_path);
    }
    return 0;
}

int cmd_fit_identify(const std::string& device_path, const std::string& peaks_path,
                     const std::string& spectrum_path, double noise_floor, double threshold_db,
                     int n_max, int m_max, int grid, bool uniform,
                     const std::string& calibrate_text, double max_rel_err,
                     const std::string& out_path, RunContext& ctx) {
    DeviceConfig config = device_from(device_path, ctx);
    if (n_max >= 0) config.modes.n_max = n_max;
    if (m_max >= 1) config.modes.m_max = m_max;
    if (grid >= 16) config.solver.grid_n = grid;

    std::vector<double> peaks;
    if (!peaks_path.empty()) {
        ctx.note_input(peaks_path);
        peaks = read_peak_list_csv(peaks_path);
    } else {
        ctx.note_input(spectrum_path);
        std::vector<double> freq, power;
        read_spectrum_csv(spectrum_path, freq, power);
        peaks = detect_peaks(freq, power, noise_floor, threshold_db);
    }

    std::optional<CalibrateSpec> cal;
    if (!calibrate_text.empty()) cal = parse_calibrate(calibrate_text);
    const ModeTable table = compute_table(config, config.modes.n_max, config.modes.m_max,
                                          config.solver.grid_n, uniform, cal);

    const Identification id = identify_modes(peaks, table, max_rel_err);
    write_text_file(out_path, assignment_csv(id));
    ctx.note_artifact(out_path);

    double worst = 0.0;
    for (const auto& a : id.assigned) worst = std::max(worst, a.rel_error_percent);
    json summary;
    summary["peaks"] = peaks.size();
    summary["assigned"] = id.assigned.size();
    summary["unassigned"] = id.unassigned_hz.size();
    summary["max_rel_error_percent"] = worst;
    summary["table"] = out_path;
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_calibrate(const std::string& device_path, const std::string& mode_text, double target_hz,
                  int grid, const std::string& out_path, RunContext& ctx) {
    DeviceConfig config = device_from(device_path, ctx);
    if (grid >= 16) config.solver.grid_n = grid;
    const auto [n, m] = parse_mode_pair(mode_text);

    const double rho = calibrate_coating_density(config.stack, n, m, target_hz,
                                                 config.solver.grid_n, config.solver.rel_tol);
    json out;
    out["mode"] = {n, m};
    out["target_hz"] = target_hz;
    out["grid_n"] = config.solver.grid_n;
    out["rho_coat_kg_m3"] = rho;
    std::cout << out.dump(2) << "\n";

    if (!out_path.empty()) {
        config.stack.coating.density = rho;
        save_device(config, out_path);
        ctx.note_artifact(out_path);
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"memtrans: metalized-membrane transducer design and analysis toolkit"};
    app.set_version_flag("--version", std::string(version_string));
    app.require_subcommand(1);

    RunContext ctx;
    app.add_option("--report", ctx.report_path, "Write a JSON run report to this path");

    std::string device_path, out_path, svg_path, calibrate_text, mode_text, modes_text;
    std::string data_path, units_text = "amplitude", peaks_path, spectrum_path, sweep_out;
    int n_max = -1, m_max = -1, grid = -1, sweep_count = 0, sweep_m = 1;
    bool uniform = false;
    double phase = 0.0, gap_override = 0.0;
    double a_eff = 0.0, m_eff = 0.0, gap = 0.0, f0 = 0.0, v_max = 40.0, v_step = 1.0;
    double freq_hz = 0.0, target_hz = 0.0, noise_floor = 0.0, threshold_db = 6.0;
    double max_rel_err = 3.0;

    auto add_device = [&](CLI::App* cmd) {
        cmd->add_option("--device", device_path, "Device file (omit for the bundled default)")
            ->check(CLI::ExistingFile);
    };

    // modes
    auto* modes_cmd = app.add_subcommand("modes", "Eigenfrequencies and mode table CSV");
    add_device(modes_cmd);
    modes_cmd->add_option("--n-max", n_max, "Azimuthal index limit");
    modes_cmd->add_option("--m-max", m_max, "Radial index limit");
    modes_cmd->add_option("--grid", grid, "Radial grid intervals");
    modes_cmd->add_flag("--uniform", uniform, "Bare-membrane analytic modes (default: loaded)");
    modes_cmd->add_option("--calibrate", calibrate_text,
                          "Calibrate coating density first: 'n,m=frequency_hz'");
    modes_cmd->add_option("--out", out_path, "Output CSV path")->default_val("modes.csv");

    // qbudget
    auto* qbudget_cmd = app.add_subcommand("qbudget", "Dissipation budget CSV per mode");
    add_device(qbudget_cmd);
    qbudget_cmd->add_option("--modes", modes_text, "Mode list, e.g. '0,1..0,10'")
        ->default_val("0,1..0,10");
    qbudget_cmd->add_option("--out", out_path, "Output CSV path")->default_val("budget.csv");
    qbudget_cmd->add_option("--svg", svg_path, "Also write an SVG chart");
    qbudget_cmd->add_option("--sweep-ri", sweep_count, "Also sweep the coating inner radius");
    qbudget_cmd->add_option("--sweep-m", sweep_m, "Radial index for the sweep")->default_val(1);
    qbudget_cmd->add_option("--sweep-out", sweep_out, "Sweep CSV path")
        ->default_val("budget_ri_sweep.csv");

    // capacitance
    auto* cap_cmd = app.add_subcommand("capacitance", "Coupling-capacitor model for one mode");
    add_device(cap_cmd);
    cap_cmd->add_option("--mode", mode_text, "Mode index 'n,m'")->default_val("1,1");
    cap_cmd->add_option("--phase", phase, "Mode angular phase (rad)");
    cap_cmd->add_option("--gap", gap_override, "Override the electrode gap (m)");
    cap_cmd->add_flag("--uniform", uniform, "Use the analytic bare-membrane shape");
    cap_cmd->add_option("--out", out_path, "Also write the JSON result to this path");

    // shift
    auto* shift_cmd = app.add_subcommand("shift", "Bias-voltage frequency-shift curve");
    shift_cmd->add_option("--aeff", a_eff, "Effective area (m^2)")
        ->required()
        ->check(CLI::PositiveNumber);
    shift_cmd->add_option("--meff", m_eff, "Effective mass (kg)")
        ->required()
        ->check(CLI::PositiveNumber);
    shift_cmd->add_option("--d", gap, "Electrode gap (m)")->required()->check(CLI::PositiveNumber);
    shift_cmd->add_option("--f0", f0, "Unperturbed frequency (Hz)")
        ->required()
        ->check(CLI::PositiveNumber);
    shift_cmd->add_option("--vmax", v_max, "Maximum bias (V)")->check(CLI::NonNegativeNumber);
    shift_cmd->add_option("--vstep", v_step, "Bias step (V)")->check(CLI::PositiveNumber);
    shift_cmd->add_option("--out", out_path, "Output CSV path")->default_val("shift.csv");
    shift_cmd->add_option("--svg", svg_path, "Also write an SVG chart");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "Fit experimental records");
    fit_cmd->require_subcommand(1);

    auto* ringdown_cmd = fit_cmd->add_subcommand("ringdown", "Exponential decay time");
    ringdown_cmd->add_option("--data", data_path, "CSV with columns t_s,amplitude")
        ->required()
        ->check(CLI::ExistingFile);
    ringdown_cmd->add_option("--units", units_text, "Record units: amplitude|power")
        ->check(CLI::IsMember({"amplitude", "power"}));
    ringdown_cmd->add_option("--freq", freq_hz, "Mode frequency (Hz) to also report Q");
    ringdown_cmd->add_option("--out", out_path, "Also write the JSON result to this path");

    auto* gap_cmd = fit_cmd->add_subcommand("gap", "Electrode gap from shift-vs-voltage data");
    gap_cmd->add_option("--data", data_path, "CSV with columns v_dc,delta_f_hz")
        ->required()
        ->check(CLI::ExistingFile);
    gap_cmd->add_option("--aeff", a_eff, "Effective area (m^2)")
        ->required()
        ->check(CLI::PositiveNumber);
    gap_cmd->add_option("--meff", m_eff, "Effective mass (kg)")
        ->required()
        ->check(CLI::PositiveNumber);
    gap_cmd->add_option("--f0", f0, "Unperturbed frequency (Hz)")
        ->required()
        ->check(CLI::PositiveNumber);
    gap_cmd->add_option("--out", out_path, "Also write the JSON result to this path");

    auto* identify_cmd = fit_cmd->add_subcommand("identify", "Assign measured peaks to modes");
    add_device(identify_cmd);
    identify_cmd->add_option("--peaks", peaks_path, "CSV of measured peak frequencies (Hz)")
        ->check(CLI::ExistingFile);
    identify_cmd->add_option("--spectrum", spectrum_path, "CSV with columns f_hz,power")
        ->check(CLI::ExistingFile);
    identify_cmd->add_option("--noise-floor", noise_floor, "Noise floor for peak detection");
    identify_cmd->add_option("--threshold-db", threshold_db, "Peak threshold above the floor");
    identify_cmd->add_option("--n-max", n_max, "Azimuthal index limit");
    identify_cmd->add_option("--m-max", m_max, "Radial index limit");
    identify_cmd->add_option("--grid", grid, "Radial grid intervals");
    identify_cmd->add_flag("--uniform", uniform, "Match against bare-membrane modes");
    identify_cmd->add_option("--calibrate", calibrate_text,
                             "Calibrate coating density first: 'n,m=frequency_hz'");
    identify_cmd->add_option("--max-rel-err", max_rel_err, "Assignment cutoff (percent)");
    identify_cmd->add_option("--out", out_path, "Assignment CSV path")
        ->default_val("assignments.csv");

    // calibrate
    auto* calibrate_cmd =
        app.add_subcommand("calibrate", "Coating density matching a measured mode frequency");
    add_device(calibrate_cmd);
    calibrate_cmd->add_option("--mode", mode_text, "Mode index 'n,m'")->default_val("0,1");
    calibrate_cmd->add_option("--target-hz", target_hz, "Measured frequency (Hz)")
        ->required()
        ->check(CLI::PositiveNumber);
    calibrate_cmd->add_option("--grid", grid, "Radial grid intervals");
    calibrate_cmd->add_option("--out", out_path, "Write the calibrated device file here");

    CLI11_PARSE(app, argc, argv);

    try {
        int rc = 1;
        if (modes_cmd->parsed()) {
            ctx.command = "modes";
            rc = cmd_modes(device_path, n_max, m_max, grid, uniform, calibrate_text, out_path,
                           ctx);
        } else if (qbudget_cmd->parsed()) {
            ctx.command = "qbudget";
            rc = cmd_qbudget(device_path, modes_text, out_path, svg_path, sweep_count, sweep_m,
                             sweep_out, ctx);
        } else if (cap_cmd->parsed()) {
            ctx.command = "capacitance";
            rc = cmd_capacitance(device_path, mode_text, phase, gap_override, uniform, out_path,
                                 ctx);
        } else if (shift_cmd->parsed()) {
            ctx.command = "shift";
            rc = cmd_shift(a_eff, m_eff, gap, f0, v_max, v_step, out_path, svg_path, ctx);
        } else if (fit_cmd->parsed()) {
            if (ringdown_cmd->parsed()) {
                ctx.command = "fit ringdown";
                rc = cmd_fit_ringdown(data_path, units_text, freq_hz, out_path, ctx);
            } else if (gap_cmd->parsed()) {
                ctx.command = "fit gap";
                rc = cmd_fit_gap(data_path, a_eff, m_eff, f0, out_path, ctx);
            } else {
                ctx.command = "fit identify";
                if (peaks_path.empty() && spectrum_path.empty())
                    throw std::runtime_error("fit identify: provide --peaks or --spectrum");
                rc = cmd_fit_identify(device_path, peaks_path, spectrum_path, noise_floor,
                                      threshold_db, n_max, m_max, grid, uniform, calibrate_text,
                                      max_rel_err, out_path, ctx);
            }
        } else if (calibrate_cmd->parsed()) {
            ctx.command = "calibrate";
            rc = cmd_calibrate(device_path, mode_text, target_hz, grid, out_path, ctx);
        }
        if (rc == 0) ctx.finish();
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
