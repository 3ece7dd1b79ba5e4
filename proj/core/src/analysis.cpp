#include "memtrans/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "memtrans/constants.hpp"
#include "memtrans/csv.hpp"

namespace memtrans {

void RingdownRecord::validate() const {
    if (time_s.size() != amplitude.size())
        throw std::invalid_argument("ringdown: time and amplitude lengths differ");
    if (time_s.size() < 10) throw std::invalid_argument("ringdown: need at least 10 samples");
    for (size_t i = 0; i < time_s.size(); ++i) {
        if (i > 0 && !(time_s[i] > time_s[i - 1]))
            throw std::invalid_argument("ringdown: time must be strictly increasing");
        if (!(amplitude[i] > 0.0))
            throw std::invalid_argument("ringdown: amplitudes must be positive");
    }
}

RingdownFit fit_ringdown(const RingdownRecord& record, RingdownUnits units) {
    record.validate();
    const size_t n = record.time_s.size();

    // Weighted regression of ln A on t, w = A^2.
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double w = record.amplitude[i] * record.amplitude[i];
        const double x = record.time_s[i];
        const double y = std::log(record.amplitude[i]);
        sw += w;
        swx += w * x;
        swy += w * y;
        swxx += w * x * x;
        swxy += w * x * y;
    }
    const double det = sw * swxx - swx * swx;
    if (!(det > 0.0)) throw std::runtime_error("ringdown fit: degenerate time samples");
    const double slope = (sw * swxy - swx * swy) / det;
    const double intercept = (swy - slope * swx) / sw;
    if (!(slope < 0.0))
        throw std::runtime_error("ringdown fit: amplitude does not decay (tau unbounded)");

    double ss_res = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double w = record.amplitude[i] * record.amplitude[i];
        const double r = std::log(record.amplitude[i]) - intercept - slope * record.time_s[i];
        ss_res += w * r * r;
    }
    const double sxx = swxx - swx * swx / sw;
    const double sigma_sq = n > 2 ? ss_res / static_cast<double>(n - 2) : 0.0;
    const double slope_err = std::sqrt(sigma_sq / sxx);

    RingdownFit fit;
    fit.tau_s = -1.0 / slope;
    fit.tau_err_s = slope_err / (slope * slope);
    if (units == RingdownUnits::power) {
        fit.tau_s *= 2.0;
        fit.tau_err_s *= 2.0;
    }
    return fit;
}

double q_from_tau(double tau_s, double freq_hz) {
    if (!(tau_s > 0.0) || !(freq_hz > 0.0))
        throw std::invalid_argument("q_from_tau: tau and frequency must be positive");
    return pi * freq_hz * tau_s;
}

void ShiftDataset::validate() const {
    if (v_dc.size() != delta_f_hz.size())
        throw std::invalid_argument("shift dataset: voltage and shift lengths differ");
    std::vector<double> distinct(v_dc);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw std::invalid_argument("shift dataset: need at least 3 distinct voltages");
    if (!(f0_hz > 0.0)) throw std::invalid_argument("shift dataset: f0 must be positive");
    if (!(a_eff_m2 > 0.0)) throw std::invalid_argument("shift dataset: a_eff must be positive");
    if (!(m_eff_kg > 0.0)) throw std::invalid_argument("shift dataset: m_eff must be positive");
}

GapFit fit_gap(const ShiftDataset& dataset) {
    dataset.validate();
    const size_t n = dataset.v_dc.size();

    // Through-origin least squares of delta_f on V^2.
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double x = dataset.v_dc[i] * dataset.v_dc[i];
        sxx += x * x;
        sxy += x * dataset.delta_f_hz[i];
    }
    if (!(sxx > 0.0)) throw std::runtime_error("gap fit: all voltages are zero");
    const double slope = sxy / sxx;
    if (!(slope < 0.0))
        throw std::runtime_error(
            "gap fit: non-negative slope; data shows no electrostatic softening");

    double ss_res = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double x = dataset.v_dc[i] * dataset.v_dc[i];
        const double r = dataset.delta_f_hz[i] - slope * x;
        ss_res += r * r;
    }
    const double sigma_sq = n > 1 ? ss_res / static_cast<double>(n - 1) : 0.0;
    const double slope_err = std::sqrt(sigma_sq / sxx);

    const double cube = -epsilon0 * dataset.a_eff_m2 /
                        (8.0 * pi * pi * dataset.m_eff_kg * dataset.f0_hz * slope);
    GapFit fit;
    fit.slope_hz_per_v2 = slope;
    fit.d_m = std::cbrt(cube);
    fit.d_err_m = fit.d_m * slope_err / (3.0 * std::fabs(slope));
    return fit;
}

std::vector<double> detect_peaks(const std::vector<double>& freq_hz,
                                 const std::vector<double>& power, double noise_floor,
                                 double threshold_db) {
    if (freq_hz.empty() || freq_hz.size() != power.size())
        throw std::invalid_argument("detect_peaks: empty or mismatched spectrum");
    for (size_t i = 1; i < freq_hz.size(); ++i)
        if (!(freq_hz[i] > freq_hz[i - 1]))
            throw std::invalid_argument("detect_peaks: spectrum must be frequency-sorted");
    if (!(noise_floor > 0.0))
        throw std::invalid_argument("detect_peaks: noise floor must be positive");

    const double threshold = noise_floor * std::pow(10.0, threshold_db / 10.0);
    std::vector<double> peaks;
    for (size_t i = 1; i + 1 < power.size(); ++i) {
        if (!(power[i] >= threshold)) continue;
        if (!(power[i] > power[i - 1]) || !(power[i] >= power[i + 1])) continue;

        // Parabolic refinement in log power.
        const double ym = std::log10(std::max(power[i - 1], 1e-300));
        const double y0 = std::log10(power[i]);
        const double yp = std::log10(std::max(power[i + 1], 1e-300));
        const double denom = ym - 2.0 * y0 + yp;
        double delta = 0.0;
        if (denom < 0.0) delta = 0.5 * (ym - yp) / denom;
        delta = std::clamp(delta, -0.5, 0.5);
        const double left = freq_hz[i] - freq_hz[i - 1];
        const double right = freq_hz[i + 1] - freq_hz[i];
        peaks.push_back(freq_hz[i] + delta * (delta >= 0.0 ? right : left));
    }
    return peaks;
}

Identification identify_modes(const std::vector<double>& peaks_hz, const ModeTable& predicted,
                              double max_rel_err_percent) {
    if (predicted.modes.empty())
        throw std::invalid_argument("identify_modes: predicted table is empty");

    std::vector<double> peaks(peaks_hz);
    std::sort(peaks.begin(), peaks.end());
    std::vector<bool> used(predicted.modes.size(), false);

    Identification id;
    for (double peak : peaks) {
        size_t best = predicted.modes.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < predicted.modes.size(); ++j) {
            if (used[j]) continue;
            const double dist = std::fabs(predicted.modes[j].frequency_hz - peak);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        if (best == predicted.modes.size()) {
            id.unassigned_hz.push_back(peak);
            continue;
        }
        const double rel = 100.0 * best_dist / peak;
        if (rel > max_rel_err_percent) {
            id.unassigned_hz.push_back(peak);
            continue;
        }
        used[best] = true;
        PeakAssignment a;
        a.measured_hz = peak;
        a.predicted_hz = predicted.modes[best].frequency_hz;
        a.n = predicted.modes[best].n;
        a.m = predicted.modes[best].m;
        a.rel_error_percent = rel;
        id.assigned.push_back(a);
    }
    return id;
}

RingdownRecord read_ringdown_csv(const std::string& path, double mode_freq_hz) {
    RingdownRecord rec;
    rec.mode_freq_hz = mode_freq_hz;
    for (const auto& row : read_csv_rows(path, 2)) {
        rec.time_s.push_back(row[0]);
        rec.amplitude.push_back(row[1]);
    }
    rec.validate();
    return rec;
}

ShiftDataset read_shift_csv(const std::string& path, double a_eff_m2, double m_eff_kg,
                            double f0_hz) {
    ShiftDataset ds;
    ds.a_eff_m2 = a_eff_m2;
    ds.m_eff_kg = m_eff_kg;
    ds.f0_hz = f0_hz;
    for (const auto& row : read_csv_rows(path, 2)) {
        ds.v_dc.push_back(row[0]);
        ds.delta_f_hz.push_back(row[1]);
    }
    ds.validate();
    return ds;
}

void read_spectrum_csv(const std::string& path, std::vector<double>& freq_hz,
                       std::vector<double>& power) {
    freq_hz.clear();
    power.clear();
    for (const auto& row : read_csv_rows(path, 2)) {
        freq_hz.push_back(row[0]);
        power.push_back(row[1]);
    }
}

std::vector<double> read_peak_list_csv(const std::string& path) {
    std::vector<double> peaks;
    for (const auto& row : read_csv_rows(path, 1)) peaks.push_back(row[0]);
    return peaks;
}

std::string assignment_csv(const Identification& id) {
    std::ostringstream out;
    out << "n,m,predicted_hz,measured_hz,rel_error_percent\n";
    for (const auto& a : id.assigned)
        out << a.n << "," << a.m << "," << format_sci(a.predicted_hz) << ","
            << format_sci(a.measured_hz) << "," << format_sci(a.rel_error_percent) << "\n";
    for (double f : id.unassigned_hz)
        out << ",,," << format_sci(f) << ",unassigned\n";
    return out.str();
}

}  // namespace memtrans
