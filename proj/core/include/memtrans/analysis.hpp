#pragma once

#include <string>
#include <vector>

#include "memtrans/modes.hpp"

namespace memtrans {

// One ring-down acquisition: amplitude samples after the drive is switched
// off. Time strictly increasing, amplitudes positive, at least 10 samples.
struct RingdownRecord {
    std::vector<double> time_s;
    std::vector<double> amplitude;
    double mode_freq_hz = 0.0;

    void validate() const;
};

// Whether the recorded samples are linear amplitude or power. A power record
// decays twice as fast; the fitted tau is always reported in the amplitude
// convention.
enum class RingdownUnits { amplitude, power };

struct RingdownFit {
    double tau_s = 0.0;
    double tau_err_s = 0.0;
};

// Exponential decay fit A(t) = A0 exp(-t / tau) as a weighted linear
// regression on log amplitude, weights proportional to amplitude^2
// (variance-consistent for additive noise). Throws when the data does not
// decay (non-negative slope).
RingdownFit fit_ringdown(const RingdownRecord& record,
                         RingdownUnits units = RingdownUnits::amplitude);

// Amplitude ring-down relation Q = pi f tau.
double q_from_tau(double tau_s, double freq_hz);

// Frequency shift vs DC bias measurements plus the fixed lumped parameters
// of the plate model.
struct ShiftDataset {
    std::vector<double> v_dc;
    std::vector<double> delta_f_hz;
    double a_eff_m2 = 0.0;
    double m_eff_kg = 0.0;
    double f0_hz = 0.0;

    void validate() const;  // >= 3 distinct voltages, f0 > 0
};

struct GapFit {
    double d_m = 0.0;
    double d_err_m = 0.0;
    double slope_hz_per_v2 = 0.0;
};

// Electrode gap from the V^2 softening law: through-origin least squares of
// delta_f against V^2 gives the slope s, then
//   d = [-eps0 A_eff / (8 pi^2 m_eff f0 s)]^(1/3),
// with the error propagated from the slope standard error. Throws when the
// slope is non-negative (no softening in the data).
GapFit fit_gap(const ShiftDataset& dataset);

// Local maxima of a frequency-sorted power spectrum exceeding the noise floor
// by threshold_db, refined by 3-point parabolic interpolation in log power.
std::vector<double> detect_peaks(const std::vector<double>& freq_hz,
                                 const std::vector<double>& power, double noise_floor,
                                 double threshold_db = 6.0);

struct PeakAssignment {
    double measured_hz = 0.0;
    double predicted_hz = 0.0;
    int n = 0;
    int m = 0;
    double rel_error_percent = 0.0;  // 100 |predicted - measured| / measured
};

struct Identification {
    std::vector<PeakAssignment> assigned;
    std::vector<double> unassigned_hz;
};

// Greedy nearest-frequency matching of measured peaks against a predicted
// mode table, ascending in frequency, one-to-one; matches worse than
// max_rel_err_percent are left unassigned.
Identification identify_modes(const std::vector<double>& peaks_hz, const ModeTable& predicted,
                              double max_rel_err_percent);

// CSV ingestion. Column layouts: ringdown (t_s, amplitude),
// shift (v_dc, delta_f_hz), spectrum (f_hz, power).
RingdownRecord read_ringdown_csv(const std::string& path, double mode_freq_hz = 0.0);
ShiftDataset read_shift_csv(const std::string& path, double a_eff_m2, double m_eff_kg,
                            double f0_hz);
void read_spectrum_csv(const std::string& path, std::vector<double>& freq_hz,
                       std::vector<double>& power);
std::vector<double> read_peak_list_csv(const std::string& path);

std::string assignment_csv(const Identification& id);

}  // namespace memtrans
