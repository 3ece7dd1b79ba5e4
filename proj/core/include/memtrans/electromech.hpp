#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "memtrans/modes.hpp"

namespace memtrans {

// One fixed-electrode sector in polar coordinates. Angles in [0, 2 pi],
// theta_start < theta_end (split wrapping sectors before constructing).
struct AnnularSector {
    double r_in = 0.0;
    double r_out = 0.0;
    double theta_start = 0.0;
    double theta_end = 0.0;
    int polarity = +1;  // +1 or -1
};

// Metalized region on the membrane: an annulus minus an optional angular
// cutout (the alignment notch).
struct MetalMask {
    double r_in = 0.0;
    double r_out = 0.0;
    std::optional<std::pair<double, double>> notch;  // [start, end] rad
};

struct ElectrodeLayout {
    std::vector<AnnularSector> segments;
    double gap = 0.0;  // rest capacitor gap h0, m
    MetalMask mask;

    void validate() const;  // non-overlapping segments, positive gap
};

// Eight equal 45-degree sectors with alternating polarity, covering
// [r_in, r_out]; the mask matches the electrode annulus.
ElectrodeLayout eight_segment_layout(double r_in, double r_out, double gap);

// Sector list from a CSV file with columns
//   r_in_m, r_out_m, theta_start_rad, theta_end_rad, polarity.
ElectrodeLayout load_electrode_layout(const std::string& path, double gap);

// Membrane displacement relative to rest, m, as a function of (r, theta).
using DisplacementField = std::function<double(double r, double theta)>;

struct PolarityPair {
    double plus = 0.0;
    double minus = 0.0;
};

// Locally-flat capacitance of each polarity:
//   C+- = integral of zeta_+- eps0 / (h0 + dz) r dr dtheta
// over the exact intersection of the electrode sectors with the membrane
// metal mask. Tensor-product midpoint quadrature with Richardson
// extrapolation, refined until successive estimates agree to rel_tol.
// Throws when the membrane touches an electrode (h0 + dz <= 0 anywhere).
PolarityPair capacitance_pm(const ElectrodeLayout& layout, const DisplacementField& dz = {},
                            double rel_tol = 1e-9);

// Series combination (1/C+ + 1/C-)^-1.
double capacitance_series(double c_plus, double c_minus);

// First-order capacitance sensitivity of each polarity to the modal
// amplitude: dC+-/dbeta = -(eps0 / h0^2) int zeta_+- u r dr dtheta, with the
// mode field u(r, theta) = v(r) cos(n (theta - phase)), unit peak.
PolarityPair dc_dbeta(const ElectrodeLayout& layout, const ModeSpec& mode, double phase = 0.0,
                      double rel_tol = 1e-9);

// Lumped coupling data of one mode at the rest position.
struct CouplingPoint {
    double c_plus = 0.0;
    double c_minus = 0.0;
    double c_series = 0.0;
    double dc_dbeta = 0.0;        // series dC/dbeta, F/m
    double d2c_dbeta2 = 0.0;      // series d^2C/dbeta^2, F/m^2
    double effective_area = 0.0;  // sum of |int zeta_+- u r dr dtheta|, m^2
};
CouplingPoint coupling_point(const ElectrodeLayout& layout, const ModeSpec& mode,
                             double phase = 0.0, double rel_tol = 1e-9);

// Electrostatic softening of a capacitively biased oscillator:
//   dOmega = -(d2C/dx2) V^2 / (2 m Omega), rad/s.
double frequency_shift_general(double d2c_dx2, double v_dc, double mass, double omega);

// Lumped parallel-plate form of the bias-induced shift:
//   df = -(eps0 / 8 pi^2) A_eff V^2 / (m_eff d^3 f0), Hz.
double frequency_shift_plate(double a_eff, double m_eff, double gap, double f0, double v_dc);

}  // namespace memtrans
