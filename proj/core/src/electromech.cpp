#include "memtrans/electromech.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "memtrans/constants.hpp"
#include "memtrans/csv.hpp"

namespace memtrans {

namespace {

struct Interval {
    double lo, hi;
};

bool intervals_overlap(double a0, double a1, double b0, double b1) {
    return std::max(a0, b0) < std::min(a1, b1) - 1e-15;
}

// [a, b] minus the optional notch, as up to two subintervals.
std::vector<Interval> subtract_notch(double a, double b,
                                     const std::optional<std::pair<double, double>>& notch) {
    if (!notch) return {{a, b}};
    std::vector<Interval> out;
    if (a < notch->first) out.push_back({a, std::min(b, notch->first)});
    if (notch->second < b) out.push_back({std::max(a, notch->second), b});
    return out;
}

// Midpoint tensor-product quadrature of f(r, theta) r over one smooth patch,
// with Richardson extrapolation over simultaneous (r, theta) refinement.
double integrate_patch(double r0, double r1, double t0, double t1,
                       const std::function<double(double, double)>& f, double rel_tol) {
    if (r1 <= r0 || t1 <= t0) return 0.0;

    auto midpoint = [&](int nr, int nt) {
        const double hr = (r1 - r0) / nr;
        const double ht = (t1 - t0) / nt;
        double sum = 0.0;
        for (int i = 0; i < nr; ++i) {
            const double r = r0 + (i + 0.5) * hr;
            double row = 0.0;
            for (int j = 0; j < nt; ++j) row += f(r, t0 + (j + 0.5) * ht);
            sum += row * r;
        }
        return sum * hr * ht;
    };

    constexpr int max_levels = 9;
    double table[max_levels][max_levels];
    int nr = 2, nt = 2;
    table[0][0] = midpoint(nr, nt);
    for (int k = 1; k < max_levels; ++k) {
        nr *= 2;
        nt *= 2;
        table[k][0] = midpoint(nr, nt);
        double factor = 4.0;
        for (int j = 1; j <= k; ++j) {
            table[k][j] = table[k][j - 1] + (table[k][j - 1] - table[k - 1][j - 1]) / (factor - 1.0);
            factor *= 4.0;
        }
        const double cur = table[k][k];
        const double prev = table[k - 1][k - 1];
        if (k >= 2 && std::fabs(cur - prev) <= rel_tol * std::max(std::fabs(cur), 1e-300))
            return cur;
    }
    throw std::runtime_error("capacitance quadrature did not converge to the requested tolerance");
}

// Sum of the patch integrals of one polarity's sectors clipped to the mask.
double integrate_polarity(const ElectrodeLayout& layout, int polarity,
                          const std::function<double(double, double)>& f, double rel_tol) {
    double total = 0.0;
    for (const auto& seg : layout.segments) {
        if (seg.polarity != polarity) continue;
        const double r0 = std::max(seg.r_in, layout.mask.r_in);
        const double r1 = std::min(seg.r_out, layout.mask.r_out);
        if (r1 <= r0) continue;
        for (const auto& iv : subtract_notch(seg.theta_start, seg.theta_end, layout.mask.notch)) {
            if (iv.hi <= iv.lo) continue;
            total += integrate_patch(r0, r1, iv.lo, iv.hi, f, rel_tol);
        }
    }
    return total;
}

std::function<double(double, double)> mode_field(const ModeSpec& mode, double phase) {
    const int n = mode.n;
    return [&mode, n, phase](double r, double theta) {
        const double angular = n == 0 ? 1.0 : std::cos(n * (theta - phase));
        return mode.shape_at(r) * angular;
    };
}

}  // namespace

void ElectrodeLayout::validate() const {
    if (!(gap > 0.0)) throw std::invalid_argument("electrode gap must be positive");
    if (!(mask.r_in >= 0.0) || !(mask.r_out > mask.r_in))
        throw std::invalid_argument("electrode mask radii must satisfy 0 <= r_in < r_out");
    for (const auto& s : segments) {
        if (!(s.r_in >= 0.0) || !(s.r_out > s.r_in))
            throw std::invalid_argument("sector radii must satisfy 0 <= r_in < r_out");
        if (!(s.theta_start >= 0.0) || !(s.theta_end > s.theta_start) ||
            !(s.theta_end <= 2.0 * pi + 1e-12))
            throw std::invalid_argument("sector angles must satisfy 0 <= start < end <= 2 pi");
        if (s.polarity != 1 && s.polarity != -1)
            throw std::invalid_argument("sector polarity must be +1 or -1");
    }
    for (size_t i = 0; i < segments.size(); ++i) {
        for (size_t j = i + 1; j < segments.size(); ++j) {
            const auto& a = segments[i];
            const auto& b = segments[j];
            if (intervals_overlap(a.r_in, a.r_out, b.r_in, b.r_out) &&
                intervals_overlap(a.theta_start, a.theta_end, b.theta_start, b.theta_end))
                throw std::invalid_argument("electrode sectors overlap");
        }
    }
}

ElectrodeLayout eight_segment_layout(double r_in, double r_out, double gap) {
    ElectrodeLayout layout;
    layout.gap = gap;
    layout.mask.r_in = r_in;
    layout.mask.r_out = r_out;
    for (int k = 0; k < 8; ++k) {
        AnnularSector s;
        s.r_in = r_in;
        s.r_out = r_out;
        s.theta_start = k * pi / 4.0;
        s.theta_end = (k + 1) * pi / 4.0;
        s.polarity = (k % 2 == 0) ? +1 : -1;
        layout.segments.push_back(s);
    }
    layout.validate();
    return layout;
}

ElectrodeLayout load_electrode_layout(const std::string& path, double gap) {
    ElectrodeLayout layout;
    layout.gap = gap;
    double r_min = 1e300, r_max = 0.0;
    for (const auto& row : read_csv_rows(path, 5)) {
        AnnularSector s;
        s.r_in = row[0];
        s.r_out = row[1];
        s.theta_start = row[2];
        s.theta_end = row[3];
        s.polarity = row[4] < 0.0 ? -1 : +1;
        r_min = std::min(r_min, s.r_in);
        r_max = std::max(r_max, s.r_out);
        layout.segments.push_back(s);
    }
    if (layout.segments.empty())
        throw std::runtime_error("electrode layout file has no sectors: " + path);
    layout.mask.r_in = r_min;
    layout.mask.r_out = r_max;
    layout.validate();
    return layout;
}

PolarityPair capacitance_pm(const ElectrodeLayout& layout, const DisplacementField& dz,
                            double rel_tol) {
    layout.validate();
    const double h0 = layout.gap;
    auto integrand = [&dz, h0](double r, double theta) {
        double local = h0;
        if (dz) {
            const double z = dz(r, theta);
            if (!(std::fabs(z) < h0))
                throw std::invalid_argument(
                    "capacitance_pm: membrane displacement reaches the electrode gap (contact)");
            local += z;
        }
        return epsilon0 / local;
    };
    PolarityPair c;
    c.plus = integrate_polarity(layout, +1, integrand, rel_tol);
    c.minus = integrate_polarity(layout, -1, integrand, rel_tol);
    return c;
}

double capacitance_series(double c_plus, double c_minus) {
    if (!(c_plus > 0.0) || !(c_minus > 0.0))
        throw std::invalid_argument("capacitance_series: both capacitances must be positive");
    return c_plus * c_minus / (c_plus + c_minus);
}

PolarityPair dc_dbeta(const ElectrodeLayout& layout, const ModeSpec& mode, double phase,
                      double rel_tol) {
    layout.validate();
    const double h0 = layout.gap;
    auto field = mode_field(mode, phase);
    auto integrand = [&field, h0](double r, double theta) {
        return -epsilon0 / (h0 * h0) * field(r, theta);
    };
    PolarityPair s;
    s.plus = integrate_polarity(layout, +1, integrand, rel_tol);
    s.minus = integrate_polarity(layout, -1, integrand, rel_tol);
    return s;
}

CouplingPoint coupling_point(const ElectrodeLayout& layout, const ModeSpec& mode, double phase,
                             double rel_tol) {
    layout.validate();
    const double h0 = layout.gap;
    auto field = mode_field(mode, phase);

    auto flat = [h0](double, double) { return epsilon0 / h0; };
    auto first = [&field, h0](double r, double theta) {
        return -epsilon0 / (h0 * h0) * field(r, theta);
    };
    auto second = [&field, h0](double r, double theta) {
        const double u = field(r, theta);
        return 2.0 * epsilon0 / (h0 * h0 * h0) * u * u;
    };
    auto overlap = [&field](double r, double theta) { return field(r, theta); };

    CouplingPoint cp;
    cp.c_plus = integrate_polarity(layout, +1, flat, rel_tol);
    cp.c_minus = integrate_polarity(layout, -1, flat, rel_tol);
    cp.c_series = capacitance_series(cp.c_plus, cp.c_minus);

    const double fp = integrate_polarity(layout, +1, first, rel_tol);
    const double gp = integrate_polarity(layout, -1, first, rel_tol);
    const double fpp = integrate_polarity(layout, +1, second, rel_tol);
    const double gpp = integrate_polarity(layout, -1, second, rel_tol);

    // Series derivatives via the quotient rule on C = fg / (f + g).
    const double f = cp.c_plus, g = cp.c_minus;
    const double s = f + g, s1 = fp + gp, s2 = fpp + gpp;
    const double p = f * g, p1 = fp * g + f * gp, p2 = fpp * g + 2.0 * fp * gp + f * gpp;
    cp.dc_dbeta = (p1 * s - p * s1) / (s * s);
    cp.d2c_dbeta2 = (p2 * s - p * s2) / (s * s) - 2.0 * s1 * (p1 * s - p * s1) / (s * s * s);

    cp.effective_area = std::fabs(integrate_polarity(layout, +1, overlap, rel_tol)) +
                        std::fabs(integrate_polarity(layout, -1, overlap, rel_tol));
    return cp;
}

double frequency_shift_general(double d2c_dx2, double v_dc, double mass, double omega) {
    if (!(mass > 0.0)) throw std::invalid_argument("frequency_shift_general: mass must be positive");
    if (!(omega > 0.0))
        throw std::invalid_argument("frequency_shift_general: omega must be positive");
    return -d2c_dx2 * v_dc * v_dc / (2.0 * mass * omega);
}

double frequency_shift_plate(double a_eff, double m_eff, double gap, double f0, double v_dc) {
    if (!(a_eff > 0.0) || !(m_eff > 0.0) || !(gap > 0.0) || !(f0 > 0.0))
        throw std::invalid_argument(
            "frequency_shift_plate: area, mass, gap and f0 must all be positive");
    return -epsilon0 / (8.0 * pi * pi) * a_eff * v_dc * v_dc / (m_eff * gap * gap * gap * f0);
}

}  // namespace memtrans
