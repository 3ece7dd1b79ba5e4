#include "memtrans/modes.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

#include "memtrans/bessel.hpp"
#include "memtrans/constants.hpp"
#include "memtrans/csv.hpp"
#include "memtrans/tridiag.hpp"

namespace memtrans {

namespace {

// Exact integral of r dr over [a, b] intersected with [lo, hi].
double r_moment(double a, double b, double lo, double hi) {
    const double l = std::max(a, lo);
    const double u = std::min(b, hi);
    if (u <= l) return 0.0;
    return 0.5 * (u * u - l * l);
}

struct RadialBranch {
    std::vector<double> values;                // omega^2, ascending
    std::vector<std::vector<double>> vectors;  // v on nodes 0..N inclusive
};

// Finite-volume discretization of the radial operator for azimuthal index n.
// Unknowns are nodes i0..N-1 (i0 = 0 for n = 0, else 1); v(R) = 0 is
// eliminated. Multiplying each cell equation by r keeps the stencil symmetric,
// and the diagonal mass matrix reduces the generalized problem to a standard
// symmetric tridiagonal one.
RadialBranch solve_radial_branch(const MembraneStack& stack, int n, int m_max, int grid_n) {
    const double radius = stack.radius;
    const double h = radius / grid_n;
    const double tension = stack.tension();
    const double mu_base = stack.areal_density_base();
    const double mu_coat = stack.areal_density_coating();

    const int i0 = n == 0 ? 0 : 1;
    const int size = grid_n - i0;
    if (m_max > size)
        throw std::invalid_argument("loaded_modes: grid too coarse for requested radial index");

    std::vector<double> stiff_diag(size), stiff_off(size - 1), mass(size);
    for (int idx = 0; idx < size; ++idx) {
        const int i = idx + i0;
        const double r = i * h;
        const double r_lo = std::max(0.0, (i - 0.5) * h);
        const double r_hi = std::min(radius, (i + 0.5) * h);
        double a = 0.0;
        if (i == 0) {
            a = tension * (0.5 * h) / h;  // zero flux through r = 0
        } else {
            a = tension * ((i - 0.5) * h + (i + 0.5) * h) / h + n * n * tension * h / r;
        }
        stiff_diag[idx] = a;
        if (idx + 1 < size) stiff_off[idx] = -tension * (i + 0.5) * h / h;

        double cell_mass = mu_base * r_moment(r_lo, r_hi, 0.0, radius);
        cell_mass += mu_coat * r_moment(r_lo, r_hi, stack.coating_inner, stack.coating_outer);
        mass[idx] = cell_mass;
    }

    // Congruence transform with the diagonal mass matrix.
    std::vector<double> inv_sqrt_mass(size);
    for (int i = 0; i < size; ++i) inv_sqrt_mass[i] = 1.0 / std::sqrt(mass[i]);
    std::vector<double> d(size), e(size - 1);
    for (int i = 0; i < size; ++i) d[i] = stiff_diag[i] * inv_sqrt_mass[i] * inv_sqrt_mass[i];
    for (int i = 0; i + 1 < size; ++i)
        e[i] = stiff_off[i] * inv_sqrt_mass[i] * inv_sqrt_mass[i + 1];

    const auto eig = tridiag_lowest_eigenpairs(d, e, m_max);

    RadialBranch branch;
    branch.values = eig.values;
    for (const auto& w : eig.vectors) {
        std::vector<double> v(grid_n + 1, 0.0);
        for (int i = 0; i < size; ++i) v[i + i0] = w[i] * inv_sqrt_mass[i];
        branch.vectors.push_back(std::move(v));
    }
    return branch;
}

void normalize_unit_peak(std::vector<double>& v) {
    double peak = 0.0;
    size_t at = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (std::fabs(v[i]) > peak) {
            peak = std::fabs(v[i]);
            at = i;
        }
    }
    if (peak == 0.0) return;
    const double s = v[at] > 0.0 ? 1.0 / peak : -1.0 / peak;
    for (double& x : v) x *= s;
}

void sort_and_check(ModeTable& table) {
    std::sort(table.modes.begin(), table.modes.end(), [](const ModeSpec& a, const ModeSpec& b) {
        if (a.frequency_hz != b.frequency_hz) return a.frequency_hz < b.frequency_hz;
        if (a.n != b.n) return a.n < b.n;
        return a.m < b.m;
    });
    table.validate();
}

}  // namespace

double ModeSpec::shape_at(double r) const {
    const double radius = radius_grid.empty() ? 0.0 : radius_grid.back();
    if (r <= 0.0) return radial_shape.empty() ? 0.0 : radial_shape.front();
    if (r >= radius) return 0.0;
    if (alpha) return normalization_c * bessel_j(n, *alpha * r / radius);
    const double x = r / radius * (radius_grid.size() - 1);
    const size_t i = std::min(static_cast<size_t>(x), radius_grid.size() - 2);
    const double t = x - static_cast<double>(i);
    return (1.0 - t) * radial_shape[i] + t * radial_shape[i + 1];
}

const char* to_string(ModeProvenance p) {
    return p == ModeProvenance::analytic ? "analytic" : "fd-loaded";
}

const ModeSpec* ModeTable::find(int n, int m) const {
    for (const auto& mode : modes)
        if (mode.n == n && mode.m == m) return &mode;
    return nullptr;
}

void ModeTable::validate() const {
    for (size_t i = 1; i < modes.size(); ++i) {
        if (modes[i].frequency_hz < modes[i - 1].frequency_hz)
            throw std::logic_error("ModeTable: not sorted by frequency");
    }
    for (size_t i = 0; i < modes.size(); ++i)
        for (size_t j = i + 1; j < modes.size(); ++j)
            if (modes[i].n == modes[j].n && modes[i].m == modes[j].m)
                throw std::logic_error("ModeTable: duplicate mode index");
}

ModeTable uniform_modes(const MembraneStack& stack, int n_max, int m_max, int grid_n) {
    stack.validate();
    if (n_max < 0 || m_max < 1) throw std::invalid_argument("uniform_modes: bad mode range");
    if (grid_n < 16) throw std::invalid_argument("uniform_modes: grid_n must be >= 16");

    const double speed = stack.wave_speed();
    ModeTable table;
    table.provenance = ModeProvenance::analytic;
    for (int n = 0; n <= n_max; ++n) {
        for (int m = 1; m <= m_max; ++m) {
            ModeSpec mode;
            mode.n = n;
            mode.m = m;
            const double alpha = bessel_zero(n, m);
            mode.alpha = alpha;
            mode.frequency_hz = alpha * speed / (2.0 * pi * stack.radius);
            mode.omega = 2.0 * pi * mode.frequency_hz;

            mode.radius_grid.resize(grid_n + 1);
            mode.radial_shape.resize(grid_n + 1);
            for (int i = 0; i <= grid_n; ++i) {
                const double r = stack.radius * i / grid_n;
                mode.radius_grid[i] = r;
                mode.radial_shape[i] = bessel_j(n, alpha * r / stack.radius);
            }
            // Unit peak: J_n attains its maximum at the first interior
            // extremum (r = 0 for n = 0).
            double peak = 0.0;
            for (double v : mode.radial_shape) peak = std::max(peak, std::fabs(v));
            mode.normalization_c = 1.0 / peak;
            for (double& v : mode.radial_shape) v *= mode.normalization_c;
            mode.radial_shape.back() = 0.0;

            table.modes.push_back(std::move(mode));
        }
    }
    sort_and_check(table);
    return table;
}

ModeTable loaded_modes(const MembraneStack& stack, int n_max, int m_max, int grid_n,
                       int max_threads) {
    stack.validate();
    if (n_max < 0 || m_max < 1) throw std::invalid_argument("loaded_modes: bad mode range");
    if (grid_n < 16) throw std::invalid_argument("loaded_modes: grid_n must be >= 16");

    std::vector<RadialBranch> branches(n_max + 1);
    const int workers = std::max(1, max_threads);
    if (workers == 1 || n_max == 0) {
        for (int n = 0; n <= n_max; ++n) branches[n] = solve_radial_branch(stack, n, m_max, grid_n);
    } else {
        std::vector<std::future<RadialBranch>> futures;
        futures.reserve(n_max + 1);
        for (int n = 0; n <= n_max; ++n)
            futures.push_back(std::async(std::launch::async, [&stack, n, m_max, grid_n] {
                return solve_radial_branch(stack, n, m_max, grid_n);
            }));
        for (int n = 0; n <= n_max; ++n) branches[n] = futures[n].get();
    }

    ModeTable table;
    table.provenance = ModeProvenance::fd_loaded;
    for (int n = 0; n <= n_max; ++n) {
        for (int m = 1; m <= m_max; ++m) {
            const double omega_sq = branches[n].values[m - 1];
            if (!(omega_sq > 0.0) || !std::isfinite(omega_sq))
                throw std::runtime_error("loaded_modes: eigensolver failed for mode (" +
                                         std::to_string(n) + "," + std::to_string(m) +
                                         ") at grid_n=" + std::to_string(grid_n));
            ModeSpec mode;
            mode.n = n;
            mode.m = m;
            mode.omega = std::sqrt(omega_sq);
            mode.frequency_hz = mode.omega / (2.0 * pi);
            mode.radius_grid.resize(grid_n + 1);
            for (int i = 0; i <= grid_n; ++i) mode.radius_grid[i] = stack.radius * i / grid_n;
            mode.radial_shape = branches[n].vectors[m - 1];
            normalize_unit_peak(mode.radial_shape);
            table.modes.push_back(std::move(mode));
        }
    }
    sort_and_check(table);
    return table;
}

double calibrate_coating_density(const MembraneStack& stack, int n, int m, double target_hz,
                                 int grid_n, double rel_tol) {
    stack.validate();
    if (!(target_hz > 0.0)) throw std::invalid_argument("calibrate: target must be positive");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("calibrate: rel_tol must be positive");

    auto freq_at = [&](double density) {
        MembraneStack trial = stack;
        trial.coating.density = density;
        const auto branch = solve_radial_branch(trial, n, m, grid_n);
        return std::sqrt(branch.values[m - 1]) / (2.0 * pi);
    };

    const double f_bare = freq_at(0.0);
    if (target_hz > f_bare * (1.0 + 1e-12))
        throw std::invalid_argument(
            "calibrate: target frequency exceeds the uncoated-membrane frequency (" +
            std::to_string(f_bare) + " Hz); added mass can only lower it");
    if (std::fabs(target_hz - f_bare) <= rel_tol * f_bare) return 0.0;

    double lo = 0.0, hi = 12000.0;
    while (freq_at(hi) > target_hz) {
        hi *= 2.0;
        if (hi > 1e8)
            throw std::invalid_argument("calibrate: target frequency unreachable by mass loading");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = freq_at(mid);
        if (std::fabs(f - target_hz) <= rel_tol * target_hz) return mid;
        if (f > target_hz)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-9 * hi) break;
    }
    return 0.5 * (lo + hi);
}

std::string mode_table_csv(const ModeTable& table) {
    std::ostringstream out;
    out << "n,m,frequency_hz,provenance\n";
    for (const auto& mode : table.modes)
        out << mode.n << "," << mode.m << "," << format_sci(mode.frequency_hz) << ","
            << to_string(table.provenance) << "\n";
    return out.str();
}

}  // namespace memtrans
