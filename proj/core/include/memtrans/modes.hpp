#pragma once

#include <optional>
#include <string>
#include <vector>

#include "memtrans/materials.hpp"

namespace memtrans {

// One eigenmode of the clamped circular membrane. n counts nodal diameters,
// m nodal circles (m >= 1). The radial profile is sampled on the solver grid,
// normalized to unit peak, with v(R) = 0 and, for n >= 1, v(0) = 0.
struct ModeSpec {
    int n = 0;
    int m = 1;
    std::optional<double> alpha;  // Bessel zero, analytic (uniform) modes only
    double frequency_hz = 0.0;
    double omega = 0.0;  // 2 pi f, rad/s
    std::vector<double> radius_grid;
    std::vector<double> radial_shape;
    double normalization_c = 1.0;  // amplitude constant: unit peak = c * J_n

    // Radial profile at arbitrary r: exact Bessel evaluation for analytic
    // modes, linear interpolation on the grid otherwise.
    double shape_at(double r) const;
};

enum class ModeProvenance { analytic, fd_loaded };

const char* to_string(ModeProvenance p);

struct ModeTable {
    std::vector<ModeSpec> modes;  // ascending frequency, ties broken by (n, m)
    ModeProvenance provenance = ModeProvenance::analytic;

    const ModeSpec* find(int n, int m) const;
    void validate() const;  // sorted, no duplicate (n, m)
};

// Eigenmodes of the bare uniform membrane: f_{n,m} = alpha_{n,m} c / (2 pi R)
// with c = sqrt(prestress / density); the coating is ignored entirely.
ModeTable uniform_modes(const MembraneStack& stack, int n_max, int m_max, int grid_n = 256);

// Eigenmodes with the annular coating as added areal mass. Solves
//   N (v'' + v'/r - n^2 v / r^2) + mu(r) omega^2 v = 0,  v(R) = 0,
// with N = sigma0 h_base and mu(r) stepped on [R_i, R_e], by a conservative
// second-order finite-volume discretization on a uniform radial grid and a
// Sturm-bisection tridiagonal eigensolver. max_threads > 1 fans the
// independent azimuthal branches out across that many threads.
ModeTable loaded_modes(const MembraneStack& stack, int n_max, int m_max, int grid_n,
                       int max_threads = 1);

// Coating density that makes loaded_modes reproduce target_hz for mode (n, m),
// found by bisection on the monotone frequency-vs-density map. Throws if the
// target lies above the uniform-membrane frequency (mass can only lower it).
double calibrate_coating_density(const MembraneStack& stack, int n, int m, double target_hz,
                                 int grid_n, double rel_tol = 1e-10);

std::string mode_table_csv(const ModeTable& table);

}  // namespace memtrans
