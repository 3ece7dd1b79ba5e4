#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "memtrans/materials.hpp"

namespace memtrans {

// Bending and tensile energy moments of an axisymmetric mode (0, m).
// The bending entries integrate the full curvature moment
//   Y/(1-nu^2) * int z^2 dz * 2 pi * int (u'' + u'/r)^2 r dr
// over each layer's actual z-bounds; the stored elastic energy is half of
// that. w_tensile carries the conventional 1/2, so it is the stored value.
struct EnergyBreakdown {
    double w_bend_base = 0.0;  // J (curvature moment of the base film)
    double w_bend_coat = 0.0;  // J (curvature moment of the coating)
    double w_tensile = 0.0;    // J (stored tensile energy of the base film)
    double amplitude = 0.0;    // mode amplitude the energies were evaluated at
};

// Per-mode loss decomposition. Loss terms are the additive 1/Q contributions;
// unbounded Q (all intrinsic losses zero) is reported as nullopt rather than
// infinity.
struct DissipationBudget {
    int n = 0;
    int m = 1;
    double lambda_base = 0.0;
    double lambda_coat = 0.0;
    double coverage_f = 0.0;      // f(R_i), in [0, 1]
    double edge_term = 0.0;       // 2 lambda_base / Q_base
    double dist_base_term = 0.0;  // alpha^2 lambda_base^2 / Q_base
    double dist_coat_term = 0.0;  // alpha^2 lambda_coat^2 [f(R_e) - f(R_i)] / Q_coat
    std::optional<double> q_bilayer;
    std::optional<double> q_total;
};

// Bending moment Y/(1-nu^2) * int_{z_lo}^{z_hi} z^2 dz of a layer whose
// z-bounds are measured from the stack mid-plane. Symmetric bounds
// (-h/2, h/2) reproduce the film's flexural rigidity.
double layer_bending_moment(double young_modulus, double poisson_ratio, double z_lo, double z_hi);

// Dissipation-dilution parameter (h/R) sqrt(Y / (12 (1 - nu^2) sigma0)).
// lambda^2 equals D / (sigma0 h R^2) with D the mid-plane flexural rigidity.
double dilution_parameter(const FilmLayer& layer, double radius, double sigma0);

// Dilution parameter of the offset coating: lambda^2 = D_coat / (sigma0 h_base R^2)
// with D_coat integrated over [h_base/2, h_base/2 + h_coat].
double coating_dilution(const MembraneStack& stack);

// Coverage factor f(rho) for mode (0, m):
//   (rho^2/R^2) [J0(a rho/R)^2 + J1(a rho/R)^2] / J1(a)^2,
// monotone from f(0) = 0 to f(R) = 1. An annulus [R_i, R_e] carries the
// fraction f(R_e) - f(R_i) of the distributed coating loss weight.
double coverage_modulation(double rho, double radius, int m);
double coverage_modulation(const MembraneStack& stack, int m);

// Axisymmetric radial profile with analytic derivatives for the quadrature
// path. u(r) = J0(alpha r / R) (unit amplitude at the center).
struct RadialShape {
    std::function<double(double)> u;
    std::function<double(double)> du;
    std::function<double(double)> d2u;
};
RadialShape axisymmetric_bessel_shape(double alpha, double radius);

// Closed-form energy moments of mode (0, m) at the given amplitude.
EnergyBreakdown energies_closed(const MembraneStack& stack, int m, double amplitude);

// Same energies by composite-Simpson quadrature of the curvature and slope
// integrands, refined by panel doubling until successive estimates agree to
// rel_tol. Throws if the refinement limit is reached first.
EnergyBreakdown energies_numeric(const MembraneStack& stack, const RadialShape& shape,
                                 double amplitude, double rel_tol = 1e-10,
                                 int max_panels = 1 << 22);

// Q from the energy-ratio definition: 2 pi W_tensile over the per-cycle
// bending dissipation of both films. The bending moments carry twice the
// stored energy, hence the factor 2. nullopt when both losses vanish.
std::optional<double> q_bilayer_from_energies(const EnergyBreakdown& energies, double loss_base,
                                              double loss_coat);

// Distributed-loss (bilayer) Q of mode (0, m) from the closed-form budget.
std::optional<double> q_bilayer(const MembraneStack& stack, int m);

// Full budget including the clamping-edge loss of the base film.
DissipationBudget q_total(const MembraneStack& stack, int m);

std::string budget_csv(const std::vector<DissipationBudget>& budgets);

}  // namespace memtrans
