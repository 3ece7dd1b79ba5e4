#include "memtrans/dissipation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "memtrans/bessel.hpp"
#include "memtrans/constants.hpp"
#include "memtrans/csv.hpp"

namespace memtrans {

namespace {

// Composite Simpson on [a, b], doubling panels until two successive estimates
// agree to rel_tol.
double simpson_adaptive(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_panels, const char* what) {
    if (b <= a) return 0.0;
    int n = 64;
    auto simpson = [&](int panels) {
        const double h = (b - a) / panels;
        double s = f(a) + f(b);
        for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
        return s * h / 3.0;
    };
    double prev = simpson(n);
    while (n <= max_panels) {
        n *= 2;
        const double cur = simpson(n);
        if (std::fabs(cur - prev) <= rel_tol * std::max(std::fabs(cur), 1e-300)) return cur;
        prev = cur;
    }
    throw std::runtime_error(std::string("energies_numeric: ") + what +
                             " quadrature did not reach the requested tolerance; "
                             "refine the shape sampling or relax rel_tol");
}

}  // namespace

double layer_bending_moment(double young_modulus, double poisson_ratio, double z_lo,
                            double z_hi) {
    const double cube = (z_hi * z_hi * z_hi - z_lo * z_lo * z_lo) / 3.0;
    return young_modulus / (1.0 - poisson_ratio * poisson_ratio) * cube;
}

double dilution_parameter(const FilmLayer& layer, double radius, double sigma0) {
    if (!(sigma0 > 0.0)) throw std::invalid_argument("dilution_parameter: sigma0 must be positive");
    if (!(radius > 0.0)) throw std::invalid_argument("dilution_parameter: radius must be positive");
    return layer.thickness / radius *
           std::sqrt(layer.young_modulus /
                     (12.0 * (1.0 - layer.poisson_ratio * layer.poisson_ratio) * sigma0));
}

double coating_dilution(const MembraneStack& stack) {
    const double z_lo = 0.5 * stack.base.thickness;
    const double z_hi = z_lo + stack.coating.thickness;
    const double d_coat =
        layer_bending_moment(stack.coating.young_modulus, stack.coating.poisson_ratio, z_lo, z_hi);
    const double denom = stack.base.prestress * stack.base.thickness * stack.radius * stack.radius;
    return std::sqrt(d_coat / denom);
}

double coverage_modulation(double rho, double radius, int m) {
    if (!(rho >= 0.0) || !(rho <= radius))
        throw std::invalid_argument("coverage_modulation: rho must lie in [0, R]");
    const double alpha = bessel_zero(0, m);
    const double x = alpha * rho / radius;
    const double j0 = bessel_j(0, x);
    const double j1 = bessel_j(1, x);
    const double j1_alpha = bessel_j(1, alpha);
    return (rho * rho) / (radius * radius) * (j0 * j0 + j1 * j1) / (j1_alpha * j1_alpha);
}

double coverage_modulation(const MembraneStack& stack, int m) {
    return coverage_modulation(stack.coating_inner, stack.radius, m);
}

RadialShape axisymmetric_bessel_shape(double alpha, double radius) {
    const double k = alpha / radius;
    RadialShape shape;
    shape.u = [k](double r) { return bessel_j(0, k * r); };
    shape.du = [k](double r) { return -k * bessel_j(1, k * r); };
    shape.d2u = [k](double r) {
        const double x = k * r;
        if (x < 1e-8) return -0.5 * k * k;  // J0'' at the origin
        return -k * k * (bessel_j(0, x) - bessel_j(1, x) / x);
    };
    return shape;
}

EnergyBreakdown energies_closed(const MembraneStack& stack, int m, double amplitude) {
    stack.validate();
    if (m < 1) throw std::invalid_argument("energies_closed: radial index must be >= 1");

    const double radius = stack.radius;
    const double alpha = bessel_zero(0, m);
    const double wavenumber = alpha / radius;  // nondimensional frequency / R
    const double j1_alpha = bessel_j(1, alpha);
    const double c2 = amplitude * amplitude;
    const double k4 = wavenumber * wavenumber * wavenumber * wavenumber;

    const double d_base = stack.base.flexural_rigidity();
    const double z_lo = 0.5 * stack.base.thickness;
    const double d_coat = layer_bending_moment(stack.coating.young_modulus,
                                               stack.coating.poisson_ratio, z_lo,
                                               z_lo + stack.coating.thickness);

    EnergyBreakdown e;
    e.amplitude = amplitude;
    e.w_bend_base = pi * radius * radius * k4 * c2 * d_base * j1_alpha * j1_alpha;
    const double bracket = coverage_modulation(stack.coating_outer, radius, m) -
                           coverage_modulation(stack.coating_inner, radius, m);
    e.w_bend_coat = pi * radius * radius * k4 * c2 * d_coat * j1_alpha * j1_alpha * bracket;
    e.w_tensile = pi * stack.base.thickness * stack.base.prestress * alpha * alpha * c2 *
                  j1_alpha * j1_alpha / 2.0;
    return e;
}

EnergyBreakdown energies_numeric(const MembraneStack& stack, const RadialShape& shape,
                                 double amplitude, double rel_tol, int max_panels) {
    stack.validate();
    if (!(rel_tol > 0.0)) throw std::invalid_argument("energies_numeric: rel_tol must be positive");

    auto curvature_sq_r = [&shape](double r) {
        if (r <= 0.0) return 0.0;  // integrand carries a factor r
        const double c = shape.d2u(r) + shape.du(r) / r;
        return c * c * r;
    };
    auto slope_sq_r = [&shape](double r) {
        const double s = shape.du(r);
        return s * s * r;
    };

    const double radius = stack.radius;
    const double curv_full =
        simpson_adaptive(curvature_sq_r, 0.0, radius, rel_tol, max_panels, "base curvature");
    const double curv_coat =
        simpson_adaptive(curvature_sq_r, stack.coating_inner, stack.coating_outer, rel_tol,
                         max_panels, "coating curvature");
    const double slope_full =
        simpson_adaptive(slope_sq_r, 0.0, radius, rel_tol, max_panels, "tensile slope");

    const double c2 = amplitude * amplitude;
    const double d_base = stack.base.flexural_rigidity();
    const double z_lo = 0.5 * stack.base.thickness;
    const double d_coat = layer_bending_moment(stack.coating.young_modulus,
                                               stack.coating.poisson_ratio, z_lo,
                                               z_lo + stack.coating.thickness);

    EnergyBreakdown e;
    e.amplitude = amplitude;
    e.w_bend_base = 2.0 * pi * d_base * curv_full * c2;
    e.w_bend_coat = 2.0 * pi * d_coat * curv_coat * c2;
    e.w_tensile = pi * stack.base.thickness * stack.base.prestress * slope_full * c2;
    return e;
}

std::optional<double> q_bilayer_from_energies(const EnergyBreakdown& energies, double loss_base,
                                              double loss_coat) {
    const double dissipated = loss_base * energies.w_bend_base + loss_coat * energies.w_bend_coat;
    if (dissipated <= 0.0) return std::nullopt;
    return 2.0 * energies.w_tensile / dissipated;
}

namespace {

DissipationBudget make_budget(const MembraneStack& stack, int m) {
    stack.validate();
    if (m < 1) throw std::invalid_argument("dissipation budget: radial index must be >= 1");

    const double alpha = bessel_zero(0, m);
    const double alpha_sq = alpha * alpha;

    DissipationBudget b;
    b.n = 0;
    b.m = m;
    b.lambda_base = dilution_parameter(stack.base, stack.radius, stack.base.prestress);
    b.lambda_coat = coating_dilution(stack);
    b.coverage_f = coverage_modulation(stack.coating_inner, stack.radius, m);
    const double bracket =
        coverage_modulation(stack.coating_outer, stack.radius, m) - b.coverage_f;

    b.edge_term = 2.0 * b.lambda_base * stack.base.intrinsic_loss;
    b.dist_base_term = alpha_sq * b.lambda_base * b.lambda_base * stack.base.intrinsic_loss;
    b.dist_coat_term =
        alpha_sq * b.lambda_coat * b.lambda_coat * bracket * stack.coating.intrinsic_loss;

    const double dist = b.dist_base_term + b.dist_coat_term;
    if (dist > 0.0) b.q_bilayer = 1.0 / dist;
    const double total = b.edge_term + dist;
    if (total > 0.0) b.q_total = 1.0 / total;
    return b;
}

}  // namespace

std::optional<double> q_bilayer(const MembraneStack& stack, int m) {
    return make_budget(stack, m).q_bilayer;
}

DissipationBudget q_total(const MembraneStack& stack, int m) {
    return make_budget(stack, m);
}

std::string budget_csv(const std::vector<DissipationBudget>& budgets) {
    std::ostringstream out;
    out << "n,m,lambda_base,lambda_coat,f_Ri,edge,dist_base,dist_coat,Q_bilayer,Q_total\n";
    for (const auto& b : budgets) {
        out << b.n << "," << b.m << "," << format_sci(b.lambda_base) << ","
            << format_sci(b.lambda_coat) << "," << format_sci(b.coverage_f) << ","
            << format_sci(b.edge_term) << "," << format_sci(b.dist_base_term) << ","
            << format_sci(b.dist_coat_term) << ","
            << (b.q_bilayer ? format_sci(*b.q_bilayer) : "unbounded") << ","
            << (b.q_total ? format_sci(*b.q_total) : "unbounded") << "\n";
    }
    return out.str();
}

}  // namespace memtrans
