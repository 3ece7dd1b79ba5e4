#pragma once

namespace memtrans {

// One thin film of the membrane stack. All quantities SI.
struct FilmLayer {
    double young_modulus = 0.0;   // Pa
    double poisson_ratio = 0.0;
    double density = 0.0;         // kg/m^3
    double thickness = 0.0;       // m
    double intrinsic_loss = 0.0;  // 1/Q at zero stress
    double prestress = 0.0;       // Pa, 0 for an unstressed film

    // Bending stiffness of the film about its own mid-plane, Y h^3 / (12 (1 - nu^2)).
    double flexural_rigidity() const;

    // Throws std::invalid_argument naming the offending field.
    void validate(const char* role = "layer") const;
};

// Stressed base membrane (SiN) with an annular metal coating (TiN).
// The coating covers coating_inner <= r <= coating_outer.
struct MembraneStack {
    FilmLayer base;
    FilmLayer coating;
    double radius = 0.0;         // membrane radius R, m
    double coating_inner = 0.0;  // R_i, m
    double coating_outer = 0.0;  // R_e, m

    double tension() const { return base.prestress * base.thickness; }  // N/m
    double areal_density_base() const { return base.density * base.thickness; }
    double areal_density_coating() const { return coating.density * coating.thickness; }
    double wave_speed() const;  // sqrt(prestress / density) of the base film, m/s

    void validate() const;
};

}  // namespace memtrans
