#include "memtrans/materials.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace memtrans {

double FilmLayer::flexural_rigidity() const {
    return young_modulus * thickness * thickness * thickness /
           (12.0 * (1.0 - poisson_ratio * poisson_ratio));
}

void FilmLayer::validate(const char* role) const {
    auto fail = [role](const std::string& field, const std::string& what) {
        throw std::invalid_argument(std::string(role) + "." + field + " " + what);
    };
    if (!(young_modulus > 0.0)) fail("young_modulus", "must be positive");
    if (!(poisson_ratio >= 0.0 && poisson_ratio < 0.5)) fail("poisson_ratio", "must be in [0, 0.5)");
    if (!(density >= 0.0)) fail("density", "must be non-negative");
    if (!(thickness >= 0.0)) fail("thickness", "must be non-negative");
    if (!(intrinsic_loss >= 0.0)) fail("intrinsic_loss", "must be non-negative");
    if (!(prestress >= 0.0)) fail("prestress", "must be non-negative");
    if (!std::isfinite(young_modulus) || !std::isfinite(thickness) || !std::isfinite(prestress))
        fail("", "contains a non-finite value");
}

double MembraneStack::wave_speed() const {
    return std::sqrt(base.prestress / base.density);
}

void MembraneStack::validate() const {
    base.validate("base");
    coating.validate("coating");
    if (!(base.thickness > 0.0))
        throw std::invalid_argument("base.thickness must be positive");
    if (!(base.prestress > 0.0))
        throw std::invalid_argument("base.prestress must be positive (stressed membrane)");
    if (!(base.density > 0.0))
        throw std::invalid_argument("base.density must be positive");
    if (!(radius > 0.0))
        throw std::invalid_argument("radius must be positive");
    if (!(coating_inner >= 0.0))
        throw std::invalid_argument("coating_inner must be non-negative");
    if (!(coating_inner <= coating_outer))
        throw std::invalid_argument("coating_inner must not exceed coating_outer");
    if (!(coating_outer <= radius))
        throw std::invalid_argument("coating_outer must not exceed radius");
}

}  // namespace memtrans
