#pragma once

#include <optional>
#include <string>

#include "memtrans/electromech.hpp"
#include "memtrans/materials.hpp"

namespace memtrans {

struct SolverSettings {
    int grid_n = 2000;
    double rel_tol = 1e-9;

    void validate() const;  // grid_n >= 16, rel_tol > 0
};

struct ModeRange {
    int n_max = 3;
    int m_max = 5;
};

// Everything a run needs: the stack, solver settings, the mode range to
// evaluate and (optionally) the coupling-electrode layout. Immutable after
// construction; safe to share across workers.
struct DeviceConfig {
    MembraneStack stack;
    SolverSettings solver;
    ModeRange modes;
    std::optional<ElectrodeLayout> electrode;

    void validate() const;
};

// The bundled reference device: 740 um radius stoichiometric SiN membrane
// (100 nm, 1 GPa prestress, Q^-1 = 2e-4) with a 50 nm TiN annulus from
// R_i = 250 um to the rim (Q^-1 = 1e-3, bulk density 5220 kg/m^3 until
// calibrated) and an eight-segment electrode at a 5.12 um gap.
DeviceConfig default_device();

// Parse a device file (INI-style sections, see README for the schema).
// Re_m defaults to R_m when omitted. Throws with the offending file/section/
// key named on parse or validation errors.
DeviceConfig load_device(const std::string& path);

std::string device_to_string(const DeviceConfig& config);
void save_device(const DeviceConfig& config, const std::string& path);

}  // namespace memtrans
