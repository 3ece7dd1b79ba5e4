#pragma once

namespace memtrans {

inline constexpr double pi = 3.14159265358979323846;

// Vacuum permittivity, F/m (CODATA 2018).
inline constexpr double epsilon0 = 8.8541878128e-12;

}  // namespace memtrans
