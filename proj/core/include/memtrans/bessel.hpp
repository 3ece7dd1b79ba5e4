#pragma once

namespace memtrans {

inline constexpr int bessel_max_order = 16;
inline constexpr int bessel_max_zero_index = 50;

// Bessel function of the first kind J_order(x) for integer order in
// [0, bessel_max_order] and x >= 0. Ascending power series (long double
// accumulation) below x = 10, Miller backward recurrence with Neumann-series
// normalization above. Envelope-relative accuracy ~1e-14 on [0, 200].
double bessel_j(int order, double x);

// The index-th positive zero of J_order (index >= 1, <= bessel_max_zero_index).
// Sign-change scan with step pi/4 followed by bisection; the returned value is
// always bracketed by a verified sign change.
double bessel_zero(int order, int index);

}  // namespace memtrans
