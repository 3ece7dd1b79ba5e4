#include "memtrans/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace memtrans {

namespace {

constexpr double kSeriesCutoff = 10.0;

// Ascending series J_n(x) = (x/2)^n / n! * sum_k (-x^2/4)^k / (k! (n+k)!).
// Long double accumulation keeps the alternating-sum cancellation below
// 1e-16 relative for x <= 10.
double series_j(int n, double x) {
    const long double half = static_cast<long double>(x) / 2.0L;
    const long double q = -half * half;
    long double term = 1.0L;
    for (int k = 1; k <= n; ++k) term *= half / k;
    long double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<long double>(k) * (n + k));
        sum += term;
        if (std::fabs(static_cast<double>(term)) <
            1e-19 * (std::fabs(static_cast<double>(sum)) + 1e-300))
            break;
    }
    return static_cast<double>(sum);
}

// Miller's backward recurrence: run J_{k-1} = (2k/x) J_k - J_{k+1} down from a
// start order where J is negligible, then normalize with
// J_0 + 2 J_2 + 2 J_4 + ... = 1.
double miller_j(int n, double x) {
    const int start = static_cast<int>(x + 14.0 * std::cbrt(x) + 24.0) + n;
    const int m = start + (start % 2);  // even start order
    long double jp = 0.0L;              // J_{k+1}
    long double jc = 1e-30L;            // J_k
    long double result = 0.0L;
    long double norm = 0.0L;
    for (int k = m; k >= 1; --k) {
        long double jm = (2.0L * k / x) * jc - jp;
        jp = jc;
        jc = jm;
        if (((k - 1) % 2) == 0) norm += (k == 1) ? jc : 2.0L * jc;
        if (k - 1 == n) result = jc;
        if (std::fabs(static_cast<double>(jc)) > 1e250) {
            jc *= 1e-250L;
            jp *= 1e-250L;
            norm *= 1e-250L;
            result *= 1e-250L;
        }
    }
    return static_cast<double>(result / norm);
}

}  // namespace

double bessel_j(int order, double x) {
    if (order < 0 || order > bessel_max_order)
        throw std::domain_error("bessel_j: unsupported order " + std::to_string(order));
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error("bessel_j: x must be finite and non-negative");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (x <= kSeriesCutoff) return series_j(order, x);
    return miller_j(order, x);
}

double bessel_zero(int order, int index) {
    if (order < 0 || order > bessel_max_order)
        throw std::domain_error("bessel_zero: unsupported order " + std::to_string(order));
    if (index < 1 || index > bessel_max_zero_index)
        throw std::domain_error("bessel_zero: index out of range [1, " +
                                std::to_string(bessel_max_zero_index) + "]");

    // Consecutive zeros of J_nu are separated by more than pi/2, so a pi/4
    // scan cannot skip one. J_nu > 0 on (0, first zero), so start inside that
    // interval.
    const double step = 0.25 * 3.14159265358979323846;
    double a = order == 0 ? 0.5 : 0.9 * order;
    double fa = bessel_j(order, a);
    int found = 0;
    for (int iter = 0; iter < 100000; ++iter) {
        double b = a + step;
        double fb = bessel_j(order, b);
        if ((fa < 0.0) != (fb < 0.0)) {
            ++found;
            if (found == index) {
                for (int it = 0; it < 200 && (b - a) > 1e-16 * b; ++it) {
                    double mid = 0.5 * (a + b);
                    double fm = bessel_j(order, mid);
                    if ((fa < 0.0) != (fm < 0.0)) {
                        b = mid;
                    } else {
                        a = mid;
                        fa = fm;
                    }
                }
                return 0.5 * (a + b);
            }
        }
        a = b;
        fa = fb;
    }
    throw std::runtime_error("bessel_zero: scan failed to bracket the requested zero");
}

}  // namespace memtrans
