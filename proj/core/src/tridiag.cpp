#include "memtrans/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace memtrans {

namespace {

// Number of eigenvalues strictly below x (Sturm sequence via LDL^T pivots).
int sturm_count(const std::vector<double>& d, const std::vector<double>& e2, double x,
                double safe_min) {
    int count = 0;
    double p = d[0] - x;
    if (p < 0.0) ++count;
    for (size_t i = 1; i < d.size(); ++i) {
        if (std::fabs(p) < safe_min) p = p < 0.0 ? -safe_min : safe_min;
        p = d[i] - x - e2[i - 1] / p;
        if (p < 0.0) ++count;
    }
    return count;
}

// Solve (T - shift I) x = b with partial pivoting; overwrites b with x.
void shifted_solve(const std::vector<double>& d, const std::vector<double>& e, double shift,
                   std::vector<double>& b) {
    const size_t n = d.size();
    std::vector<double> main(n), upper(n, 0.0), upper2(n, 0.0), lower(n, 0.0);
    for (size_t i = 0; i < n; ++i) main[i] = d[i] - shift;
    for (size_t i = 0; i + 1 < n; ++i) {
        upper[i] = e[i];
        lower[i] = e[i];
    }
    // Forward elimination with row swaps.
    for (size_t i = 0; i + 1 < n; ++i) {
        if (std::fabs(lower[i]) > std::fabs(main[i])) {
            std::swap(main[i], lower[i]);
            std::swap(upper[i], main[i + 1]);
            if (i + 2 < n) std::swap(upper2[i], upper[i + 1]);
            std::swap(b[i], b[i + 1]);
        }
        if (main[i] == 0.0) main[i] = 1e-300;
        const double factor = lower[i] / main[i];
        main[i + 1] -= factor * upper[i];
        if (i + 2 < n) upper[i + 1] -= factor * upper2[i];
        b[i + 1] -= factor * b[i];
    }
    if (main[n - 1] == 0.0) main[n - 1] = 1e-300;
    // Back substitution.
    b[n - 1] /= main[n - 1];
    if (n >= 2) b[n - 2] = (b[n - 2] - upper[n - 2] * b[n - 1]) / main[n - 2];
    for (size_t ir = n; ir >= 3; --ir) {
        const size_t i = ir - 3;
        b[i] = (b[i] - upper[i] * b[i + 1] - upper2[i] * b[i + 2]) / main[i];
    }
}

void normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    if (s > 0.0)
        for (double& x : v) x /= s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Rayleigh quotient v^T T v for a unit vector v.
double rayleigh(const std::vector<double>& d, const std::vector<double>& e,
                const std::vector<double>& v) {
    const size_t n = d.size();
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double tv = d[i] * v[i];
        if (i > 0) tv += e[i - 1] * v[i - 1];
        if (i + 1 < n) tv += e[i] * v[i + 1];
        s += v[i] * tv;
    }
    return s;
}

}  // namespace

TridiagEigenResult tridiag_lowest_eigenpairs(const std::vector<double>& diag,
                                             const std::vector<double>& off, int n_pairs) {
    const size_t n = diag.size();
    if (n == 0) throw std::invalid_argument("tridiag: empty matrix");
    if (off.size() + 1 != n) throw std::invalid_argument("tridiag: off-diagonal size mismatch");
    if (n_pairs < 1 || static_cast<size_t>(n_pairs) > n)
        throw std::invalid_argument("tridiag: invalid number of requested eigenpairs");

    std::vector<double> e2(off.size());
    for (size_t i = 0; i < off.size(); ++i) e2[i] = off[i] * off[i];

    // Gershgorin bounds.
    double lo = diag[0], hi = diag[0], scale = std::fabs(diag[0]);
    for (size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::fabs(off[i - 1]) : 0.0) +
                         (i + 1 < n ? std::fabs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
        scale = std::max(scale, std::fabs(diag[i]) + r);
    }
    const double safe_min = 1e-300;
    const double tol = 1e-14 * std::max(scale, 1e-300);

    TridiagEigenResult result;
    result.values.reserve(n_pairs);
    result.vectors.reserve(n_pairs);

    for (int j = 0; j < n_pairs; ++j) {
        double a = lo, b = hi;
        while (b - a > tol) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(diag, e2, mid, safe_min) >= j + 1)
                b = mid;
            else
                a = mid;
        }
        const double lambda = 0.5 * (a + b);

        // Inverse iteration, seeded deterministically.
        std::mt19937 rng(0x5eed + static_cast<unsigned>(j));
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<double> v(n);
        for (double& x : v) x = dist(rng);
        normalize(v);
        const double shift = lambda + 8.0 * tol;
        for (int it = 0; it < 4; ++it) {
            shifted_solve(diag, off, shift, v);
            // Re-orthogonalize against neighbours closer than the bisection
            // resolution (degenerate clusters).
            for (int p = 0; p < j; ++p) {
                if (std::fabs(result.values[p] - lambda) < 1e3 * tol) {
                    const double c = dot(v, result.vectors[p]);
                    for (size_t i = 0; i < n; ++i) v[i] -= c * result.vectors[p][i];
                }
            }
            normalize(v);
        }

        // Rayleigh quotient sharpens the bisection estimate to near machine
        // relative accuracy.
        result.values.push_back(rayleigh(diag, off, v));
        result.vectors.push_back(std::move(v));
    }
    return result;
}

}  // namespace memtrans
