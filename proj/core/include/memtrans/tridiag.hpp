#pragma once

#include <vector>

namespace memtrans {

struct TridiagEigenResult {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // unit 2-norm, one per value
};

// Lowest n_pairs eigenpairs of a symmetric tridiagonal matrix
// (diag d[0..n-1], off-diagonal e[0..n-2]). Eigenvalues by Sturm-sequence
// bisection, eigenvectors by inverse iteration with a pivoting tridiagonal
// solve. Intended for well-separated spectra (Sturm-Liouville problems).
TridiagEigenResult tridiag_lowest_eigenpairs(const std::vector<double>& diag,
                                             const std::vector<double>& off,
                                             int n_pairs);

}  // namespace memtrans
