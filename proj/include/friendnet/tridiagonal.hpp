#pragma once

#include <cstddef>
#include <vector>

#include "friendnet/errors.hpp"

namespace friendnet {

/// Thomas algorithm for a tridiagonal system. `lower[i]` multiplies x[i-1]
/// (lower[0] unused), `diag[i]` multiplies x[i], `upper[i]` multiplies
/// x[i+1] (upper[n-1] unused). No pivoting; callers must supply a
/// diagonally dominant system.
inline std::vector<double> solve_tridiagonal(const std::vector<double>& lower,
                                             const std::vector<double>& diag,
                                             const std::vector<double>& upper,
                                             const std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || lower.size() != n || upper.size() != n || rhs.size() != n)
        throw ValidationError("tridiagonal solver requires four equal-length bands");
    std::vector<double> c(n, 0.0);
    std::vector<double> d(n, 0.0);
    if (diag[0] == 0.0) throw ValidationError("tridiagonal solver hit a zero pivot");
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double denom = diag[i] - lower[i] * c[i - 1];
        if (denom == 0.0) throw ValidationError("tridiagonal solver hit a zero pivot");
        c[i] = upper[i] / denom;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
    }
    std::vector<double> x(n, 0.0);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

}  // namespace friendnet
