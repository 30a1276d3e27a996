// Thomas algorithm for tridiagonal systems. No pivoting; the diffusion
// matrices assembled here are strictly diagonally dominant.
#pragma once

#include <cstddef>
#include <vector>

namespace stefan {

// Solves A x = d with sub-diagonal a (a[0] unused), diagonal b and
// super-diagonal c (c[n-1] unused), in place over scratch copies.
inline std::vector<double> solve_tridiagonal(const std::vector<double>& a,
                                             const std::vector<double>& b,
                                             const std::vector<double>& c,
                                             const std::vector<double>& d) {
    const std::size_t n = b.size();
    std::vector<double> cp(n), dp(n), x(n);
    cp[0] = c[0] / b[0];
    dp[0] = d[0] / b[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = b[i] - a[i] * cp[i - 1];
        cp[i] = c[i] / m;
        dp[i] = (d[i] - a[i] * dp[i - 1]) / m;
    }
    x[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
    return x;
}

}  // namespace stefan
