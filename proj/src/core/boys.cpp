#include "core/boys.hpp"

#include <cmath>
#include <numbers>

namespace radscf {

namespace {

// Series at the top order, then downward recursion. The series
//   F_n(x) = e^{-x} sum_k (2x)^k (2n-1)!! / (2n+2k+1)!!
// converges quickly for x <= 35.
double boys_series(int n, double x) {
    const double expmx = std::exp(-x);
    double term = 1.0 / (2 * n + 1);
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= 2.0 * x / (2 * n + 2 * k + 1);
        sum += term;
        if (term < sum * 1e-16) break;
    }
    return expmx * sum;
}

}  // namespace

void boys_fill(int nmax, double x, double* out) {
    if (x < 1e-13) {
        for (int n = 0; n <= nmax; ++n) out[n] = 1.0 / (2 * n + 1);
        return;
    }
    if (x <= 35.0) {
        out[nmax] = boys_series(nmax, x);
        const double expmx = std::exp(-x);
        for (int n = nmax; n > 0; --n) out[n - 1] = (2.0 * x * out[n] + expmx) / (2 * n - 1);
        return;
    }
    // Large argument: F_0 from erf, then upward recursion (stable here since
    // the e^{-x} correction is negligible relative to each term).
    out[0] = 0.5 * std::sqrt(std::numbers::pi / x) * std::erf(std::sqrt(x));
    const double expmx = std::exp(-x);
    for (int n = 0; n < nmax; ++n) out[n + 1] = ((2 * n + 1) * out[n] - expmx) / (2.0 * x);
}

void boys_array(int nmax, double x, std::vector<double>& out) {
    out.resize(static_cast<std::size_t>(nmax) + 1);
    boys_fill(nmax, x, out.data());
}

double boys(int n, double x) {
    double buf[64];
    boys_fill(n < 64 ? n : 63, x, buf);
    if (n < 64) return buf[n];
    std::vector<double> big;
    boys_array(n, x, big);
    return big[static_cast<std::size_t>(n)];
}

}  // namespace radscf
