#pragma once

#include <vector>

namespace radscf {

// Boys function F_n(x) = \int_0^1 t^{2n} exp(-x t^2) dt.
// Accurate to ~1e-12 over the ranges produced by molecular integrals.
double boys(int n, double x);

// F_0..F_nmax at a common argument, written into out[0..nmax].
void boys_fill(int nmax, double x, double* out);

// Same, into a vector (resized to nmax+1).
void boys_array(int nmax, double x, std::vector<double>& out);

}  // namespace radscf
