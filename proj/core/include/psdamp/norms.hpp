#pragma once
// Discrete norms and quadrature on cell-centered grids. L2-type norms use the
// midpoint cell sum; mass integrals use the composite trapezoid rule so that
// cumulative antiderivatives and total masses agree exactly.

#include <span>
#include <vector>

namespace psdamp {

enum class NormKind { L1, L2, Linf, H1, H2 };

// Midpoint quadrature: sum f_i * dx.
double cell_sum(std::span<const double> f, double dx);

// Composite trapezoid over the sample points (half weights at the ends).
double trapezoid(std::span<const double> f, double dx);

// Running trapezoid integral; out[i] = integral from x_0 to x_i (out[0] = 0).
std::vector<double> cumulative_trapezoid(std::span<const double> f, double dx);

// Centered first/second differences, second-order one-sided at the ends.
std::vector<double> diff_x(std::span<const double> f, double dx);
std::vector<double> diff_xx(std::span<const double> f, double dx);

// H1/H2 variants add centered-difference derivative terms to L2.
double discrete_norm(std::span<const double> f, double dx, NormKind kind);

} // namespace psdamp
