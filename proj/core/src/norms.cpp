#include "psdamp/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace psdamp {

double cell_sum(std::span<const double> f, double dx) {
    double s = 0.0;
    for (double x : f) s += x;
    return s * dx;
}

double trapezoid(std::span<const double> f, double dx) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * dx;
}

std::vector<double> cumulative_trapezoid(std::span<const double> f, double dx) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i)
        out[i] = out[i - 1] + 0.5 * (f[i - 1] + f[i]) * dx;
    return out;
}

std::vector<double> diff_x(std::span<const double> f, double dx) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 3) return out;
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
    return out;
}

std::vector<double> diff_xx(std::span<const double> f, double dx) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 4) return out;
    const double h2 = dx * dx;
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    return out;
}

double discrete_norm(std::span<const double> f, double dx, NormKind kind) {
    switch (kind) {
        case NormKind::L1: {
            double s = 0.0;
            for (double x : f) s += std::abs(x);
            return s * dx;
        }
        case NormKind::L2: {
            double s = 0.0;
            for (double x : f) s += x * x;
            return std::sqrt(s * dx);
        }
        case NormKind::Linf: {
            double m = 0.0;
            for (double x : f) m = std::max(m, std::abs(x));
            return m;
        }
        case NormKind::H1: {
            const double l2 = discrete_norm(f, dx, NormKind::L2);
            const auto d1 = diff_x(f, dx);
            const double d1n = discrete_norm(d1, dx, NormKind::L2);
            return std::sqrt(l2 * l2 + d1n * d1n);
        }
        case NormKind::H2: {
            const double h1 = discrete_norm(f, dx, NormKind::H1);
            const auto d2 = diff_xx(f, dx);
            const double d2n = discrete_norm(d2, dx, NormKind::L2);
            return std::sqrt(h1 * h1 + d2n * d2n);
        }
    }
    throw std::invalid_argument("discrete_norm: unknown kind");
}

} // namespace psdamp
