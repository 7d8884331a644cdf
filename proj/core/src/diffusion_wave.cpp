#include "psdamp/diffusion_wave.hpp"

#include <cmath>
#include <stdexcept>

#include "psdamp/norms.hpp"

namespace psdamp {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Physicists' Hermite polynomial H_k(z), k <= 6.
double hermite(int k, double z) {
    switch (k) {
        case 0: return 1.0;
        case 1: return 2.0 * z;
        case 2: return 4.0 * z * z - 2.0;
        case 3: return z * (8.0 * z * z - 12.0);
        case 4: return (16.0 * z * z - 48.0) * z * z + 12.0;
        case 5: return z * ((32.0 * z * z - 160.0) * z * z + 120.0);
        case 6: return ((64.0 * z * z - 480.0) * z * z + 720.0) * z * z - 120.0;
    }
    throw std::invalid_argument("hermite: order out of range");
}

} // namespace

DiffusionWave::DiffusionWave(double v_bar, double mu, double delta0)
    : v_bar_(v_bar), mu_(mu), delta0_(delta0) {
    if (!(v_bar > 0.0)) throw std::invalid_argument("DiffusionWave: v_bar must be positive");
    if (!(mu > 0.0)) throw std::invalid_argument("DiffusionWave: mu must be positive");
}

double DiffusionWave::space_derivative(double t, double x, int k) const {
    if (k < 0 || k > 6) throw std::invalid_argument("DiffusionWave: derivative order out of range");
    if (!(t >= 0.0)) throw std::invalid_argument("DiffusionWave: t must be >= 0");
    const double s = 4.0 * mu_ * (1.0 + t);     // kernel variance parameter
    const double z = x / std::sqrt(s);
    const double amp = delta0_ / std::sqrt(kPi * s);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return amp * sign * std::pow(s, -0.5 * k) * hermite(k, z) * std::exp(-z * z);
}

double DiffusionWave::time_derivative(double t, double x) const {
    // d/dt = 4 mu d/ds applied to delta0 (pi s)^(-1/2) exp(-x^2/s)
    const double s = 4.0 * mu_ * (1.0 + t);
    const double g = delta0_ / std::sqrt(kPi * s) * std::exp(-x * x / s);
    return 4.0 * mu_ * g * (x * x / (s * s) - 0.5 / s);
}

double DiffusionWave::eval(double t, double x, WaveQuantity what) const {
    switch (what) {
        case WaveQuantity::V: return v_bar_ + space_derivative(t, x, 0);
        case WaveQuantity::V_x: return space_derivative(t, x, 1);
        case WaveQuantity::V_xx: return space_derivative(t, x, 2);
        case WaveQuantity::V_xxx: return space_derivative(t, x, 3);
        case WaveQuantity::V_t: return time_derivative(t, x);
        case WaveQuantity::U: return mu_ * space_derivative(t, x, 1);
        case WaveQuantity::U_x: return mu_ * space_derivative(t, x, 2);
        case WaveQuantity::U_t: return mu_ * mu_ * space_derivative(t, x, 3);
    }
    throw std::invalid_argument("DiffusionWave::eval: unknown quantity");
}

double mu_const(const PressureLaw& law, double v_bar, double alpha_bar) {
    if (!(alpha_bar > 0.0)) throw std::invalid_argument("mu_const: alpha_bar must be positive");
    return -law.d1(v_bar) / alpha_bar;
}

double select_delta0(std::span<const double> v0, double v_bar, const EndStates& ends,
                     double alpha_bar, const Grid1D& grid) {
    if (v0.size() != grid.n_cells())
        throw std::invalid_argument("select_delta0: v0 size does not match grid");
    const double edge = std::max(std::abs(v0.front() - v_bar), std::abs(v0.back() - v_bar));
    if (edge > 1e-12)
        throw TruncationError("select_delta0: v0 - v_bar has not decayed at the grid boundary", edge);
    std::vector<double> dev(v0.size());
    for (std::size_t i = 0; i < v0.size(); ++i) dev[i] = v0[i] - v_bar;
    return trapezoid(dev, grid.dx()) + ends.du() / alpha_bar;
}

} // namespace psdamp
