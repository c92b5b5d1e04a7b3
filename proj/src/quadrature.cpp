#include "cavswap/quadrature.hpp"

namespace cavswap {

double trapezoid(std::span<const double> y, double dt) {
    const std::size_t n = y.size();
    if (n < 2) return 0.0;
    double acc = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < n; ++i) acc += y[i];
    return acc * dt;
}

double simpson(std::span<const double> y, double dt) {
    const std::size_t n = y.size();
    if (n < 3) return trapezoid(y, dt);
    const std::size_t intervals = n - 1;
    double acc = 0.0;
    std::size_t stop = (intervals % 2 == 0) ? n - 1 : n - 4;
    // even run of intervals handled by 1/3 rule
    for (std::size_t i = 0; i + 2 <= stop; i += 2)
        acc += dt / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
    if (intervals % 2 != 0) {
        // 3/8 rule on the last three intervals
        const std::size_t k = n - 4;
        acc += 3.0 * dt / 8.0 * (y[k] + 3.0 * y[k + 1] + 3.0 * y[k + 2] + y[k + 3]);
    }
    return acc;
}

std::vector<double> trapezoid_weights(int n, double dt) {
    std::vector<double> w(static_cast<std::size_t>(n), dt);
    if (n > 0) {
        w.front() = 0.5 * dt;
        w.back() = 0.5 * dt;
    }
    return w;
}

} // namespace cavswap
