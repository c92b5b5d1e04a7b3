#pragma once

#include <span>
#include <vector>

namespace cavswap {

// Composite trapezoid on a uniform grid.
double trapezoid(std::span<const double> y, double dt);

// Composite Simpson on a uniform grid; 3/8 rule on the tail when the interval
// count is odd, trapezoid below three points.
double simpson(std::span<const double> y, double dt);

// Trapezoid weights (dt/2 at the ends, dt inside).
std::vector<double> trapezoid_weights(int n, double dt);

} // namespace cavswap
