#pragma once

#include <span>

#include "kantorovich/operator.hpp"

namespace kantorovich::functions {

TargetFunction constant(double c);

// clamp(x, -L, L).
TargetFunction identity_clamped(double limit);

// x^2 on [-L, L], continued C^1 by a quadratic ramp on L < |x| <= 2L that
// flattens to the constant 2L^2. f' is 2-Lipschitz on all of R.
TargetFunction square(double limit = 4.0);

TargetFunction sine();

// s(x) sin(3x) where s(x) = x on [-L, L] and flattens C^1 to +-1.5L by |x| = 2L.
TargetFunction x_sin3x(double limit = 4.0);

// |sin x|^beta, Holder of order beta with constant 1.
TargetFunction holder_sine(double beta);

// Piecewise-linear interpolant through (xs[i], ys[i]) with constant extension.
TargetFunction sampled_signal(std::span<const double> xs, std::span<const double> ys);

}  // namespace kantorovich::functions
