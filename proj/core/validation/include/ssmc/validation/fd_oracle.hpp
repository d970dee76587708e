#pragma once

#include <span>

#include "ssmc/geometry.hpp"

namespace ssmc::validation {

/// Christoffel symbols Γ^k_ij from central differences of the metric with
/// step h. The metric is evaluated in long double to keep roundoff below the
/// truncation error at h ≈ 1e-5.
Tensor fd_christoffel(const MetricSpec& metric, std::span<const double> point, double h);

/// Levi-Civita Riemann tensor (l,k,i,j) from fd_christoffel and a second
/// central difference of the Christoffel symbols.
Tensor fd_riemann(const MetricSpec& metric, std::span<const double> point, double h);

}  // namespace ssmc::validation
