#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rhg {

struct LeastSquaresFit {
    std::vector<double> coefficients;
    /// Per-sample |fitted - observed| / observed.
    std::vector<double> relativeResiduals;
    double maxRelativeResidual = 0.0;
};

/// Ordinary least squares y ~ X c, where row i of X is features[i].
/// Throws ParameterError for empty or rank-deficient systems.
LeastSquaresFit leastSquares(std::span<const std::vector<double>> features, std::span<const double> y);

} // namespace rhg
