#include "rhg/fit.hpp"

#include <algorithm>
#include <cmath>

#include "rhg/errors.hpp"

namespace rhg {

LeastSquaresFit leastSquares(std::span<const std::vector<double>> features, std::span<const double> y) {
    if (features.empty() || features.size() != y.size())
        throw ParameterError("leastSquares: need as many feature rows as observations");
    const std::size_t k = features.front().size();
    if (k == 0 || features.size() < k) throw ParameterError("leastSquares: underdetermined system");

    // Columns are rescaled to unit max-norm before forming the normal
    // equations; the features span many orders of magnitude.
    std::vector<double> scale(k, 0.0);
    for (const auto& row : features)
        for (std::size_t j = 0; j < k; ++j) scale[j] = std::max(scale[j], std::abs(row[j]));
    for (double& s : scale)
        if (s == 0.0) throw ParameterError("leastSquares: all-zero feature column");

    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
    for (std::size_t i = 0; i < features.size(); ++i) {
        for (std::size_t p = 0; p < k; ++p) {
            const double xp = features[i][p] / scale[p];
            for (std::size_t q = 0; q < k; ++q) a[p][q] += xp * features[i][q] / scale[q];
            a[p][k] += xp * y[i];
        }
    }
    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-14) throw ParameterError("leastSquares: rank-deficient system");
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
        }
    }
    LeastSquaresFit fit;
    fit.coefficients.resize(k);
    for (std::size_t j = 0; j < k; ++j) fit.coefficients[j] = a[j][k] / a[j][j] / scale[j];
    for (std::size_t i = 0; i < features.size(); ++i) {
        double predicted = 0.0;
        for (std::size_t j = 0; j < k; ++j) predicted += fit.coefficients[j] * features[i][j];
        const double rel = std::abs(predicted - y[i]) / std::abs(y[i]);
        fit.relativeResiduals.push_back(rel);
        fit.maxRelativeResidual = std::max(fit.maxRelativeResidual, rel);
    }
    return fit;
}

} // namespace rhg
