#include "rhg/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

#include "rhg/errors.hpp"

namespace rhg {

namespace {

// 1 - r^2 without cancellation near the boundary.
double oneMinusSquare(double r) { return (1.0 - r) * (1.0 + r); }

constexpr double kMinRadius = 1e-6;
constexpr double kMaxRadius = 200.0;

} // namespace

double poincareDistance(const PoincarePoint& p, const PoincarePoint& q) {
    assert(p.r < 1.0 && q.r < 1.0);
    const Cartesian a = toCartesian(p);
    const Cartesian b = toCartesian(q);
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double diffSq = dx * dx + dy * dy;
    const double arg = 1.0 + 2.0 * diffSq / (oneMinusSquare(p.r) * oneMinusSquare(q.r));
    return std::acosh(arg);
}

double mapToPoincare(double rNative) {
    assert(rNative >= 0.0);
    return std::tanh(0.5 * rNative);
}

double mapToNative(double rPoincare) {
    if (!(rPoincare >= 0.0 && rPoincare < 1.0))
        throw ParameterError("mapToNative: Poincare radius must lie in [0, 1), got " +
                             std::to_string(rPoincare));
    return 2.0 * std::atanh(rPoincare);
}

EuclideanCircle hyperbolicCircleToEuclidean(const PoincarePoint& center, double radius) {
    assert(center.r >= 0.0 && center.r < 1.0);
    assert(radius > 0.0);
    const double rh = center.r;
    // a = cosh(R) - 1 = 2 sinh^2(R/2), accurate for small R.
    const double s = std::sinh(0.5 * radius);
    const double a = 2.0 * s * s;
    const double b = oneMinusSquare(rh);
    const double denom = a * b + 2.0;
    const double centerR = 2.0 * rh / denom;
    // (2 rh/(ab+2))^2 - (2 rh^2 - ab)/(ab+2) simplifies to (b sinh R / (ab+2))^2,
    // which has no cancellation.
    const double euclideanRadius = b * std::sinh(radius) / denom;
    EuclideanCircle out;
    out.center = PoincarePoint(center.phi, centerR);
    out.radius = euclideanRadius;
    return out;
}

EuclideanCircle hyperbolicCircleToEuclidean(const NativePoint& center, double radius) {
    return hyperbolicCircleToEuclidean(PoincarePoint(center.phi, mapToPoincare(center.r)), radius);
}

double expectedAvgDegree(double n, double alpha, double R) {
    if (!(alpha > 0.5))
        throw ParameterError("expectedAvgDegree: alpha must exceed 0.5");
    if (!(R > 0.0))
        throw ParameterError("expectedAvgDegree: R must be positive");
    if (!(n >= 1.0))
        throw ParameterError("expectedAvgDegree: n must be at least 1");
    constexpr double pi = std::numbers::pi;
    const double xi = alpha / (alpha - 0.5);
    const double inner = (pi / 4.0) * (1.0 / alpha) * (1.0 / alpha) - (pi - 1.0) / alpha + (pi - 2.0);
    const double bracket =
        std::exp(-R / 2.0) + std::exp(-alpha * R) * (alpha * (R / 2.0) * inner - 1.0);
    return (2.0 / pi) * xi * xi * n * bracket;
}

double targetRadius(double n, double targetAvgDegree, double alpha) {
    if (!(alpha > 0.5))
        throw ParameterError("targetRadius: alpha must exceed 0.5");
    if (!(targetAvgDegree > 0.0) || !(targetAvgDegree < n - 1.0))
        throw ParameterError("targetRadius: average degree must lie in (0, n-1)");

    // The closed form rises from 0 to a single peak and decays afterwards;
    // only the decaying branch is a meaningful radius.
    auto f = [&](double R) { return expectedAvgDegree(n, alpha, R); };
    const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = kMinRadius;
    double hi = kMaxRadius;
    double c = hi - invPhi * (hi - lo);
    double d = lo + invPhi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invPhi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invPhi * (hi - lo);
            fd = f(d);
        }
    }
    const double peak = 0.5 * (lo + hi);

    const double fPeak = f(peak);
    const double fMax = f(kMaxRadius);
    if (targetAvgDegree > fPeak || targetAvgDegree < fMax)
        throw InfeasibleError("targetRadius: no radius in (1e-6, 200] attains average degree " +
                              std::to_string(targetAvgDegree));

    lo = peak;
    hi = kMaxRadius;
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) > targetAvgDegree)
            lo = mid;
        else
            hi = mid;
    }
    const double loErr = std::abs(f(lo) - targetAvgDegree);
    const double hiErr = std::abs(f(hi) - targetAvgDegree);
    const double best = loErr <= hiErr ? lo : hi;
    if (std::min(loErr, hiErr) > 1e-6 * targetAvgDegree)
        throw InfeasibleError("targetRadius: bisection did not reach the requested tolerance");
    return best;
}

double alphaFromGamma(double gamma) {
    if (!(gamma > 2.0))
        throw ParameterError("alphaFromGamma: gamma must exceed 2");
    return (gamma - 1.0) / 2.0;
}

} // namespace rhg
