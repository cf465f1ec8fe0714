#pragma once

// Coordinate systems of the hyperbolic plane (curvature -1) and the mappings
// between the native polar representation and the Poincare disk.

#include <cmath>
#include <cstddef>
#include <numbers>

namespace rhg {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into [0, 2pi).
inline double normalizeAngle(double phi) {
    double out = std::fmod(phi, kTwoPi);
    if (out < 0.0) out += kTwoPi;
    if (out >= kTwoPi) out = 0.0;
    return out;
}

/// Polar point in the native representation: r is the hyperbolic distance
/// from the origin.
struct NativePoint {
    double phi = 0.0;
    double r = 0.0;

    NativePoint() = default;
    NativePoint(double phi_, double r_) : phi(normalizeAngle(phi_)), r(r_) {}
};

/// Polar point inside the Euclidean unit disk (Poincare model).
struct PoincarePoint {
    double phi = 0.0;
    double r = 0.0;

    PoincarePoint() = default;
    PoincarePoint(double phi_, double r_) : phi(normalizeAngle(phi_)), r(r_) {}
};

struct Cartesian {
    double x = 0.0;
    double y = 0.0;
};

inline Cartesian toCartesian(const PoincarePoint& p) {
    return {p.r * std::cos(p.phi), p.r * std::sin(p.phi)};
}

/// Query disk in the Poincare model. Membership is strict:
/// dx*dx + dy*dy < radius*radius in Cartesian coordinates.
struct EuclideanCircle {
    PoincarePoint center;
    double radius = 0.0;

    Cartesian cartesianCenter() const { return toCartesian(center); }
};

/// Model parameters. If targetAvgDegree is set, R is derived from it.
struct ModelParams {
    std::size_t n = 1;
    double alpha = 1.0;
    double R = 0.0;
    double targetAvgDegree = 0.0;
};

/// Hyperbolic distance between two points of the Poincare disk.
/// Both radii must be < 1.
double poincareDistance(const PoincarePoint& p, const PoincarePoint& q);

/// Native radius -> Poincare radius, preserving distance to the origin.
/// Evaluated as tanh(r/2).
double mapToPoincare(double rNative);

/// Inverse of mapToPoincare. Throws ParameterError for inputs outside [0,1).
double mapToNative(double rPoincare);

/// Euclidean image of the hyperbolic circle of the given radius around
/// `center`. The center's radial coordinate is a Poincare coordinate.
EuclideanCircle hyperbolicCircleToEuclidean(const PoincarePoint& center, double radius);

/// Same, for a center given in native coordinates.
EuclideanCircle hyperbolicCircleToEuclidean(const NativePoint& center, double radius);

/// Closed-form expected average degree for n points on a disk of radius R.
/// Requires alpha > 0.5.
double expectedAvgDegree(double n, double alpha, double R);

/// Disk radius whose expected average degree equals targetAvgDegree
/// (relative tolerance 1e-6). Throws InfeasibleError if no radius in
/// (1e-6, 200] attains it.
double targetRadius(double n, double targetAvgDegree, double alpha);

/// Growth parameter producing degree exponent gamma. Requires gamma > 2.
double alphaFromGamma(double gamma);

} // namespace rhg
