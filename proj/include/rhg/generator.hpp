#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rhg/geometry.hpp"
#include "rhg/graph.hpp"
#include "rhg/quadtree.hpp"
#include "rhg/simd/circle_scan.hpp"

namespace rhg {

/// Generator input. Exactly one of {avgDegree, radius} and exactly one of
/// {gamma, alpha} must be set.
struct GeneratorParams {
    std::size_t n = 0;
    std::optional<double> avgDegree;
    std::optional<double> radius;
    std::optional<double> gamma;
    std::optional<double> alpha;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::size_t leafCapacity = PolarQuadtree::kDefaultCapacity;
    double longRangeFraction = 0.0;
    simd::Isa isa = simd::bestIsa();
};

/// Growth parameter and disk radius after resolving gamma / average degree.
struct ResolvedModel {
    double alpha = 0.0;
    double R = 0.0;
};

/// Validates the parameter combination and resolves alpha and R.
ResolvedModel resolveModel(const GeneratorParams& params);

/// Per-vertex coordinates in both representations.
struct VertexCoordinates {
    std::vector<double> phi;
    std::vector<double> rNative;
    std::vector<double> rPoincare;

    std::size_t size() const { return phi.size(); }
    PoincarePoint poincare(std::size_t v) const { return PoincarePoint(phi[v], rPoincare[v]); }
    NativePoint native(std::size_t v) const { return NativePoint(phi[v], rNative[v]); }

    friend bool operator==(const VertexCoordinates&, const VertexCoordinates&) = default;
};

/// Inverse of the radial CDF F(r) = (cosh(alpha r) - 1) / (cosh(alpha R) - 1).
double radialInverseCdf(double u, double alpha, double R);

/// Draws n points from one seeded stream: per vertex an angle draw, then a
/// radial draw.
VertexCoordinates samplePoints(std::size_t n, double alpha, double R, std::uint64_t seed);

struct PhaseTimings {
    std::uint64_t samplingNs = 0;
    std::uint64_t buildNs = 0;
    std::uint64_t edgesNs = 0;
    std::uint64_t longRangeNs = 0;

    std::uint64_t totalNs() const { return samplingNs + buildNs + edgesNs + longRangeNs; }
};

struct GenerationResult {
    Graph graph;
    VertexCoordinates coords;
    ResolvedModel model;
    PhaseTimings timings;
    std::size_t longRangeEdges = 0;
};

struct EdgePhaseOptions {
    unsigned threads = 1;
    std::size_t leafCapacity = PolarQuadtree::kDefaultCapacity;
    simd::Isa isa = simd::bestIsa();
};

/// Quadtree-based edge extraction on fixed coordinates.
Graph generateFromCoordinates(const VertexCoordinates& coords, double R, double alpha,
                              const EdgePhaseOptions& options = {}, PhaseTimings* timings = nullptr);

/// End-to-end generation with intermediate data and phase timings.
GenerationResult generateDetailed(const GeneratorParams& params);

Graph generate(const GeneratorParams& params);

/// Quadratic reference: tests every pair with the Poincare metric.
Graph generateBruteForce(const VertexCoordinates& coords, double R);

/// Adds ceil(fraction * m) uniformly random absent, non-loop vertex pairs.
Graph addLongRangeEdges(const Graph& graph, double fraction, std::uint64_t seed);

} // namespace rhg
