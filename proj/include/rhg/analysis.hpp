#pragma once

// Structural measurements on undirected simple graphs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rhg/graph.hpp"

namespace rhg {

/// 3 * triangles / paths of length two; 0 when there are no such paths.
double globalClusteringCoefficient(const Graph& g);

std::uint64_t triangleCount(const Graph& g);

/// Number of triangles through each vertex.
std::vector<std::uint64_t> vertexTriangleCounts(const Graph& g);

/// Mean over all vertices of triangles(v) / (deg(v) choose 2), with vertices
/// of degree below 2 contributing 0.
double averageLocalClusteringCoefficient(const Graph& g);

/// Pearson correlation of endpoint degrees over both orientations of every
/// edge. Empty when the graph has no edges or a degree marginal is constant.
std::optional<double> degreeAssortativity(const Graph& g);

/// Component label per vertex (labels 0..k-1 in order of first vertex).
std::vector<std::uint32_t> componentLabels(const Graph& g);

/// Component sizes, descending; they sum to n.
std::vector<std::size_t> connectedComponents(const Graph& g);

/// Core number of every vertex (k-core peeling).
std::vector<std::uint32_t> coreDecomposition(const Graph& g);

struct DiameterBounds {
    std::size_t lower = 0;
    std::size_t upper = 0;
    bool exact() const { return lower == upper; }
};

struct DiameterOptions {
    /// Components up to this size get an exact all-pairs BFS computation.
    std::size_t exactThreshold = 10000;
    std::size_t sweeps = 4;
};

/// Bounds on the diameter of the largest connected component.
DiameterBounds diameterBounds(const Graph& g, const DiameterOptions& options = {});

/// Hop distances from source; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfsDistances(const Graph& g, NodeId source);

/// Continuous-approximation MLE of the power-law exponent over the tail
/// k >= kMin: 1 + N / sum ln(k / (kMin - 0.5)). Throws InsufficientDataError
/// when fewer than 10 degrees reach kMin or the tail is constant.
double powerLawExponentMLE(std::span<const std::size_t> degrees, std::size_t kMin);

/// max(5, median degree).
std::size_t defaultPowerLawKMin(std::span<const std::size_t> degrees);

struct AnalysisOptions {
    std::optional<std::size_t> kMin;
    DiameterOptions diameter;
};

struct AnalysisReport {
    std::size_t n = 0;
    std::size_t m = 0;
    double avgDegree = 0.0;
    double maxDegree = 0.0;
    double globalClusteringCoefficient = 0.0;
    double averageLocalClustering = 0.0;
    std::optional<double> degreeAssortativity;
    std::size_t componentCount = 0;
    double largestComponentFraction = 0.0;
    std::size_t maxCoreNumber = 0;
    std::size_t diameterLower = 0;
    std::size_t diameterUpper = 0;
    std::optional<double> powerLawExponent;
    std::size_t kMin = 0;
};

AnalysisReport analyze(const Graph& g, const AnalysisOptions& options = {});

/// Field names in serialization order.
const std::vector<std::string>& reportFieldNames();

/// Field values as text, in reportFieldNames() order. Undefined values are
/// written as "nan".
std::vector<std::string> reportFieldValues(const AnalysisReport& report);

/// "key=value" lines.
std::string formatReport(const AnalysisReport& report);

/// Parses output of formatReport (unknown keys are ignored).
AnalysisReport parseReport(const std::string& text);

} // namespace rhg
