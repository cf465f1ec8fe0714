#include "rhg/generator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <unordered_set>

#include "rhg/errors.hpp"

namespace rhg {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsedNs(Clock::time_point start) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

// 53 random bits -> [0, 1).
double unitInterval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

constexpr std::uint64_t kLongRangeStream = 0x9E3779B97F4A7C15ull;
constexpr std::size_t kEdgeBlock = 256;

} // namespace

ResolvedModel resolveModel(const GeneratorParams& p) {
    if (p.n == 0) throw ParameterError("number of vertices must be at least 1");
    if (p.n > std::size_t{0xFFFFFFFFu}) throw ParameterError("number of vertices exceeds 2^32 - 1");
    if (p.avgDegree.has_value() == p.radius.has_value())
        throw ParameterError("exactly one of average degree and radius must be given");
    if (p.gamma.has_value() == p.alpha.has_value())
        throw ParameterError("exactly one of gamma and alpha must be given");
    if (p.threads == 0) throw ParameterError("thread count must be at least 1");
    if (p.leafCapacity == 0) throw ParameterError("leaf capacity must be at least 1");
    if (!(p.longRangeFraction >= 0.0 && p.longRangeFraction < 1.0))
        throw ParameterError("long-range fraction must lie in [0, 1)");

    ResolvedModel model;
    if (p.gamma) {
        model.alpha = alphaFromGamma(*p.gamma);
    } else {
        if (!(*p.alpha > 0.5)) throw ParameterError("alpha must exceed 0.5");
        model.alpha = *p.alpha;
    }
    if (p.radius) {
        if (!(*p.radius > 0.0)) throw ParameterError("radius must be positive");
        model.R = *p.radius;
    } else {
        const double n = static_cast<double>(p.n);
        if (!(*p.avgDegree > 0.0 && *p.avgDegree < n - 1.0))
            throw ParameterError("average degree must lie in (0, n-1), got " +
                                 std::to_string(*p.avgDegree) + " for n = " + std::to_string(p.n));
        model.R = targetRadius(n, *p.avgDegree, model.alpha);
    }
    return model;
}

double radialInverseCdf(double u, double alpha, double R) {
    const double aR = alpha * R;
    double r;
    if (aR <= 600.0) {
        r = std::acosh(1.0 + u * (std::cosh(aR) - 1.0)) / alpha;
    } else {
        // cosh(aR) overflows; acosh(1 + t) with log t = log(u) + aR - log 2 + O(e^-aR).
        if (u <= 0.0) return 0.0;
        const double logT = std::log(u) + aR - std::log(2.0);
        if (logT > 40.0) {
            r = (std::log(2.0) + logT) / alpha;
        } else {
            const double t = std::exp(logT);
            r = std::log1p(t + std::sqrt(t * (t + 2.0))) / alpha;
        }
    }
    return std::min(r, R);
}

VertexCoordinates samplePoints(std::size_t n, double alpha, double R, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    VertexCoordinates coords;
    coords.phi.resize(n);
    coords.rNative.resize(n);
    coords.rPoincare.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        const double phi = normalizeAngle(kTwoPi * unitInterval(rng()));
        const double u = unitInterval(rng());
        const double r = radialInverseCdf(u, alpha, R);
        coords.phi[v] = phi;
        coords.rNative[v] = r;
        coords.rPoincare[v] = mapToPoincare(r);
    }
    return coords;
}

Graph generateFromCoordinates(const VertexCoordinates& coords, double R, double alpha,
                              const EdgePhaseOptions& options, PhaseTimings* timings) {
    const std::size_t n = coords.size();
    auto start = Clock::now();
    PolarQuadtree tree = PolarQuadtree::forDiskRadius(R, alpha, options.leafCapacity, options.isa);
    for (std::size_t v = 0; v < n; ++v) tree.insert(coords.poincare(v), static_cast<NodeId>(v));
    if (timings) timings->buildNs = elapsedNs(start);

    start = Clock::now();
    // Queries in angular order touch neighbouring leaves consecutively.
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return coords.phi[a] < coords.phi[b] || (coords.phi[a] == coords.phi[b] && a < b);
    });
    const unsigned threads = std::max(1u, options.threads);
    std::vector<std::vector<Edge>> buffers(threads);
    std::atomic<std::size_t> nextBlock{0};
    auto worker = [&](unsigned t) {
        std::vector<NodeId> found;
        std::vector<Edge>& local = buffers[t];
        for (;;) {
            const std::size_t block = nextBlock.fetch_add(1, std::memory_order_relaxed);
            const std::size_t begin = block * kEdgeBlock;
            if (begin >= n) break;
            const std::size_t end = std::min(n, begin + kEdgeBlock);
            for (std::size_t i = begin; i < end; ++i) {
                const NodeId v = order[i];
                const EuclideanCircle circle = hyperbolicCircleToEuclidean(coords.poincare(v), R);
                found.clear();
                tree.queryCircle(circle, found);
                for (NodeId w : found)
                    if (w > v) local.push_back({v, w});
            }
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    }

    std::size_t total = 0;
    for (const auto& b : buffers) total += b.size();
    std::vector<Edge> edges;
    edges.reserve(total);
    for (auto& b : buffers) {
        edges.insert(edges.end(), b.begin(), b.end());
        std::vector<Edge>().swap(b);
    }
    Graph g = Graph::fromEdges(n, std::move(edges));
    if (timings) timings->edgesNs = elapsedNs(start);
    return g;
}

GenerationResult generateDetailed(const GeneratorParams& params) {
    GenerationResult result;
    result.model = resolveModel(params);

    auto start = Clock::now();
    result.coords = samplePoints(params.n, result.model.alpha, result.model.R, params.seed);
    result.timings.samplingNs = elapsedNs(start);

    EdgePhaseOptions options{params.threads, params.leafCapacity, params.isa};
    result.graph = generateFromCoordinates(result.coords, result.model.R, result.model.alpha, options,
                                           &result.timings);

    if (params.longRangeFraction > 0.0) {
        start = Clock::now();
        const std::size_t before = result.graph.numEdges();
        result.graph = addLongRangeEdges(result.graph, params.longRangeFraction,
                                         params.seed ^ kLongRangeStream);
        result.longRangeEdges = result.graph.numEdges() - before;
        result.timings.longRangeNs = elapsedNs(start);
    }
    return result;
}

Graph generate(const GeneratorParams& params) { return generateDetailed(params).graph; }

Graph generateBruteForce(const VertexCoordinates& coords, double R) {
    const std::size_t n = coords.size();
    std::vector<PoincarePoint> points(n);
    for (std::size_t v = 0; v < n; ++v) points[v] = coords.poincare(v);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (poincareDistance(points[u], points[v]) < R)
                edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    return Graph::fromEdges(n, std::move(edges));
}

Graph addLongRangeEdges(const Graph& graph, double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction < 1.0))
        throw ParameterError("long-range fraction must lie in [0, 1)");
    const std::size_t n = graph.numVertices();
    const std::size_t m = graph.numEdges();
    // Guard against fraction * m landing an ulp above an integer.
    const auto wanted = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(m) - 1e-9));
    if (wanted == 0) return graph;
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n > 0 ? n - 1 : 0);
    if (static_cast<double>(wanted) > pairs - static_cast<double>(m))
        throw InfeasibleError("cannot add " + std::to_string(wanted) + " long-range edges: only " +
                              std::to_string(static_cast<std::uint64_t>(pairs) - m) +
                              " vertex pairs are absent");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    std::unordered_set<std::uint64_t> added;
    std::vector<Edge> edges = graph.edges();
    edges.reserve(m + wanted);
    while (added.size() < wanted) {
        auto u = static_cast<NodeId>(pick(rng));
        auto v = static_cast<NodeId>(pick(rng));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (graph.hasEdge(u, v)) continue;
        const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
        if (!added.insert(key).second) continue;
        edges.push_back({u, v});
    }
    return Graph::fromEdges(n, std::move(edges));
}

} // namespace rhg
