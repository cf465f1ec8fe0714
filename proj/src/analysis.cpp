#include "rhg/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rhg/errors.hpp"

namespace rhg {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

struct BfsResult {
    std::size_t eccentricity = 0;
    NodeId farthest = 0;
};

// BFS restricted to the component of source; parent is optional.
BfsResult bfs(const Graph& g, NodeId source, std::vector<std::size_t>& dist,
              std::vector<NodeId>* parent, std::vector<NodeId>& queue) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    queue.clear();
    queue.push_back(source);
    dist[source] = 0;
    BfsResult out{0, source};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        const std::size_t du = dist[u];
        if (du > out.eccentricity) out = {du, u};
        for (NodeId w : g.neighbors(u)) {
            if (dist[w] != kUnreached) continue;
            dist[w] = du + 1;
            if (parent) (*parent)[w] = u;
            queue.push_back(w);
        }
    }
    return out;
}

std::string formatDouble(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string formatOptional(const std::optional<double>& x) {
    return x ? formatDouble(*x) : std::string("nan");
}

} // namespace

namespace {

// Calls fn(u, v, w) once per triangle, orienting each edge from lower to
// higher (degree, id) rank.
template <typename Fn>
void forEachTriangle(const Graph& g, Fn&& fn) {
    const std::size_t n = g.numVertices();
    auto before = [&](NodeId a, NodeId b) {
        const std::size_t da = g.degree(a);
        const std::size_t db = g.degree(b);
        return da < db || (da == db && a < b);
    };
    std::vector<std::size_t> offsets(n + 1, 0);
    for (std::size_t u = 0; u < n; ++u)
        for (NodeId w : g.neighbors(static_cast<NodeId>(u)))
            if (before(static_cast<NodeId>(u), w)) ++offsets[u + 1];
    for (std::size_t u = 0; u < n; ++u) offsets[u + 1] += offsets[u];
    std::vector<NodeId> out(offsets[n]);
    for (std::size_t u = 0; u < n; ++u) {
        std::size_t k = offsets[u];
        for (NodeId w : g.neighbors(static_cast<NodeId>(u)))
            if (before(static_cast<NodeId>(u), w)) out[k++] = w;
    }

    std::vector<std::uint8_t> mark(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t i = offsets[u]; i < offsets[u + 1]; ++i) mark[out[i]] = 1;
        for (std::size_t i = offsets[u]; i < offsets[u + 1]; ++i) {
            const NodeId v = out[i];
            for (std::size_t j = offsets[v]; j < offsets[v + 1]; ++j)
                if (mark[out[j]]) fn(static_cast<NodeId>(u), v, out[j]);
        }
        for (std::size_t i = offsets[u]; i < offsets[u + 1]; ++i) mark[out[i]] = 0;
    }
}

} // namespace

std::uint64_t triangleCount(const Graph& g) {
    std::uint64_t triangles = 0;
    forEachTriangle(g, [&](NodeId, NodeId, NodeId) { ++triangles; });
    return triangles;
}

std::vector<std::uint64_t> vertexTriangleCounts(const Graph& g) {
    std::vector<std::uint64_t> t(g.numVertices(), 0);
    forEachTriangle(g, [&](NodeId u, NodeId v, NodeId w) {
        ++t[u];
        ++t[v];
        ++t[w];
    });
    return t;
}

double averageLocalClusteringCoefficient(const Graph& g) {
    const std::size_t n = g.numVertices();
    if (n == 0) return 0.0;
    const std::vector<std::uint64_t> t = vertexTriangleCounts(g);
    double sum = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        const double d = static_cast<double>(g.degree(static_cast<NodeId>(v)));
        if (d >= 2) sum += 2.0 * static_cast<double>(t[v]) / (d * (d - 1.0));
    }
    return sum / static_cast<double>(n);
}

double globalClusteringCoefficient(const Graph& g) {
    std::uint64_t triads = 0;
    for (std::size_t v = 0; v < g.numVertices(); ++v) {
        const std::uint64_t d = g.degree(static_cast<NodeId>(v));
        if (d >= 2) triads += d * (d - 1) / 2;
    }
    if (triads == 0) return 0.0;
    return 3.0 * static_cast<double>(triangleCount(g)) / static_cast<double>(triads);
}

std::optional<double> degreeAssortativity(const Graph& g) {
    if (g.numEdges() == 0) return std::nullopt;
    // Over directed incidences both marginals coincide:
    // S = 2m, Sx = sum d^2, Sxx = sum d^3, Sxy = 2 sum_{edges} d_u d_v.
    using Wide = __int128;
    Wide s = 0, sx = 0, sxx = 0, sxy = 0;
    for (std::size_t u = 0; u < g.numVertices(); ++u) {
        const Wide du = static_cast<Wide>(g.degree(static_cast<NodeId>(u)));
        s += du;
        sx += du * du;
        sxx += du * du * du;
        for (NodeId w : g.neighbors(static_cast<NodeId>(u))) sxy += du * static_cast<Wide>(g.degree(w));
    }
    const Wide num = s * sxy - sx * sx;
    const Wide var = s * sxx - sx * sx;
    if (var == 0) return std::nullopt;
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(var));
}

std::vector<std::uint32_t> componentLabels(const Graph& g) {
    const std::size_t n = g.numVertices();
    constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> label(n, kUnset);
    std::vector<NodeId> queue;
    std::uint32_t next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] != kUnset) continue;
        queue.clear();
        queue.push_back(static_cast<NodeId>(s));
        label[s] = next;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (NodeId w : g.neighbors(queue[head]))
                if (label[w] == kUnset) {
                    label[w] = next;
                    queue.push_back(w);
                }
        ++next;
    }
    return label;
}

std::vector<std::size_t> connectedComponents(const Graph& g) {
    const auto labels = componentLabels(g);
    std::vector<std::size_t> sizes;
    for (std::uint32_t l : labels) {
        if (l >= sizes.size()) sizes.resize(l + 1, 0);
        ++sizes[l];
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
}

std::vector<std::uint32_t> coreDecomposition(const Graph& g) {
    // Bucket-based peeling in O(n + m).
    const std::size_t n = g.numVertices();
    std::vector<std::uint32_t> deg(n);
    std::uint32_t maxDeg = 0;
    for (std::size_t v = 0; v < n; ++v) {
        deg[v] = static_cast<std::uint32_t>(g.degree(static_cast<NodeId>(v)));
        maxDeg = std::max(maxDeg, deg[v]);
    }
    std::vector<std::size_t> binStart(maxDeg + 2, 0);
    for (std::size_t v = 0; v < n; ++v) ++binStart[deg[v] + 1];
    for (std::size_t d = 0; d <= maxDeg; ++d) binStart[d + 1] += binStart[d];
    std::vector<NodeId> order(n);
    std::vector<std::size_t> pos(n);
    {
        std::vector<std::size_t> cursor(binStart.begin(), binStart.end() - 1);
        for (std::size_t v = 0; v < n; ++v) {
            pos[v] = cursor[deg[v]]++;
            order[pos[v]] = static_cast<NodeId>(v);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const NodeId v = order[i];
        for (NodeId w : g.neighbors(v)) {
            if (deg[w] <= deg[v]) continue;
            // Move w to the front of its bin, then shrink the bin.
            const std::uint32_t dw = deg[w];
            const std::size_t pw = pos[w];
            const std::size_t front = binStart[dw];
            const NodeId other = order[front];
            if (other != w) {
                std::swap(order[pw], order[front]);
                pos[other] = pw;
                pos[w] = front;
            }
            ++binStart[dw];
            --deg[w];
        }
    }
    return deg;
}

std::vector<std::size_t> bfsDistances(const Graph& g, NodeId source) {
    std::vector<std::size_t> dist(g.numVertices());
    std::vector<NodeId> queue;
    bfs(g, source, dist, nullptr, queue);
    return dist;
}

DiameterBounds diameterBounds(const Graph& g, const DiameterOptions& options) {
    const std::size_t n = g.numVertices();
    if (n == 0) return {};
    const auto labels = componentLabels(g);
    std::vector<std::size_t> sizes;
    for (std::uint32_t l : labels) {
        if (l >= sizes.size()) sizes.resize(l + 1, 0);
        ++sizes[l];
    }
    const auto largest = static_cast<std::uint32_t>(
        std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

    std::vector<std::size_t> dist(n);
    std::vector<NodeId> queue;

    if (sizes[largest] <= options.exactThreshold) {
        std::size_t diameter = 0;
        for (std::size_t v = 0; v < n; ++v)
            if (labels[v] == largest)
                diameter = std::max(diameter, bfs(g, static_cast<NodeId>(v), dist, nullptr, queue).eccentricity);
        return {diameter, diameter};
    }

    // Start from the highest-degree vertex of the largest component.
    NodeId start = 0;
    std::size_t best = 0;
    bool found = false;
    for (std::size_t v = 0; v < n; ++v) {
        if (labels[v] != largest) continue;
        const std::size_t d = g.degree(static_cast<NodeId>(v));
        if (!found || d > best) {
            start = static_cast<NodeId>(v);
            best = d;
            found = true;
        }
    }

    DiameterBounds bounds{0, std::numeric_limits<std::size_t>::max()};
    auto record = [&](std::size_t ecc) {
        bounds.lower = std::max(bounds.lower, ecc);
        bounds.upper = std::min(bounds.upper, 2 * ecc);
    };
    std::vector<NodeId> parent(n);
    const std::size_t sweeps = std::max<std::size_t>(options.sweeps, 1);
    for (std::size_t s = 0; s < sweeps && bounds.lower < bounds.upper; ++s) {
        const BfsResult fromStart = bfs(g, start, dist, nullptr, queue);
        record(fromStart.eccentricity);
        const NodeId a = fromStart.farthest;
        const BfsResult fromA = bfs(g, a, dist, &parent, queue);
        record(fromA.eccentricity);
        // Midpoint of the a-b path is a good candidate for a central vertex.
        NodeId mid = fromA.farthest;
        for (std::size_t step = 0; step < fromA.eccentricity / 2; ++step) mid = parent[mid];
        start = mid;
    }
    const BfsResult fromMid = bfs(g, start, dist, nullptr, queue);
    record(fromMid.eccentricity);
    return bounds;
}

double powerLawExponentMLE(std::span<const std::size_t> degrees, std::size_t kMin) {
    if (kMin < 1) throw ParameterError("power-law kMin must be at least 1");
    const double shift = static_cast<double>(kMin) - 0.5;
    std::size_t tail = 0;
    double sum = 0.0;
    std::size_t first = 0;
    bool constant = true;
    for (std::size_t k : degrees) {
        if (k < kMin) continue;
        if (tail == 0) first = k;
        else if (k != first) constant = false;
        ++tail;
        sum += std::log(static_cast<double>(k) / shift);
    }
    if (tail < 10)
        throw InsufficientDataError("power-law fit needs at least 10 degrees >= kMin, got " +
                                    std::to_string(tail));
    if (constant) throw InsufficientDataError("power-law fit: every tail degree is identical");
    return 1.0 + static_cast<double>(tail) / sum;
}

std::size_t defaultPowerLawKMin(std::span<const std::size_t> degrees) {
    if (degrees.empty()) return 5;
    std::vector<std::size_t> sorted(degrees.begin(), degrees.end());
    const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
    std::nth_element(sorted.begin(), mid, sorted.end());
    return std::max<std::size_t>(5, *mid);
}

AnalysisReport analyze(const Graph& g, const AnalysisOptions& options) {
    AnalysisReport r;
    r.n = g.numVertices();
    r.m = g.numEdges();
    const auto degrees = g.degrees();
    r.avgDegree = r.n ? 2.0 * static_cast<double>(r.m) / static_cast<double>(r.n) : 0.0;
    r.maxDegree = degrees.empty() ? 0.0 : static_cast<double>(*std::max_element(degrees.begin(), degrees.end()));
    r.globalClusteringCoefficient = globalClusteringCoefficient(g);
    r.averageLocalClustering = averageLocalClusteringCoefficient(g);
    r.degreeAssortativity = degreeAssortativity(g);
    const auto components = connectedComponents(g);
    r.componentCount = components.size();
    r.largestComponentFraction =
        r.n ? static_cast<double>(components.front()) / static_cast<double>(r.n) : 0.0;
    const auto cores = coreDecomposition(g);
    r.maxCoreNumber = cores.empty() ? 0 : *std::max_element(cores.begin(), cores.end());
    const DiameterBounds diameter = diameterBounds(g, options.diameter);
    r.diameterLower = diameter.lower;
    r.diameterUpper = diameter.upper;
    r.kMin = options.kMin.value_or(defaultPowerLawKMin(degrees));
    try {
        r.powerLawExponent = powerLawExponentMLE(degrees, r.kMin);
    } catch (const InsufficientDataError&) {
        r.powerLawExponent.reset();
    }
    return r;
}

const std::vector<std::string>& reportFieldNames() {
    static const std::vector<std::string> names{
        "n", "m", "avg_degree", "max_degree", "clustering", "avg_local_clustering",
        "assortativity", "components",
        "largest_component_fraction", "max_core", "diameter_lower", "diameter_upper",
        "power_law_exponent", "k_min"};
    return names;
}

std::vector<std::string> reportFieldValues(const AnalysisReport& r) {
    return {std::to_string(r.n),
            std::to_string(r.m),
            formatDouble(r.avgDegree),
            formatDouble(r.maxDegree),
            formatDouble(r.globalClusteringCoefficient),
            formatDouble(r.averageLocalClustering),
            formatOptional(r.degreeAssortativity),
            std::to_string(r.componentCount),
            formatDouble(r.largestComponentFraction),
            std::to_string(r.maxCoreNumber),
            std::to_string(r.diameterLower),
            std::to_string(r.diameterUpper),
            formatOptional(r.powerLawExponent),
            std::to_string(r.kMin)};
}

std::string formatReport(const AnalysisReport& report) {
    const auto& names = reportFieldNames();
    const auto values = reportFieldValues(report);
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) out += names[i] + "=" + values[i] + "\n";
    return out;
}

AnalysisReport parseReport(const std::string& text) {
    AnalysisReport r;
    std::istringstream in(text);
    std::string line;
    auto optionalValue = [](const std::string& v) -> std::optional<double> {
        if (v == "nan") return std::nullopt;
        return std::stod(v);
    };
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "n") r.n = std::stoull(value);
        else if (key == "m") r.m = std::stoull(value);
        else if (key == "avg_degree") r.avgDegree = std::stod(value);
        else if (key == "max_degree") r.maxDegree = std::stod(value);
        else if (key == "clustering") r.globalClusteringCoefficient = std::stod(value);
        else if (key == "avg_local_clustering") r.averageLocalClustering = std::stod(value);
        else if (key == "assortativity") r.degreeAssortativity = optionalValue(value);
        else if (key == "components") r.componentCount = std::stoull(value);
        else if (key == "largest_component_fraction") r.largestComponentFraction = std::stod(value);
        else if (key == "max_core") r.maxCoreNumber = std::stoull(value);
        else if (key == "diameter_lower") r.diameterLower = std::stoull(value);
        else if (key == "diameter_upper") r.diameterUpper = std::stoull(value);
        else if (key == "power_law_exponent") r.powerLawExponent = optionalValue(value);
        else if (key == "k_min") r.kMin = std::stoull(value);
    }
    return r;
}

} // namespace rhg
