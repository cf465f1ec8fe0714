#include "rhg/graph.hpp"

#include <algorithm>
#include <string>

#include "rhg/errors.hpp"

namespace rhg {

Graph::Graph(std::size_t n) : offsets_(n + 1, 0) {}

Graph Graph::fromEdges(std::size_t n, std::vector<Edge> edges) {
    for (Edge& e : edges) {
        if (e.u >= n || e.v >= n)
            throw ParameterError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                 ") references a vertex outside [0, " + std::to_string(n) + ")");
        if (e.u == e.v) throw ParameterError("self-loop at vertex " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g(n);
    for (const Edge& e : edges) {
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.neighbors_.resize(2 * edges.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // With edges sorted by (u, v), vertex x first receives its smaller
    // neighbors in ascending order, then its larger ones: lists come out sorted.
    for (const Edge& e : edges) {
        g.neighbors_[cursor[e.u]++] = e.v;
        g.neighbors_[cursor[e.v]++] = e.u;
    }
    return g;
}

bool Graph::hasEdge(NodeId u, NodeId v) const {
    const auto adj = neighbors(u);
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<std::size_t> Graph::degrees() const {
    std::vector<std::size_t> out(numVertices());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = degree(static_cast<NodeId>(v));
    return out;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(numEdges());
    for (std::size_t u = 0; u < numVertices(); ++u)
        for (NodeId v : neighbors(static_cast<NodeId>(u)))
            if (v > u) out.push_back({static_cast<NodeId>(u), v});
    return out;
}

} // namespace rhg
