#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rhg {

using NodeId = std::uint32_t;

struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph in compressed adjacency form. Every neighbor list
/// is sorted ascending; u appears in adj(v) iff v appears in adj(u).
class Graph {
public:
    Graph() = default;

    /// Edgeless graph on n vertices.
    explicit Graph(std::size_t n);

    /// Builds from an undirected edge list. Edges are normalized to u < v and
    /// duplicates merged. Self-loops and ids >= n throw ParameterError.
    static Graph fromEdges(std::size_t n, std::vector<Edge> edges);

    std::size_t numVertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t numEdges() const { return neighbors_.size() / 2; }

    std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
    std::span<const NodeId> neighbors(NodeId v) const {
        return {neighbors_.data() + offsets_[v], degree(v)};
    }
    bool hasEdge(NodeId u, NodeId v) const;

    std::vector<std::size_t> degrees() const;

    /// Edges with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> neighbors_;
};

} // namespace rhg
