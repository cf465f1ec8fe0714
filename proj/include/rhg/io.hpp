#pragma once

// Graph file formats.
//
// Edge list: optional header "# n m seed R alpha", then one "u v" line per
// edge with 0-based ids, u < v, sorted lexicographically.
// METIS: "n m" header, then line i lists the 1-based neighbors of vertex i.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "rhg/graph.hpp"

namespace rhg {

struct EdgeListHeader {
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    double R = 0.0;
    double alpha = 0.0;
};

struct EdgeListFile {
    Graph graph;
    std::optional<EdgeListHeader> header;
};

enum class GraphFormat { EdgeList, Metis };

GraphFormat parseGraphFormat(const std::string& name);

/// Shortest decimal form that parses back to the same double.
std::string formatRoundTrip(double x);

void writeEdgeList(std::ostream& out, const Graph& g, const std::optional<EdgeListHeader>& header);
void writeMetis(std::ostream& out, const Graph& g);

/// Reads an edge list. Lines starting with '#' are comments; the first
/// comment line with five fields is taken as the header and fixes n. Without
/// one, n is one past the largest id. Duplicate edges are merged; malformed
/// lines and self-loops throw ParameterError.
EdgeListFile readEdgeList(std::istream& in);

void writeGraphFile(const std::string& path, const Graph& g, GraphFormat format,
                    const std::optional<EdgeListHeader>& header);
EdgeListFile readEdgeListFile(const std::string& path);

} // namespace rhg
