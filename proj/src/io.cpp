#include "rhg/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "rhg/errors.hpp"

namespace rhg {

GraphFormat parseGraphFormat(const std::string& name) {
    if (name == "edgelist") return GraphFormat::EdgeList;
    if (name == "metis") return GraphFormat::Metis;
    throw ParameterError("unknown graph format '" + name + "' (expected edgelist or metis)");
}

std::string formatRoundTrip(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void writeEdgeList(std::ostream& out, const Graph& g, const std::optional<EdgeListHeader>& header) {
    if (header)
        out << "# " << header->n << ' ' << header->m << ' ' << header->seed << ' '
            << formatRoundTrip(header->R) << ' ' << formatRoundTrip(header->alpha) << '\n';
    std::string buffer;
    buffer.reserve(1 << 16);
    char num[16];
    auto append = [&](NodeId x) {
        const auto res = std::to_chars(num, num + sizeof(num), x);
        buffer.append(num, res.ptr);
    };
    for (std::size_t u = 0; u < g.numVertices(); ++u) {
        for (NodeId v : g.neighbors(static_cast<NodeId>(u))) {
            if (v <= u) continue;
            append(static_cast<NodeId>(u));
            buffer.push_back(' ');
            append(v);
            buffer.push_back('\n');
            if (buffer.size() > (1 << 16) - 32) {
                out << buffer;
                buffer.clear();
            }
        }
    }
    out << buffer;
}

void writeMetis(std::ostream& out, const Graph& g) {
    out << g.numVertices() << ' ' << g.numEdges() << '\n';
    for (std::size_t u = 0; u < g.numVertices(); ++u) {
        bool first = true;
        for (NodeId v : g.neighbors(static_cast<NodeId>(u))) {
            if (!first) out << ' ';
            out << (static_cast<std::uint64_t>(v) + 1);
            first = false;
        }
        out << '\n';
    }
}

EdgeListFile readEdgeList(std::istream& in) {
    EdgeListFile file;
    std::vector<Edge> edges;
    std::string line;
    std::size_t lineNo = 0;
    NodeId maxId = 0;
    bool any = false;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#' || line[0] == '%') {
            if (!file.header) {
                std::istringstream fields(line.substr(1));
                EdgeListHeader h;
                if (fields >> h.n >> h.m >> h.seed >> h.R >> h.alpha) file.header = h;
            }
            continue;
        }
        const char* p = line.data();
        const char* end = p + line.size();
        std::uint64_t vals[2];
        for (int k = 0; k < 2; ++k) {
            while (p < end && (*p == ' ' || *p == '\t')) ++p;
            const auto res = std::from_chars(p, end, vals[k]);
            if (res.ec != std::errc())
                throw ParameterError("edge list line " + std::to_string(lineNo) + ": expected two vertex ids");
            p = res.ptr;
        }
        if (vals[0] > 0xFFFFFFFEull || vals[1] > 0xFFFFFFFEull)
            throw ParameterError("edge list line " + std::to_string(lineNo) + ": vertex id too large");
        const Edge e{static_cast<NodeId>(vals[0]), static_cast<NodeId>(vals[1])};
        maxId = std::max({maxId, e.u, e.v});
        any = true;
        edges.push_back(e);
    }
    std::size_t n = any ? static_cast<std::size_t>(maxId) + 1 : 0;
    if (file.header) {
        if (any && file.header->n < n)
            throw ParameterError("edge list header declares n = " + std::to_string(file.header->n) +
                                 " but ids reach " + std::to_string(maxId));
        n = file.header->n;
    }
    file.graph = Graph::fromEdges(n, std::move(edges));
    return file;
}

void writeGraphFile(const std::string& path, const Graph& g, GraphFormat format,
                    const std::optional<EdgeListHeader>& header) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    if (format == GraphFormat::EdgeList)
        writeEdgeList(out, g, header);
    else
        writeMetis(out, g);
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

EdgeListFile readEdgeListFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return readEdgeList(in);
}

} // namespace rhg
