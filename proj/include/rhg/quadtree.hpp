#pragma once

// Polar quadtree over the Poincare disk. Angular splits halve the angle range;
// radial splits divide the radial probability mass of the model equally.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rhg/geometry.hpp"
#include "rhg/graph.hpp"
#include "rhg/simd/circle_scan.hpp"

namespace rhg {

/// Region [minPhi, maxPhi) x [minR, maxR) of the disk. Radii are Poincare
/// coordinates; the native equivalents are kept alongside so that radial
/// splits are computed without round-tripping through tanh/atanh.
struct CellBounds {
    double minPhi = 0.0;
    double maxPhi = kTwoPi;
    double minR = 0.0;
    double maxR = 0.0;
    double minRNative = 0.0;
    double maxRNative = 0.0;

    bool contains(const PoincarePoint& p) const {
        return minPhi <= p.phi && p.phi < maxPhi && minR <= p.r && p.r < maxR;
    }
};

/// Unit directions of a cell's two radial edges.
struct CellTrig {
    double cosMin = 1.0;
    double sinMin = 0.0;
    double cosMax = 1.0;
    double sinMax = 0.0;

    static CellTrig of(const CellBounds& b);
};

enum class CellRelation { Disjoint, Intersects, Contained };

/// Classifies a cell against a query circle. Errors are only ever toward
/// Intersects: Disjoint guarantees no point of the cell is strictly inside,
/// Contained guarantees every point is.
CellRelation cellCircleRelation(const CellBounds& bounds, const EuclideanCircle& circle);

/// Native radius splitting [minRNative, maxRNative] into two halves of equal
/// probability mass under growth parameter alpha.
double splittingRadius(double minRNative, double maxRNative, double alpha);

struct QueryStats {
    std::size_t visitedLeaves = 0;
    std::size_t visitedNodes = 0;
    std::size_t scannedPoints = 0;
};

struct CellCount {
    CellBounds bounds;
    std::size_t count = 0;
};

class PolarQuadtree {
public:
    static constexpr std::size_t kDefaultCapacity = 128;

    /// Root covers [0, 2pi) x [0, rootMaxR) with rootMaxR a Poincare radius.
    /// rootMaxRNative must equal mapToNative(rootMaxR) up to rounding.
    PolarQuadtree(double rootMaxR, double rootMaxRNative, double alpha,
                  std::size_t capacity = kDefaultCapacity, simd::Isa isa = simd::bestIsa());

    /// Tree for points of a hyperbolic disk with native radius R. The root's
    /// outer radius is widened by one ulp so that points at exactly R fit.
    static PolarQuadtree forDiskRadius(double R, double alpha,
                                       std::size_t capacity = kDefaultCapacity,
                                       simd::Isa isa = simd::bestIsa());

    /// Throws OutOfBoundsError if the point lies outside the root cell.
    void insert(const PoincarePoint& point, NodeId id);

    /// Appends every stored id whose point is strictly inside the circle.
    void queryCircle(const EuclideanCircle& circle, std::vector<NodeId>& out,
                     QueryStats* stats = nullptr) const;
    std::vector<NodeId> queryCircle(const EuclideanCircle& circle) const;

    std::size_t size() const { return size_; }
    std::size_t capacity() const { return capacity_; }
    double alpha() const { return alpha_; }
    const CellBounds& rootBounds() const { return nodes_.front().bounds; }
    simd::Isa isa() const { return isa_; }

    /// Maximum leaf depth (a lone root leaf has height 0).
    std::size_t height() const;
    std::size_t nodeCount() const { return nodes_.size(); }
    std::size_t leafCount() const;

    /// The 4^depth cells of the complete subdivision at the given depth with
    /// the number of stored points in each. Cells below existing leaves are
    /// subdivided virtually using the same split rule.
    std::vector<CellCount> cellsAtDepth(std::size_t depth) const;

    /// Visits every inner node's bounds and its four children's bounds.
    template <typename Fn>
    void forEachInnerNode(Fn&& fn) const {
        for (const Node& node : nodes_) {
            if (node.isLeaf()) continue;
            fn(node.bounds, nodes_[node.firstChild].bounds, nodes_[node.firstChild + 1].bounds,
               nodes_[node.firstChild + 2].bounds, nodes_[node.firstChild + 3].bounds);
        }
    }

    /// Child bounds produced when splitting `parent`.
    static void splitBounds(const CellBounds& parent, double alpha, CellBounds (&children)[4]);

private:
    static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

    struct Leaf {
        std::vector<double> xs;
        std::vector<double> ys;
        std::vector<double> phis;
        std::vector<double> rs;
        std::vector<NodeId> ids;

        std::size_t size() const { return ids.size(); }
    };

    struct Node {
        CellBounds bounds;
        CellTrig trig;
        std::uint32_t firstChild = kNone;
        std::uint32_t leaf = kNone;  // index into leaves_, kNone while empty
        std::uint32_t depth = 0;
        std::size_t count = 0;       // points in the subtree

        bool isLeaf() const { return firstChild == kNone; }
    };

    std::uint32_t childFor(const Node& node, const PoincarePoint& p) const;
    void appendToLeaf(std::uint32_t nodeIndex, double x, double y, double phi, double r, NodeId id);
    bool trySplit(std::uint32_t nodeIndex);
    void collectSubtree(std::uint32_t nodeIndex, std::vector<NodeId>& out) const;

    std::vector<Node> nodes_;
    std::vector<Leaf> leaves_;
    double alpha_;
    std::size_t capacity_;
    std::size_t size_ = 0;
    simd::Isa isa_;
    simd::CircleScanFn scan_;
};

} // namespace rhg
