#include "rhg/quadtree.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rhg/errors.hpp"

namespace rhg {

CellTrig CellTrig::of(const CellBounds& b) {
    return {std::cos(b.minPhi), std::sin(b.minPhi), std::cos(b.maxPhi), std::sin(b.maxPhi)};
}

namespace {

// Slack applied to pruning decisions so that rounding in the cell geometry
// can only turn a decision into Intersects.
constexpr double kRelationSlack = 1e-13;

bool angleWithin(double phi, double lo, double hi) { return lo <= phi && phi <= hi; }

// Distance from c to the radial segment at unit direction (ux, uy), r in [r0, r1].
double pointSegmentDistance(const Cartesian& c, double ux, double uy, double r0, double r1) {
    const double t = std::clamp(c.x * ux + c.y * uy, r0, r1);
    const double dx = c.x - t * ux;
    const double dy = c.y - t * uy;
    return std::sqrt(dx * dx + dy * dy);
}

double cornerDistance(const Cartesian& c, double ux, double uy, double r) {
    const double dx = c.x - r * ux;
    const double dy = c.y - r * uy;
    return std::sqrt(dx * dx + dy * dy);
}

struct CircleContext {
    Cartesian c;
    double rc;
    double phic;
    double antipode;
    double radius;

    explicit CircleContext(const EuclideanCircle& circle)
        : c(circle.cartesianCenter()),
          rc(circle.center.r),
          phic(circle.center.phi),
          antipode(normalizeAngle(circle.center.phi + std::numbers::pi)),
          radius(circle.radius) {}
};

CellRelation relation(const CellBounds& b, const CellTrig& t, const CircleContext& q) {
    double minDist;
    double maxDist;
    if (q.rc == 0.0) {
        minDist = b.minR;
        maxDist = b.maxR;
    } else {
        const bool inAngle = angleWithin(q.phic, b.minPhi, b.maxPhi);
        if (inAngle && b.minR <= q.rc && q.rc <= b.maxR) {
            minDist = 0.0;
        } else {
            minDist = std::numeric_limits<double>::infinity();
            if (inAngle) minDist = std::min(std::abs(q.rc - b.minR), std::abs(q.rc - b.maxR));
            minDist = std::min(minDist, pointSegmentDistance(q.c, t.cosMin, t.sinMin, b.minR, b.maxR));
            minDist = std::min(minDist, pointSegmentDistance(q.c, t.cosMax, t.sinMax, b.minR, b.maxR));
        }

        maxDist = std::max({cornerDistance(q.c, t.cosMin, t.sinMin, b.minR),
                            cornerDistance(q.c, t.cosMin, t.sinMin, b.maxR),
                            cornerDistance(q.c, t.cosMax, t.sinMax, b.minR),
                            cornerDistance(q.c, t.cosMax, t.sinMax, b.maxR)});
        if (angleWithin(q.antipode, b.minPhi, b.maxPhi)) maxDist = std::max(maxDist, q.rc + b.maxR);
    }

    if (minDist >= q.radius + kRelationSlack) return CellRelation::Disjoint;
    if (maxDist + kRelationSlack < q.radius) return CellRelation::Contained;
    return CellRelation::Intersects;
}

} // namespace

CellRelation cellCircleRelation(const CellBounds& b, const EuclideanCircle& circle) {
    return relation(b, CellTrig::of(b), CircleContext(circle));
}

double splittingRadius(double minRNative, double maxRNative, double alpha) {
    assert(minRNative >= 0.0 && minRNative < maxRNative && alpha > 0.0);
    const double hi = alpha * maxRNative;
    const double lo = alpha * minRNative;
    if (hi < 300.0) return std::acosh((std::cosh(hi) + std::cosh(lo)) / 2.0) / alpha;
    // acosh(y) = ln(2y) - O(1/y^2); factor e^hi out of cosh(hi) + cosh(lo).
    const double tail = std::exp(-2.0 * hi) + std::exp(lo - hi) + std::exp(-lo - hi);
    return (hi + std::log1p(tail) - std::log(2.0)) / alpha;
}

PolarQuadtree::PolarQuadtree(double rootMaxR, double rootMaxRNative, double alpha,
                             std::size_t capacity, simd::Isa isa)
    : alpha_(alpha), capacity_(capacity), isa_(isa), scan_(simd::circleScanKernel(isa)) {
    if (!(rootMaxR > 0.0 && rootMaxR < 1.0))
        throw ParameterError("quadtree root radius must lie in (0, 1)");
    if (!(alpha > 0.0)) throw ParameterError("quadtree alpha must be positive");
    if (capacity == 0) throw ParameterError("quadtree leaf capacity must be at least 1");
    if (!simd::isaAvailable(isa)) isa_ = simd::Isa::Scalar;
    Node root;
    root.bounds = CellBounds{0.0, kTwoPi, 0.0, rootMaxR, 0.0, rootMaxRNative};
    root.trig = CellTrig::of(root.bounds);
    nodes_.push_back(root);
}

PolarQuadtree PolarQuadtree::forDiskRadius(double R, double alpha, std::size_t capacity, simd::Isa isa) {
    if (!(R > 0.0)) throw ParameterError("disk radius must be positive");
    const double rootMaxR = std::nextafter(mapToPoincare(R), 2.0);
    if (!(rootMaxR < 1.0))
        throw ParameterError("disk radius " + std::to_string(R) +
                             " exceeds the double-precision range of the Poincare disk");
    return PolarQuadtree(rootMaxR, R, alpha, capacity, isa);
}

void PolarQuadtree::splitBounds(const CellBounds& p, double alpha, CellBounds (&children)[4]) {
    const double midPhi = 0.5 * (p.minPhi + p.maxPhi);
    const double midNative = splittingRadius(p.minRNative, p.maxRNative, alpha);
    const double midR = mapToPoincare(midNative);
    children[0] = CellBounds{p.minPhi, midPhi, p.minR, midR, p.minRNative, midNative};
    children[1] = CellBounds{p.minPhi, midPhi, midR, p.maxR, midNative, p.maxRNative};
    children[2] = CellBounds{midPhi, p.maxPhi, p.minR, midR, p.minRNative, midNative};
    children[3] = CellBounds{midPhi, p.maxPhi, midR, p.maxR, midNative, p.maxRNative};
}

std::uint32_t PolarQuadtree::childFor(const Node& node, const PoincarePoint& p) const {
    const CellBounds& first = nodes_[node.firstChild].bounds;
    const std::uint32_t angular = p.phi >= first.maxPhi ? 2u : 0u;
    const std::uint32_t radial = p.r >= first.maxR ? 1u : 0u;
    return node.firstChild + angular + radial;
}

void PolarQuadtree::appendToLeaf(std::uint32_t nodeIndex, double x, double y, double phi, double r,
                                 NodeId id) {
    Node& node = nodes_[nodeIndex];
    if (node.leaf == kNone) {
        node.leaf = static_cast<std::uint32_t>(leaves_.size());
        leaves_.emplace_back();
    }
    Leaf& leaf = leaves_[node.leaf];
    leaf.xs.push_back(x);
    leaf.ys.push_back(y);
    leaf.phis.push_back(phi);
    leaf.rs.push_back(r);
    leaf.ids.push_back(id);
}

bool PolarQuadtree::trySplit(std::uint32_t nodeIndex) {
    CellBounds children[4];
    splitBounds(nodes_[nodeIndex].bounds, alpha_, children);
    const CellBounds& b = nodes_[nodeIndex].bounds;
    const double midPhi = children[0].maxPhi;
    const double midR = children[0].maxR;
    // Cells that can no longer be subdivided in floating point stay overfull.
    if (!(b.minPhi < midPhi && midPhi < b.maxPhi && b.minR < midR && midR < b.maxR)) return false;

    const auto first = static_cast<std::uint32_t>(nodes_.size());
    const std::uint32_t depth = nodes_[nodeIndex].depth + 1;
    for (const CellBounds& cb : children) {
        Node child;
        child.bounds = cb;
        child.trig = CellTrig::of(cb);
        child.depth = depth;
        nodes_.push_back(child);
    }
    Node& node = nodes_[nodeIndex];
    node.firstChild = first;
    const std::uint32_t leafIndex = node.leaf;
    node.leaf = kNone;

    Leaf old = std::move(leaves_[leafIndex]);
    // Reuse the slot for the first child that receives points.
    leaves_[leafIndex] = Leaf{};
    bool slotFree = true;
    for (std::size_t i = 0; i < old.size(); ++i) {
        const PoincarePoint p{old.phis[i], old.rs[i]};
        const std::uint32_t c = childFor(nodes_[nodeIndex], p);
        Node& child = nodes_[c];
        if (child.leaf == kNone && slotFree) {
            child.leaf = leafIndex;
            slotFree = false;
        }
        ++child.count;
        appendToLeaf(c, old.xs[i], old.ys[i], old.phis[i], old.rs[i], old.ids[i]);
    }
    return true;
}

void PolarQuadtree::insert(const PoincarePoint& point, NodeId id) {
    const CellBounds& root = nodes_.front().bounds;
    if (!root.contains(point))
        throw OutOfBoundsError("point (phi=" + std::to_string(point.phi) + ", r=" +
                               std::to_string(point.r) + ") lies outside the quadtree root");
    std::uint32_t index = 0;
    for (;;) {
        Node& node = nodes_[index];
        ++node.count;
        if (node.isLeaf()) break;
        index = childFor(node, point);
    }
    const Cartesian c = toCartesian(point);
    appendToLeaf(index, c.x, c.y, point.phi, point.r, id);
    ++size_;

    // A split may push every point into one child, which then splits again.
    while (leaves_[nodes_[index].leaf].size() > capacity_) {
        if (!trySplit(index)) break;
        const Node& node = nodes_[index];
        std::uint32_t next = kNone;
        for (std::uint32_t k = 0; k < 4; ++k) {
            const Node& child = nodes_[node.firstChild + k];
            if (child.leaf != kNone && leaves_[child.leaf].size() > capacity_) next = node.firstChild + k;
        }
        if (next == kNone) break;
        index = next;
    }
}

void PolarQuadtree::collectSubtree(std::uint32_t nodeIndex, std::vector<NodeId>& out) const {
    std::vector<std::uint32_t> stack{nodeIndex};
    while (!stack.empty()) {
        const Node& node = nodes_[stack.back()];
        stack.pop_back();
        if (node.isLeaf()) {
            if (node.leaf != kNone) {
                const auto& ids = leaves_[node.leaf].ids;
                out.insert(out.end(), ids.begin(), ids.end());
            }
        } else {
            for (std::uint32_t k = 0; k < 4; ++k) stack.push_back(node.firstChild + k);
        }
    }
}

void PolarQuadtree::queryCircle(const EuclideanCircle& circle, std::vector<NodeId>& out,
                                QueryStats* stats) const {
    const CircleContext ctx(circle);
    const simd::CircleQuery q{ctx.c.x, ctx.c.y, circle.radius * circle.radius};
    std::vector<std::uint32_t> stack;
    stack.reserve(256);
    stack.push_back(0);
    while (!stack.empty()) {
        const std::uint32_t index = stack.back();
        stack.pop_back();
        const Node& node = nodes_[index];
        if (stats) {
            ++stats->visitedNodes;
            if (node.isLeaf()) ++stats->visitedLeaves;
        }
        if (node.count == 0) continue;
        const CellRelation rel = relation(node.bounds, node.trig, ctx);
        if (rel == CellRelation::Disjoint) continue;
        if (rel == CellRelation::Contained) {
            collectSubtree(index, out);
            continue;
        }
        if (node.isLeaf()) {
            const Leaf& leaf = leaves_[node.leaf];
            if (stats) stats->scannedPoints += leaf.size();
            scan_(leaf.xs, leaf.ys, leaf.ids, q, out);
        } else {
            for (std::uint32_t k = 0; k < 4; ++k) stack.push_back(node.firstChild + k);
        }
    }
}

std::vector<NodeId> PolarQuadtree::queryCircle(const EuclideanCircle& circle) const {
    std::vector<NodeId> out;
    queryCircle(circle, out);
    return out;
}

std::size_t PolarQuadtree::height() const {
    std::size_t h = 0;
    for (const Node& node : nodes_)
        if (node.isLeaf()) h = std::max<std::size_t>(h, node.depth);
    return h;
}

std::size_t PolarQuadtree::leafCount() const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.isLeaf(); }));
}

std::vector<CellCount> PolarQuadtree::cellsAtDepth(std::size_t depth) const {
    std::vector<CellCount> out;
    out.reserve(std::size_t{1} << (2 * std::min<std::size_t>(depth, 12)));

    struct Virtual {
        CellBounds bounds;
        std::size_t depth;
    };
    // Virtual subdivision below a leaf: count the leaf's points per cell.
    auto subdivide = [&](const Node& leafNode) {
        std::vector<Virtual> stack{{leafNode.bounds, leafNode.depth}};
        while (!stack.empty()) {
            const Virtual v = stack.back();
            stack.pop_back();
            if (v.depth == depth) {
                CellCount cc{v.bounds, 0};
                if (leafNode.leaf != kNone) {
                    const Leaf& leaf = leaves_[leafNode.leaf];
                    for (std::size_t i = 0; i < leaf.size(); ++i)
                        if (v.bounds.contains(PoincarePoint{leaf.phis[i], leaf.rs[i]})) ++cc.count;
                }
                out.push_back(cc);
                continue;
            }
            CellBounds children[4];
            splitBounds(v.bounds, alpha_, children);
            for (int k = 3; k >= 0; --k) stack.push_back({children[k], v.depth + 1});
        }
    };

    std::vector<std::uint32_t> stack{0};
    while (!stack.empty()) {
        const Node& node = nodes_[stack.back()];
        stack.pop_back();
        if (node.depth == depth) {
            out.push_back({node.bounds, node.count});
        } else if (node.isLeaf()) {
            subdivide(node);
        } else {
            for (int k = 3; k >= 0; --k) stack.push_back(node.firstChild + static_cast<std::uint32_t>(k));
        }
    }
    return out;
}

} // namespace rhg
