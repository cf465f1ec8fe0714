#include "rhg/simd/circle_scan.hpp"

namespace rhg::simd {

void scanCircleScalar(std::span<const double> xs, std::span<const double> ys,
                      std::span<const std::uint32_t> ids, const CircleQuery& q,
                      std::vector<std::uint32_t>& out) {
    const std::size_t n = ids.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - q.cx;
        const double dy = ys[i] - q.cy;
        const double dxx = dx * dx;
        const double dyy = dy * dy;
        if (dxx + dyy < q.radiusSq) out.push_back(ids[i]);
    }
}

} // namespace rhg::simd
