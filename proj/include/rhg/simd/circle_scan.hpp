#pragma once

// Leaf-scan kernels: select the points of a leaf that lie strictly inside a
// Euclidean query circle. Every variant evaluates
//     (x - cx)^2 + (y - cy)^2 < radiusSq
// with the same operation order and no fused multiply-add, so all variants
// return bit-identical selections.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace rhg::simd {

enum class Isa { Scalar, Avx2 };

struct CircleQuery {
    double cx = 0.0;
    double cy = 0.0;
    double radiusSq = 0.0;
};

/// Appends ids[i] for every i with point i inside the circle.
using CircleScanFn = void (*)(std::span<const double> xs, std::span<const double> ys,
                              std::span<const std::uint32_t> ids, const CircleQuery& q,
                              std::vector<std::uint32_t>& out);

void scanCircleScalar(std::span<const double> xs, std::span<const double> ys,
                      std::span<const std::uint32_t> ids, const CircleQuery& q,
                      std::vector<std::uint32_t>& out);

#if defined(RHG_HAVE_AVX2)
void scanCircleAvx2(std::span<const double> xs, std::span<const double> ys,
                    std::span<const std::uint32_t> ids, const CircleQuery& q,
                    std::vector<std::uint32_t>& out);
#endif

/// True if the variant was compiled in and the running CPU supports it.
bool isaAvailable(Isa isa);

/// Widest available variant on this machine.
Isa bestIsa();

CircleScanFn circleScanKernel(Isa isa);

std::string_view isaName(Isa isa);

} // namespace rhg::simd
