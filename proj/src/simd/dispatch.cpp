#include "rhg/simd/circle_scan.hpp"

namespace rhg::simd {

bool isaAvailable(Isa isa) {
    switch (isa) {
    case Isa::Scalar:
        return true;
    case Isa::Avx2:
#if defined(RHG_HAVE_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

Isa bestIsa() {
    static const Isa best = isaAvailable(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
    return best;
}

CircleScanFn circleScanKernel(Isa isa) {
#if defined(RHG_HAVE_AVX2)
    if (isa == Isa::Avx2 && isaAvailable(Isa::Avx2)) return &scanCircleAvx2;
#endif
    (void)isa;
    return &scanCircleScalar;
}

std::string_view isaName(Isa isa) {
    switch (isa) {
    case Isa::Scalar:
        return "scalar";
    case Isa::Avx2:
        return "avx2";
    }
    return "unknown";
}

} // namespace rhg::simd
