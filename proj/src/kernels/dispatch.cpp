#include <cstdlib>
#include <string>

#include "clab/kernels.hpp"

namespace clab::simd {

namespace {

constexpr KernelSet kScalar{Isa::Scalar, &detail::accumulate_gather_scalar, &detail::form_targets_scalar,
                            &detail::root_sum_scalar};

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

}  // namespace

#ifndef CLAB_HAVE_AVX2
const KernelSet* detail::avx2_table() noexcept { return nullptr; }
#endif

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

const KernelSet& scalar_kernels() noexcept { return kScalar; }

const KernelSet* avx2_kernels() noexcept {
    static const bool supported = cpu_has_avx2();
    return supported ? detail::avx2_table() : nullptr;
}

std::vector<const KernelSet*> available_kernels() {
    std::vector<const KernelSet*> out{&kScalar};
    if (const KernelSet* k = avx2_kernels()) out.push_back(k);
    return out;
}

const KernelSet& active_kernels() {
    static const KernelSet* chosen = [] {
        const char* forced = std::getenv("CONGRUENCE_LAB_ISA");
        if (forced != nullptr && std::string(forced) == "scalar") return &kScalar;
        const KernelSet* k = avx2_kernels();
        return k != nullptr ? k : &kScalar;
    }();
    return *chosen;
}

}  // namespace clab::simd
