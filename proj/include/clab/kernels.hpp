#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference and an AVX2
// variant; the AVX2 variants are built in their own translation unit and are
// only handed out when the running CPU reports avx2 and fma.

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace clab::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Powers of e(1/order): re[t] + i*im[t] = exp(2*pi*i*t/order).
struct RootTable {
    explicit RootTable(std::uint64_t order);

    std::uint64_t order;
    std::vector<double> re;
    std::vector<double> im;
};

struct KernelSet {
    Isa isa;

    /// out[a] += weight * table[(a * step) mod n] for a in [0, n), n = out.size() = table.size().
    void (*accumulate_gather)(std::span<std::uint64_t> out, std::span<const std::uint32_t> table,
                              std::uint64_t step, std::uint64_t weight);

    /// out[i] = ((shift + row[i]) mod n) * mult mod n, with row[i], shift, mult < n.
    void (*form_targets)(std::span<std::uint32_t> out, std::span<const std::uint32_t> row,
                         std::uint32_t shift, std::uint32_t mult, std::uint32_t n);

    /// sum_i weights[i] * root[(mult * exps[i]) mod order], exps[i] < order.
    std::complex<double> (*root_sum)(std::span<const std::uint32_t> exps, std::span<const double> weights,
                                     std::uint64_t mult, const RootTable& roots);
};

/// Largest modulus the vector paths handle; larger inputs take the scalar path inside each kernel.
inline constexpr std::uint64_t kVectorModulusLimit = std::uint64_t{1} << 26;

const KernelSet& scalar_kernels() noexcept;

/// nullptr when the AVX2 variants were not compiled in or the CPU lacks avx2/fma.
const KernelSet* avx2_kernels() noexcept;

/// Every kernel set usable on this machine, scalar first.
std::vector<const KernelSet*> available_kernels();

/// Best set for this CPU. CONGRUENCE_LAB_ISA=scalar forces the reference kernels.
const KernelSet& active_kernels();

namespace detail {
void accumulate_gather_scalar(std::span<std::uint64_t> out, std::span<const std::uint32_t> table,
                              std::uint64_t step, std::uint64_t weight);
void form_targets_scalar(std::span<std::uint32_t> out, std::span<const std::uint32_t> row,
                         std::uint32_t shift, std::uint32_t mult, std::uint32_t n);
std::complex<double> root_sum_scalar(std::span<const std::uint32_t> exps, std::span<const double> weights,
                                     std::uint64_t mult, const RootTable& roots);

const KernelSet* avx2_table() noexcept;
}  // namespace detail

}  // namespace clab::simd
