#include "regdil/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace regdil::kernels {

#if !defined(REGDIL_HAVE_AVX2)
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool cpu_supports(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(REGDIL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return avx2_table() != nullptr && __builtin_cpu_supports("avx2") &&
                   __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

namespace {

const KernelTable* table_for(Isa isa) noexcept {
    if (!cpu_supports(isa)) return nullptr;
    return isa == Isa::avx2 ? avx2_table() : &scalar_table();
}

const KernelTable* initial_table() noexcept {
    if (const char* env = std::getenv("REGDIL_ISA")) {
        const std::string_view want{env};
        if (want == "scalar") return &scalar_table();
        if (want == "avx2" && cpu_supports(Isa::avx2)) return avx2_table();
    }
    if (cpu_supports(Isa::avx2)) return avx2_table();
    return &scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

Isa active_isa() noexcept { return active().isa; }

bool select(Isa isa) noexcept {
    const KernelTable* table = table_for(isa);
    if (table == nullptr) return false;
    current().store(table, std::memory_order_release);
    return true;
}

}  // namespace regdil::kernels
