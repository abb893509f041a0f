#include "regdil/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace regdil {
namespace {

std::size_t resolve(std::size_t requested) noexcept {
    if (requested == 0) return std::max<std::size_t>(1, std::thread::hardware_concurrency());
    return requested;
}

std::size_t from_environment() noexcept {
    if (const char* env = std::getenv("REGDIL_THREADS")) {
        char* end = nullptr;
        const unsigned long value = std::strtoul(env, &end, 10);
        if (end != env) return resolve(value);
    }
    return 1;
}

std::atomic<std::size_t>& workers() noexcept {
    static std::atomic<std::size_t> count{from_environment()};
    return count;
}

}  // namespace

std::size_t thread_count() noexcept { return workers().load(std::memory_order_relaxed); }

void set_thread_count(std::size_t count) noexcept {
    workers().store(resolve(count), std::memory_order_relaxed);
}

}  // namespace regdil
