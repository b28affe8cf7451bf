#include "shbif/diagnostics.hpp"

#include <atomic>

namespace shbif::diag {

namespace {
std::atomic<std::uint64_t> g_const_drops{0};
}

std::uint64_t const_drops() { return g_const_drops.load(std::memory_order_relaxed); }
void reset_const_drops() { g_const_drops.store(0, std::memory_order_relaxed); }
void count_const_drop() { g_const_drops.fetch_add(1, std::memory_order_relaxed); }

}  // namespace shbif::diag
