// Process-wide diagnostics counters.
#pragma once

#include <cstdint>

namespace shbif::diag {

// Number of nonzero constant-mode coefficients discarded by projections into
// the mean-zero space since the last reset. The cubic nonlinearity of a general
// mean-zero state has a constant component, so simulation paths increment this
// by design; exact reduction paths must leave it at zero.
std::uint64_t const_drops();
void reset_const_drops();
void count_const_drop();

}  // namespace shbif::diag
