#ifndef IDRS_TOOLS_TOY_SUITES_HPP
#define IDRS_TOOLS_TOY_SUITES_HPP

#include <cstdint>

namespace idrs::tools {

/// Runs the closed-form smoke problems and the property suites (Lyapunov
/// descent, Moreau decomposition, metric positivity) under the given
/// schedule knobs. Prints one line per suite; returns 0 iff all pass.
int run_toy_suites(double alpha, double sigma, std::uint64_t seed);

} // namespace idrs::tools

#endif
