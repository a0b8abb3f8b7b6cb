#ifndef SMFKIT_CLI_COMMANDS_HPP
#define SMFKIT_CLI_COMMANDS_HPP

#include <cstdint>
#include <string>

#include "run_descriptor.hpp"

namespace smfkit::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariantViolation = 2;
inline constexpr int kExitStarvation = 3;
inline constexpr int kExitIo = 4;

struct CommonOptions {
    std::string out_dir = "out";
    int workers = 0; // 0: hardware concurrency
    bool dump_samples = false;
};

// Scalar related-noise study: R simulated trajectories, classical and
// sampled-optimal traces, per-step average diameters.
int run_example_a(const RunDescriptor& desc, const CommonOptions& opts);

// Identical-process-noise linear study: classical polygon filter against
// the augmented projection-based filter, posterior polygon snapshots and
// area ratios.
int run_example_b(const RunDescriptor& desc, const CommonOptions& opts);

int run_lemma_check(int iterations, std::uint64_t seed, const CommonOptions& opts);

} // namespace smfkit::cli

#endif
