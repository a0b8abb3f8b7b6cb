#ifndef SMFKIT_LEMMA_SUITE_HPP
#define SMFKIT_LEMMA_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace smfkit::uvar {

// Randomized property suite over small finite sample spaces. Every check
// is an exact set identity; a failure therefore indicates a bug, never
// numerical noise. Spaces use integer-grid values in [-3, 3], outcome
// counts of 2..6 per factor, and explicit coupling patterns (independent,
// diagonal, functional, partial overlap) so related and unrelated regimes
// are both exercised.
struct LemmaCheckCounts {
    std::string name;
    int passed = 0;
    int failed = 0;
};

struct LemmaReport {
    int iterations = 0;
    std::vector<LemmaCheckCounts> checks;
    // JSON dumps of the sample spaces behind failing checks.
    std::vector<std::string> failure_dumps;

    bool all_passed() const;
    int total_failures() const;
    std::string to_text() const;
};

LemmaReport run_lemma_suite(int iterations, std::uint64_t seed);

} // namespace smfkit::uvar

#endif
