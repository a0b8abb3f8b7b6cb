#ifndef SMFKIT_CLI_RUN_DESCRIPTOR_HPP
#define SMFKIT_CLI_RUN_DESCRIPTOR_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace smfkit::cli {

// Seeded experiment configuration. The JSON form
//   {"example":"a","steps":K,"runs":R,"samples":N,"seed":S,"engines":[...]}
// is the persisted companion of every output directory: identical
// descriptors produce byte-identical outputs.
struct RunDescriptor {
    std::string example;                 // "a" or "b"
    int steps = 20;                      // horizon K; measurements k = 0..K
    int runs = 1;
    int samples = 10000;                 // accepted samples per MC step
    std::uint64_t seed = 1;
    std::vector<std::string> engines = {"classical", "optimal"};

    void validate() const;
    std::string to_json() const;
    static RunDescriptor from_json(const std::string& text);

    bool wants(const std::string& engine) const;
};

} // namespace smfkit::cli

#endif
