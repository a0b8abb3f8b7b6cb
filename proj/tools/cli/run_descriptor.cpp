#include "run_descriptor.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace smfkit::cli {

void RunDescriptor::validate() const {
    if (example != "a" && example != "b") {
        throw std::invalid_argument("descriptor: example must be \"a\" or \"b\"");
    }
    if (steps < 0) {
        throw std::invalid_argument("descriptor: steps must be >= 0");
    }
    if (runs < 1) {
        throw std::invalid_argument("descriptor: runs must be >= 1");
    }
    if (samples < 1) {
        throw std::invalid_argument("descriptor: samples must be >= 1");
    }
    if (engines.empty()) {
        throw std::invalid_argument("descriptor: engines list is empty");
    }
    for (const auto& e : engines) {
        if (e != "classical" && e != "optimal") {
            throw std::invalid_argument("descriptor: unknown engine '" + e + "'");
        }
    }
}

std::string RunDescriptor::to_json() const {
    std::string out = "{\"example\":\"" + example + "\"";
    out += ",\"steps\":" + std::to_string(steps);
    out += ",\"runs\":" + std::to_string(runs);
    out += ",\"samples\":" + std::to_string(samples);
    out += ",\"seed\":" + std::to_string(seed);
    out += ",\"engines\":[";
    for (std::size_t i = 0; i < engines.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += "\"" + engines[i] + "\"";
    }
    out += "]}";
    return out;
}

RunDescriptor RunDescriptor::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    RunDescriptor d;
    d.example = j.at("example").get<std::string>();
    d.steps = j.at("steps").get<int>();
    d.runs = j.at("runs").get<int>();
    d.samples = j.at("samples").get<int>();
    d.seed = j.at("seed").get<std::uint64_t>();
    d.engines = j.at("engines").get<std::vector<std::string>>();
    d.validate();
    return d;
}

bool RunDescriptor::wants(const std::string& engine) const {
    return std::find(engines.begin(), engines.end(), engine) != engines.end();
}

} // namespace smfkit::cli
