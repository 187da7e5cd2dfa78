#pragma once

#include "restore/raster.hpp"
#include "restore/registry.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace restore {

inline constexpr int kPipelineVersion = 1;

struct PipelineStep {
    std::string op;
    nlohmann::json params = nlohmann::json::object();  // defaults filled after parsing
    std::vector<std::string> in;
    std::string out;
};

/// Declarative restoration recipe: named inputs (file paths), an ordered
/// list of steps binding names through ops, and named outputs.
struct PipelineSpec {
    int version = kPipelineVersion;
    std::map<std::string, std::string> inputs;
    std::vector<PipelineStep> steps;
    std::map<std::string, std::string> outputs;
};

/// Parses and validates a JSON pipeline document. On failure throws
/// ValidationError listing every problem (with step index and name).
PipelineSpec parse_pipeline(std::string_view text);

/// Returns all validation problems; empty means valid.
std::vector<std::string> validate_pipeline(const PipelineSpec& spec);

nlohmann::json to_json(const PipelineSpec& spec);

struct StepReport {
    std::size_t index = 0;
    std::string op;
    std::string out;
    double millis = 0.0;
    bool ok = false;
    std::string error;
};

struct OutputReport {
    std::string name;
    std::string path;
    std::string sha256;
};

struct RunReport {
    bool ok = true;
    std::optional<std::size_t> failed_step;
    std::string error;
    std::vector<StepReport> steps;
    std::vector<OutputReport> outputs;

    nlohmann::json to_json() const;
};

/// Executes the steps in order. Inputs and outputs resolve relative to
/// `workdir`; each output is written as soon as its producer finishes, so
/// a failure leaves earlier outputs on disk. `spec` must already be valid.
RunReport run_pipeline(const PipelineSpec& spec, const std::filesystem::path& workdir);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::span<const std::uint8_t> bytes);

}  // namespace restore
