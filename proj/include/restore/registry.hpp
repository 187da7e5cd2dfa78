#pragma once

#include "restore/raster.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace restore {

enum class ParamKind { Number, Integer, Boolean, Choice, NumberOrAuto };

struct ParamSpec {
    std::string name;
    ParamKind kind = ParamKind::Number;
    std::optional<nlohmann::json> default_value;  // nullopt: required
    double min = 0.0;
    double max = 0.0;
    std::vector<std::string> choices;  // Choice only
};

using OpFunction =
    std::function<Raster(const std::vector<const Raster*>& inputs, const nlohmann::json& params)>;

/// One named operation: ordered input slots, parameter schema, and the
/// function that runs it. Shared by the pipeline runner and the service.
struct OpSpec {
    std::string name;
    std::vector<std::string> inputs;
    std::vector<ParamSpec> params;
    OpFunction run;
};

/// Thrown by validation with every problem found, not just the first.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> issues);
    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    std::vector<std::string> issues_;
};

class OpRegistry {
public:
    static const OpRegistry& instance();

    const OpSpec* find(std::string_view name) const noexcept;
    const std::vector<OpSpec>& ops() const noexcept { return ops_; }

    /// Checks `params` against the op's schema and returns them with
    /// defaults filled in. Problems are appended to `issues`, each
    /// prefixed with `where`.
    nlohmann::json normalize_params(const OpSpec& op, const nlohmann::json& params,
                                    const std::string& where,
                                    std::vector<std::string>& issues) const;

    /// Validates, then runs. Throws ValidationError for a bad op/params
    /// or input count, InvalidArgument for image-dependent failures.
    Raster run(std::string_view op, const std::vector<const Raster*>& inputs,
               const nlohmann::json& params) const;

private:
    OpRegistry();
    std::vector<OpSpec> ops_;
};

}  // namespace restore
