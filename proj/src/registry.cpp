#include "restore/registry.hpp"

#include "restore/codec.hpp"
#include "restore/compose.hpp"
#include "restore/edge.hpp"
#include "restore/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace restore {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ParamSpec number(std::string name, double lo, double hi, std::optional<json> def = std::nullopt) {
    return {std::move(name), ParamKind::Number, std::move(def), lo, hi, {}};
}

ParamSpec integer(std::string name, double lo, double hi, std::optional<json> def = std::nullopt) {
    return {std::move(name), ParamKind::Integer, std::move(def), lo, hi, {}};
}

ParamSpec boolean(std::string name, bool def) {
    return {std::move(name), ParamKind::Boolean, json(def), 0, 0, {}};
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ", ") + p;
    return out;
}

InverseMode inverse_mode(const json& params) {
    return params.at("renormalize").get<bool>() ? InverseMode::Renormalize : InverseMode::Clamp;
}

std::vector<OpSpec> build_ops() {
    std::vector<OpSpec> ops;

    ops.push_back({"grayscale", {"image"}, {}, [](const auto& in, const json&) {
                       // Inputs are decoded straight to single-channel rasters.
                       return *in[0];
                   }});

    ops.push_back({"threshold_binary", {"image"}, {number("t", 0, 1)},
                   [](const auto& in, const json& p) {
                       return threshold_binary(*in[0], p.at("t").get<double>());
                   }});

    ops.push_back({"otsu_threshold", {"image"}, {integer("bins", 2, 65536, 256)},
                   [](const auto& in, const json& p) {
                       const double t = otsu_threshold(histogram(*in[0], p.at("bins").get<int>()));
                       return threshold_binary(*in[0], t);
                   }});

    ops.push_back({"normalize", {"image"}, {number("lo", 0, 1, 0.0), number("hi", 0, 1, 1.0)},
                   [](const auto& in, const json& p) {
                       return Raster::clamped(normalize_range(in[0]->field(), p.at("lo").get<double>(),
                                                              p.at("hi").get<double>()));
                   }});

    ops.push_back({"dipole_edge_map", {"image"}, {integer("radius", 1, 64, 2)},
                   [](const auto& in, const json& p) {
                       return dipole_edge_map(*in[0], p.at("radius").get<int>()).raster();
                   }});

    ops.push_back({"edge_threshold", {"edges"}, {number("t", 0, 1)},
                   [](const auto& in, const json& p) {
                       return edge_threshold(EdgeMap(*in[0]), p.at("t").get<double>());
                   }});

    ops.push_back({"blend",
                   {"a", "b"},
                   {ParamSpec{"mode", ParamKind::Choice, json("alpha"), 0, 0,
                              {"alpha", "multiply_darken", "min"}},
                    number("alpha", 0, 1, 0.5)},
                   [](const auto& in, const json& p) {
                       return blend(*in[0], *in[1], *parse_blend_mode(p.at("mode").get<std::string>()),
                                    p.at("alpha").get<double>());
                   }});

    ops.push_back({"overlay_edges", {"image", "edges"}, {number("gain", 0, kInf, 1.0)},
                   [](const auto& in, const json& p) {
                       return overlay_edges(*in[0], EdgeMap(*in[1]), p.at("gain").get<double>());
                   }});

    ops.push_back({"bas_relief",
                   {"image"},
                   {integer("dx", -kMaxReliefOffset, kMaxReliefOffset, 1),
                    integer("dy", -kMaxReliefOffset, kMaxReliefOffset, 1),
                    number("depth", 0, kInf, 1.0), number("bias", -kInf, kInf, 0.5)},
                   [](const auto& in, const json& p) {
                       return bas_relief(*in[0], {p.at("dx").get<int>(), p.at("dy").get<int>(),
                                                  p.at("depth").get<double>(), p.at("bias").get<double>()});
                   }});

    ops.push_back({"enhance_text",
                   {"image"},
                   {ParamSpec{"threshold", ParamKind::NumberOrAuto, json("auto"), 0, 1, {}},
                    integer("radius", 1, 64, 2), number("gain", 0, kInf, 0.8),
                    number("mix", 0, 1, 1.0)},
                   [](const auto& in, const json& p) {
                       EnhanceParams ep;
                       if (p.at("threshold").is_number()) ep.threshold = p.at("threshold").get<double>();
                       ep.radius = p.at("radius").get<int>();
                       ep.edge_gain = p.at("gain").get<double>();
                       ep.mix = p.at("mix").get<double>();
                       return enhance_text(*in[0], ep);
                   }});

    ops.push_back({"highpass",
                   {"image"},
                   {number("cutoff", 0, kInf), number("softness", 0, kInf, 0.0),
                    boolean("renormalize", true)},
                   [](const auto& in, const json& p) {
                       const auto mask = make_highpass_mask(
                           padded_extent(in[0]->width()), padded_extent(in[0]->height()),
                           p.at("cutoff").get<double>(), p.at("softness").get<double>());
                       return fourier_filter(*in[0], mask, inverse_mode(p));
                   }});

    ops.push_back({"notch",
                   {"image"},
                   {integer("half_width", 0, 1 << 20, 1), number("guard", 0, kInf, 4.0),
                    boolean("renormalize", true)},
                   [](const auto& in, const json& p) {
                       const auto mask = make_axis_notch_mask(
                           padded_extent(in[0]->width()), padded_extent(in[0]->height()),
                           FrequencyAxis::Horizontal, p.at("half_width").get<int>(),
                           p.at("guard").get<double>());
                       return fourier_filter(*in[0], mask, inverse_mode(p));
                   }});

    ops.push_back({"fourier_filter", {"image", "mask"}, {boolean("renormalize", true)},
                   [](const auto& in, const json& p) {
                       const auto mask = mask_from_raster(*in[1], padded_extent(in[0]->width()),
                                                          padded_extent(in[0]->height()));
                       return fourier_filter(*in[0], mask, inverse_mode(p));
                   }});

    ops.push_back({"spectrum", {"image"}, {boolean("log", true)},
                   [](const auto& in, const json& p) {
                       return spectrum_magnitude_view(forward_spectrum(*in[0]), p.at("log").get<bool>());
                   }});

    ops.push_back({"encode", {"image"}, {}, [](const auto& in, const json&) {
                       return quantize_8bit(*in[0]);
                   }});

    return ops;
}

void check_range(const ParamSpec& spec, double v, const std::string& where,
                 std::vector<std::string>& issues) {
    if (!std::isfinite(v) || v < spec.min || v > spec.max) {
        issues.push_back(where + "param '" + spec.name + "' = " + json(v).dump() +
                         " outside [" + json(spec.min).dump() + ", " + json(spec.max).dump() + "]");
    }
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : Error(issues.empty() ? std::string("validation failed") : join(issues)),
      issues_(std::move(issues)) {}

OpRegistry::OpRegistry() : ops_(build_ops()) {}

const OpRegistry& OpRegistry::instance() {
    static const OpRegistry registry;
    return registry;
}

const OpSpec* OpRegistry::find(std::string_view name) const noexcept {
    for (const auto& op : ops_) {
        if (op.name == name) return &op;
    }
    return nullptr;
}

json OpRegistry::normalize_params(const OpSpec& op, const json& params, const std::string& where,
                                  std::vector<std::string>& issues) const {
    json out = json::object();
    if (!params.is_null() && !params.is_object()) {
        issues.push_back(where + "params must be an object");
        return out;
    }
    if (params.is_object()) {
        for (const auto& [key, value] : params.items()) {
            const bool known = std::any_of(op.params.begin(), op.params.end(),
                                           [&](const ParamSpec& p) { return p.name == key; });
            if (!known) issues.push_back(where + "unknown param '" + key + "' for op '" + op.name + "'");
        }
    }
    for (const auto& spec : op.params) {
        const bool given = params.is_object() && params.contains(spec.name);
        if (!given) {
            if (spec.default_value) {
                out[spec.name] = *spec.default_value;
            } else {
                issues.push_back(where + "missing param '" + spec.name + "' for op '" + op.name + "'");
            }
            continue;
        }
        const json& v = params.at(spec.name);
        switch (spec.kind) {
            case ParamKind::Number:
                if (!v.is_number()) {
                    issues.push_back(where + "param '" + spec.name + "' must be a number");
                } else {
                    check_range(spec, v.get<double>(), where, issues);
                    out[spec.name] = v.get<double>();
                }
                break;
            case ParamKind::Integer:
                if (!v.is_number_integer()) {
                    issues.push_back(where + "param '" + spec.name + "' must be an integer");
                } else {
                    check_range(spec, static_cast<double>(v.get<long long>()), where, issues);
                    out[spec.name] = v.get<long long>();
                }
                break;
            case ParamKind::Boolean:
                if (v.is_boolean()) {
                    out[spec.name] = v.get<bool>();
                } else if (v.is_number_integer() && (v == 0 || v == 1)) {
                    out[spec.name] = v == 1;
                } else {
                    issues.push_back(where + "param '" + spec.name + "' must be a boolean");
                }
                break;
            case ParamKind::Choice:
                if (!v.is_string() ||
                    std::find(spec.choices.begin(), spec.choices.end(), v.get<std::string>()) ==
                        spec.choices.end()) {
                    issues.push_back(where + "param '" + spec.name + "' is " + v.dump() + ", must be one of: " +
                                    join(spec.choices));
                } else {
                    out[spec.name] = v;
                }
                break;
            case ParamKind::NumberOrAuto:
                if (v.is_string() && v.get<std::string>() == "auto") {
                    out[spec.name] = "auto";
                } else if (v.is_number()) {
                    check_range(spec, v.get<double>(), where, issues);
                    out[spec.name] = v.get<double>();
                } else {
                    issues.push_back(where + "param '" + spec.name + "' must be a number or \"auto\"");
                }
                break;
        }
    }
    return out;
}

Raster OpRegistry::run(std::string_view name, const std::vector<const Raster*>& inputs,
                       const json& params) const {
    const OpSpec* op = find(name);
    if (!op) throw ValidationError({"unknown op '" + std::string(name) + "'"});
    std::vector<std::string> issues;
    if (inputs.size() < op->inputs.size()) {
        for (std::size_t i = inputs.size(); i < op->inputs.size(); ++i) {
            issues.push_back("op '" + op->name + "' is missing input '" + op->inputs[i] + "'");
        }
    } else if (inputs.size() > op->inputs.size()) {
        issues.push_back("op '" + op->name + "' takes " + std::to_string(op->inputs.size()) +
                         " input(s), got " + std::to_string(inputs.size()));
    }
    const json normalized = normalize_params(*op, params, "", issues);
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return op->run(inputs, normalized);
}

}  // namespace restore
