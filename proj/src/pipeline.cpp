#include "restore/pipeline.hpp"

#include "restore/codec.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

namespace restore {

using nlohmann::json;

namespace {

std::string step_label(std::size_t i) { return "step " + std::to_string(i) + ": "; }

std::string describe(const PipelineStep& s, std::size_t i) {
    return step_label(i) + (s.op.empty() ? "" : "(" + s.op + ") ");
}

// Reads a {name: path} object into `out`.
void read_name_map(const json& doc, const char* field, std::map<std::string, std::string>& out,
                   std::vector<std::string>& issues) {
    if (!doc.contains(field)) {
        issues.push_back(std::string("missing field '") + field + "'");
        return;
    }
    const json& obj = doc.at(field);
    if (!obj.is_object()) {
        issues.push_back(std::string("'") + field + "' must be an object of name -> path");
        return;
    }
    for (const auto& [name, path] : obj.items()) {
        if (name.empty()) issues.push_back(std::string(field) + ": empty name");
        if (!path.is_string() || path.get<std::string>().empty()) {
            issues.push_back(std::string(field) + " '" + name + "': path must be a non-empty string");
            continue;
        }
        out[name] = path.get<std::string>();
    }
}

PipelineStep read_step(const json& j, std::size_t i, std::vector<std::string>& issues) {
    PipelineStep step;
    if (!j.is_object()) {
        issues.push_back(step_label(i) + "must be an object");
        return step;
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "op" && key != "params" && key != "in" && key != "out") {
            issues.push_back(step_label(i) + "unknown field '" + key + "'");
        }
    }
    if (!j.contains("op") || !j.at("op").is_string()) {
        issues.push_back(step_label(i) + "missing string field 'op'");
    } else {
        step.op = j.at("op").get<std::string>();
    }
    if (j.contains("params")) step.params = j.at("params");
    if (j.contains("in")) {
        const json& in = j.at("in");
        if (in.is_string()) {
            step.in.push_back(in.get<std::string>());
        } else if (in.is_array() && std::all_of(in.begin(), in.end(), [](const json& e) { return e.is_string(); })) {
            for (const auto& e : in) step.in.push_back(e.get<std::string>());
        } else {
            issues.push_back(step_label(i) + "'in' must be a name or a list of names");
        }
    }
    if (!j.contains("out") || !j.at("out").is_string() || j.at("out").get<std::string>().empty()) {
        issues.push_back(step_label(i) + "missing non-empty string field 'out'");
    } else {
        step.out = j.at("out").get<std::string>();
    }
    return step;
}

// True when step `from` (transitively) consumes the output of step `target`.
bool depends_on(const PipelineSpec& spec, const std::map<std::string, std::size_t>& producer,
                std::size_t from, std::size_t target, std::set<std::size_t>& seen) {
    if (from == target) return true;
    if (!seen.insert(from).second) return false;
    for (const auto& name : spec.steps[from].in) {
        const auto it = producer.find(name);
        if (it != producer.end() && depends_on(spec, producer, it->second, target, seen)) return true;
    }
    return false;
}

}  // namespace

std::vector<std::string> validate_pipeline(const PipelineSpec& spec) {
    std::vector<std::string> issues;
    const auto& registry = OpRegistry::instance();
    if (spec.version != kPipelineVersion) {
        issues.push_back("unsupported version " + std::to_string(spec.version) + " (expected " +
                         std::to_string(kPipelineVersion) + ")");
    }

    std::map<std::string, std::size_t> producer;
    for (std::size_t i = 0; i < spec.steps.size(); ++i) {
        const auto& out = spec.steps[i].out;
        if (!out.empty() && !spec.inputs.contains(out) && !producer.contains(out)) producer[out] = i;
    }

    std::set<std::string> defined;
    for (const auto& [name, path] : spec.inputs) defined.insert(name);

    for (std::size_t i = 0; i < spec.steps.size(); ++i) {
        const PipelineStep& step = spec.steps[i];
        const std::string where = describe(step, i);
        const OpSpec* op = step.op.empty() ? nullptr : registry.find(step.op);
        if (!step.op.empty() && !op) issues.push_back(where + "unknown op '" + step.op + "'");
        if (op) {
            registry.normalize_params(*op, step.params, where, issues);
            for (std::size_t k = step.in.size(); k < op->inputs.size(); ++k) {
                issues.push_back(where + "missing input '" + op->inputs[k] + "'");
            }
            if (step.in.size() > op->inputs.size()) {
                issues.push_back(where + "takes " + std::to_string(op->inputs.size()) +
                                 " input(s), got " + std::to_string(step.in.size()));
            }
        }
        for (const auto& name : step.in) {
            if (defined.contains(name)) continue;
            const auto later = producer.find(name);
            if (later == producer.end()) {
                issues.push_back(where + "consumes undeclared name '" + name + "'");
                continue;
            }
            std::set<std::size_t> seen;
            if (depends_on(spec, producer, later->second, i, seen)) {
                issues.push_back(where + "cycle: '" + name + "' is produced by step " +
                                 std::to_string(later->second) + ", which depends on this step");
            } else {
                issues.push_back(where + "'" + name + "' is used before step " +
                                 std::to_string(later->second) + " produces it");
            }
        }
        if (!step.out.empty()) {
            if (defined.contains(step.out)) {
                issues.push_back(where + "output name '" + step.out + "' is already defined");
            }
            defined.insert(step.out);
        }
    }

    std::set<std::string> paths;
    for (const auto& [name, path] : spec.outputs) {
        if (!defined.contains(name)) {
            issues.push_back("output '" + name + "' is not produced by any step");
        }
        if (!paths.insert(path).second) issues.push_back("output path '" + path + "' written twice");
    }
    return issues;
}

PipelineSpec parse_pipeline(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError({std::string("malformed JSON: ") + e.what()});
    }
    std::vector<std::string> issues;
    if (!doc.is_object()) throw ValidationError({"pipeline document must be a JSON object"});

    for (const auto& [key, value] : doc.items()) {
        if (key != "version" && key != "inputs" && key != "steps" && key != "outputs" &&
            key != "description") {
            issues.push_back("unknown top-level field '" + key + "'");
        }
    }

    PipelineSpec spec;
    if (!doc.contains("version") || !doc.at("version").is_number_integer()) {
        issues.push_back("missing integer field 'version'");
    } else {
        const auto v = doc.at("version").get<long long>();
        spec.version = (v >= 0 && v <= 1'000'000) ? static_cast<int>(v) : -1;
    }
    read_name_map(doc, "inputs", spec.inputs, issues);
    read_name_map(doc, "outputs", spec.outputs, issues);
    if (!doc.contains("steps") || !doc.at("steps").is_array()) {
        issues.push_back("missing array field 'steps'");
    } else {
        const json& steps = doc.at("steps");
        for (std::size_t i = 0; i < steps.size(); ++i) spec.steps.push_back(read_step(steps[i], i, issues));
    }

    for (auto& issue : validate_pipeline(spec)) issues.push_back(std::move(issue));
    if (!issues.empty()) throw ValidationError(std::move(issues));

    const auto& registry = OpRegistry::instance();
    for (std::size_t i = 0; i < spec.steps.size(); ++i) {
        auto& step = spec.steps[i];
        std::vector<std::string> unused;
        step.params = registry.normalize_params(*registry.find(step.op), step.params, "", unused);
    }
    return spec;
}

json to_json(const PipelineSpec& spec) {
    json steps = json::array();
    for (const auto& s : spec.steps) {
        steps.push_back({{"op", s.op}, {"params", s.params}, {"in", s.in}, {"out", s.out}});
    }
    return {{"version", spec.version},
            {"inputs", spec.inputs},
            {"steps", std::move(steps)},
            {"outputs", spec.outputs}};
}

json RunReport::to_json() const {
    json steps_json = json::array();
    for (const auto& s : steps) {
        json j = {{"index", s.index}, {"op", s.op}, {"out", s.out}, {"millis", s.millis}, {"ok", s.ok}};
        if (!s.error.empty()) j["error"] = s.error;
        steps_json.push_back(std::move(j));
    }
    json outputs_json = json::array();
    for (const auto& o : outputs) {
        outputs_json.push_back({{"name", o.name}, {"path", o.path}, {"sha256", o.sha256}});
    }
    json j = {{"ok", ok}, {"steps", std::move(steps_json)}, {"outputs", std::move(outputs_json)}};
    if (failed_step) j["failed_step"] = *failed_step;
    if (!error.empty()) j["error"] = error;
    return j;
}

RunReport run_pipeline(const PipelineSpec& spec, const std::filesystem::path& workdir) {
    if (auto issues = validate_pipeline(spec); !issues.empty()) throw ValidationError(std::move(issues));

    const auto& registry = OpRegistry::instance();
    RunReport report;
    std::map<std::string, Raster> values;

    const auto write_output = [&](const std::string& name, const Raster& r) {
        const auto it = spec.outputs.find(name);
        if (it == spec.outputs.end()) return;
        const std::filesystem::path path = workdir / it->second;
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        const auto bytes = encode_image(r, format_for_path(it->second));
        write_file(path.string(), bytes);
        report.outputs.push_back({name, path.string(), sha256_hex(bytes)});
    };

    for (const auto& [name, path] : spec.inputs) {
        try {
            const auto bytes = read_file((workdir / path).string());
            values.emplace(name, decode_image(bytes));
        } catch (const std::exception& e) {
            report.ok = false;
            report.error = "input '" + name + "': " + e.what();
            return report;
        }
    }
    for (const auto& [name, path] : spec.inputs) {
        try {
            write_output(name, values.at(name));
        } catch (const std::exception& e) {
            report.ok = false;
            report.error = "output '" + name + "': " + e.what();
            return report;
        }
    }

    for (std::size_t i = 0; i < spec.steps.size(); ++i) {
        const PipelineStep& step = spec.steps[i];
        StepReport sr{i, step.op, step.out, 0.0, false, {}};
        const auto start = std::chrono::steady_clock::now();
        try {
            std::vector<const Raster*> inputs;
            for (const auto& name : step.in) inputs.push_back(&values.at(name));
            Raster result = registry.run(step.op, inputs, step.params);
            write_output(step.out, result);
            values.insert_or_assign(step.out, std::move(result));
            sr.ok = true;
        } catch (const std::exception& e) {
            sr.error = e.what();
        }
        sr.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report.steps.push_back(sr);
        if (!sr.ok) {
            report.ok = false;
            report.failed_step = i;
            report.error = describe(step, i) + sr.error;
            break;
        }
    }
    return report;
}

}  // namespace restore
