// restore: batch front end for the document restoration toolkit.
//
//   restore run <spec.json> [--workdir DIR]
//   restore validate <spec.json>
//   restore spectrum <in> <out> [--log]
//   restore enhance <in> <out> [--threshold T | --auto] [--radius R] [--gain G] [--mix M]
//   restore filter <in> <out> (--mask M | --highpass C[,S] | --notch HW,G) [--clamp]
//
// Exit codes: 0 success, 1 validation error, 2 runtime error.

#include "restore/codec.hpp"
#include "restore/pipeline.hpp"
#include "restore/registry.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_number_list(const std::string& text, std::size_t min_count,
                                      std::size_t max_count, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(std::string(flag) + ": '" + item + "' is not a number");
        }
    }
    if (out.size() < min_count || out.size() > max_count) {
        throw UsageError(std::string(flag) + ": expected " + std::to_string(min_count) +
                         (min_count == max_count ? "" : "-" + std::to_string(max_count)) + " values");
    }
    return out;
}

restore::Raster load(const std::string& path) { return restore::decode_image(restore::read_file(path)); }

void save(const std::string& path, const restore::Raster& r) {
    restore::write_file(path, restore::encode_image(r, restore::format_for_path(path)));
}

// Single-op shortcut: same registry path the pipeline runner and the
// service use, so results agree byte for byte.
int run_single(const std::string& in, const std::string& out, const std::string& op,
               const json& params, const std::vector<std::string>& extra_inputs = {}) {
    std::vector<restore::Raster> images{load(in)};
    for (const auto& path : extra_inputs) images.push_back(load(path));
    std::vector<const restore::Raster*> ptrs;
    for (const auto& r : images) ptrs.push_back(&r);
    save(out, restore::OpRegistry::instance().run(op, ptrs, params));
    return kExitOk;
}

int cmd_validate(const std::string& spec_path) {
    const auto bytes = restore::read_file(spec_path);
    const auto spec = restore::parse_pipeline(std::string(bytes.begin(), bytes.end()));
    std::cout << "valid: " << spec.steps.size() << " step(s), " << spec.outputs.size() << " output(s)\n";
    return kExitOk;
}

int cmd_run(const std::string& spec_path, const std::string& workdir) {
    const auto bytes = restore::read_file(spec_path);
    const auto spec = restore::parse_pipeline(std::string(bytes.begin(), bytes.end()));
    const std::filesystem::path dir =
        workdir.empty() ? std::filesystem::absolute(spec_path).parent_path() : std::filesystem::path(workdir);
    const auto report = restore::run_pipeline(spec, dir);
    std::cout << report.to_json().dump(2) << "\n";
    if (!report.ok) std::cerr << "error: " << report.error << "\n";
    return report.ok ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Digital restoration of scanned ancient documents"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string workdir;
    auto* run = app.add_subcommand("run", "Execute a pipeline spec");
    run->add_option("spec", spec_path, "Pipeline JSON")->required();
    run->add_option("--workdir", workdir, "Directory inputs/outputs resolve against (default: the directory holding the pipeline file)");

    auto* validate = app.add_subcommand("validate", "Parse and validate a pipeline spec");
    validate->add_option("spec", spec_path, "Pipeline JSON")->required();

    std::string in_path;
    std::string out_path;
    bool log_scale = false;
    auto* spectrum = app.add_subcommand("spectrum", "Write the centered magnitude spectrum");
    spectrum->add_option("input", in_path)->required();
    spectrum->add_option("output", out_path)->required();
    spectrum->add_flag("--log", log_scale, "ln(1 + |C|) scaling");

    double threshold = 0.5;
    bool auto_threshold = false;
    int radius = 2;
    double gain = 0.8;
    double mix = 1.0;
    auto* enhance = app.add_subcommand("enhance", "Threshold + dipole edge text enhancement");
    enhance->add_option("input", in_path)->required();
    enhance->add_option("output", out_path)->required();
    auto* threshold_opt = enhance->add_option("--threshold", threshold, "Manual threshold in [0,1]");
    enhance->add_flag("--auto", auto_threshold, "Otsu threshold (default)")->excludes(threshold_opt);
    enhance->add_option("--radius", radius, "Dipole window radius")->capture_default_str();
    enhance->add_option("--gain", gain, "Edge darkening gain")->capture_default_str();
    enhance->add_option("--mix", mix, "Weight of the enhanced layer")->capture_default_str();

    std::string mask_path;
    std::string highpass;
    std::string notch;
    bool clamp = false;
    auto* filter = app.add_subcommand("filter", "Fourier filtering");
    filter->add_option("input", in_path)->required();
    filter->add_option("output", out_path)->required();
    auto* mask_opt = filter->add_option("--mask", mask_path, "Mask image, spectrum-sized, DC at (w/2, h/2)");
    auto* hp_opt = filter->add_option("--highpass", highpass, "CUTOFF[,SOFTNESS]");
    auto* notch_opt = filter->add_option("--notch", notch, "HALFWIDTH,GUARD");
    mask_opt->excludes(hp_opt, notch_opt);
    hp_opt->excludes(notch_opt);
    filter->add_flag("--clamp", clamp, "Clamp instead of renormalizing the result");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*run) return cmd_run(spec_path, workdir);
        if (*validate) return cmd_validate(spec_path);
        if (*spectrum) return run_single(in_path, out_path, "spectrum", {{"log", log_scale}});
        if (*enhance) {
            json params = {{"radius", radius}, {"gain", gain}, {"mix", mix}, {"threshold", "auto"}};
            if (*threshold_opt && !auto_threshold) params["threshold"] = threshold;
            return run_single(in_path, out_path, "enhance_text", params);
        }
        if (*filter) {
            if (!*mask_opt && !*hp_opt && !*notch_opt) {
                throw UsageError("filter needs one of --mask, --highpass, --notch");
            }
            if (*mask_opt) {
                return run_single(in_path, out_path, "fourier_filter", {{"renormalize", !clamp}}, {mask_path});
            }
            if (*hp_opt) {
                const auto v = parse_number_list(highpass, 1, 2, "--highpass");
                return run_single(in_path, out_path, "highpass",
                                  {{"cutoff", v[0]}, {"softness", v.size() > 1 ? v[1] : 0.0}, {"renormalize", !clamp}});
            }
            const auto v = parse_number_list(notch, 2, 2, "--notch");
            if (v[0] != static_cast<int>(v[0])) throw UsageError("--notch: half width must be an integer");
            return run_single(in_path, out_path, "notch",
                              {{"half_width", static_cast<int>(v[0])}, {"guard", v[1]}, {"renormalize", !clamp}});
        }
    } catch (const restore::ValidationError& e) {
        for (const auto& issue : e.issues()) std::cerr << "invalid: " << issue << "\n";
        return kExitInvalid;
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitInvalid;
}
