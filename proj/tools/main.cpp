#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "firecover/config.hpp"
#include "firecover/engine.hpp"
#include "firecover/render.hpp"
#include "firecover/sensing.hpp"
#include "firecover/snapshot.hpp"
#include "firecover/trace.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
}

std::string zero_pad(int value, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*d", width, value);
    return buf;
}

// The only environment hooks: FIRECOVER_OUT (default output directory) and
// FIRECOVER_LOG=progress (step progress on stderr).
std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v && *v ? v : fallback;
}

bool progress_logging() { return env_or("FIRECOVER_LOG", "quiet") == "progress"; }

int run_command(const std::string& config_path, std::optional<int> steps,
                std::optional<std::uint64_t> seed, const std::string& out_dir,
                std::optional<int> stride, std::optional<bool> frames) {
    firecover::SimConfig config =
        config_path.empty() ? firecover::paper_sec5_preset() : firecover::parse_config(read_file(config_path));
    if (steps) config.steps = *steps;
    if (seed) config.seed = *seed;
    if (stride) config.trace_stride = *stride;
    if (frames) config.frames = *frames;
    firecover::validate(config);

    fs::create_directories(out_dir);
    fs::path base(out_dir);
    if (config.snapshot_stride > 0) fs::create_directories(base / "snapshots");
    if (config.frames && config.frame_stride > 0) fs::create_directories(base / "frames");

    std::vector<firecover::TraceRecord> traces;
    std::vector<firecover::StepMetrics> metrics;

    const bool progress = progress_logging();
    firecover::RunSinks sinks;
    sinks.trace = [&](const firecover::TraceRecord& r) { traces.push_back(r); };
    sinks.metrics = [&](const firecover::StepMetrics& m) {
        metrics.push_back(m);
        if (progress && m.step > 0 && m.step % 500 == 0) {
            std::cerr << "step " << m.step << "/" << config.steps << " boundary_coverage "
                      << firecover::format_double(m.boundary_coverage) << "\n";
        }
    };
    sinks.snapshot = [&](const firecover::WorldState& state) {
        std::string tag = zero_pad(state.step, 6);
        firecover::write_intensity_text(
            state.intensity, (base / "snapshots" / ("intensity_" + tag + ".txt")).string());
        firecover::write_intensity_pgm(
            state.intensity, config.camera.intensity_max,
            (base / "snapshots" / ("intensity_" + tag + ".pgm")).string());
    };
    if (config.frames) {
        sinks.frame = [&](const firecover::WorldState& state) {
            std::string tag = zero_pad(state.step, 6);
            firecover::write_frame(state, config,
                                   (base / "frames" / ("frame_" + tag + ".svg")).string());
        };
    }

    firecover::RunSummary summary = firecover::run(config, sinks);

    firecover::write_traces(traces, (base / "traces.csv").string());
    firecover::write_metrics(metrics, (base / "metrics.csv").string());

    std::ostringstream s;
    s << "steps_completed = " << summary.steps_completed << "\n"
      << "final_boundary_coverage = " << firecover::format_double(summary.final_boundary_coverage)
      << "\n"
      << "min_distance_over_run = " << firecover::format_double(summary.min_distance_over_run)
      << "\n"
      << "first_step_all_fire_seen = " << summary.first_step_all_fire_seen << "\n";
    write_file(base / "summary.txt", s.str());
    std::cout << s.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-vehicle wildfire coverage simulator"};
    app.require_subcommand(1);

    std::string run_config;
    std::optional<int> run_steps;
    std::optional<std::uint64_t> run_seed;
    std::string run_out = env_or("FIRECOVER_OUT", "out");
    std::optional<int> run_stride;
    std::string run_frames;
    auto* run = app.add_subcommand("run", "Simulate a scenario and write traces");
    run->add_option("--config", run_config, "Scenario config file (defaults to built-in preset)");
    run->add_option("--steps", run_steps, "Override step count");
    run->add_option("--seed", run_seed, "Override random seed");
    run->add_option("--out", run_out, "Output directory");
    run->add_option("--stride", run_stride, "Override trace stride");
    run->add_option("--frames", run_frames, "Override frame rendering (on|off)")
        ->check(CLI::IsMember({"on", "off"}));

    std::string preset_name = "paper-sec5";
    std::string preset_out;
    auto* preset = app.add_subcommand("preset", "Write a built-in scenario config");
    preset->add_option("--name", preset_name, "Preset name")
        ->check(CLI::IsMember({"paper-sec5"}));
    preset->add_option("--out", preset_out, "Output path (stdout when omitted)");

    std::string validate_config;
    auto* validate = app.add_subcommand("validate", "Parse and validate a config file");
    validate->add_option("--config", validate_config, "Scenario config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            std::optional<bool> frames;
            if (!run_frames.empty()) frames = run_frames == "on";
            return run_command(run_config, run_steps, run_seed, run_out, run_stride, frames);
        }
        if (preset->parsed()) {
            std::string text = firecover::emit_config(firecover::paper_sec5_preset());
            if (preset_out.empty()) {
                std::cout << text;
            } else {
                write_file(preset_out, text);
            }
            return 0;
        }
        if (validate->parsed()) {
            firecover::SimConfig config = firecover::parse_config(read_file(validate_config));
            firecover::validate(config);
            std::cout << "ok\n";
            if (!firecover::sensing_neighbor_bound(config.rendezvous.z, config.rendezvous.z,
                                                   config.camera, config.gains.comm_radius)) {
                std::cout << "note: two vehicles at the cruise altitude "
                          << firecover::format_double(config.rendezvous.z)
                          << " can overlap footprints outside the communication radius "
                          << firecover::format_double(config.gains.comm_radius) << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
