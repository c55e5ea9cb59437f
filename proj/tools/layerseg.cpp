// layerseg: segment a layer file into quasi-quadrilateral sub-regions.
//
//   layerseg segment    --input layer.json [--out result.json --svg result.svg --history history.csv ...]
//   layerseg preprocess --input layer.json [--alpha-max 30 --svg elements.svg]
//   layerseg validate   --input layer.json
//
// Exit codes: 0 success, 1 I/O failure, 2 schema or usage error,
// 3 geometry error, 4 resource exhaustion.

#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "layerseg/io.hpp"
#include "layerseg/segmenter.hpp"

namespace {

using namespace layerseg;

constexpr int kExitIo = 1;
constexpr int kExitSchema = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitExhausted = 4;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << bytes;
}

// "result.json" + 7 -> "result.s7.json"
std::string with_seed(const std::string& path, std::uint64_t seed) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    const std::string tag = ".s" + std::to_string(seed);
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + tag;
    return path.substr(0, dot) + tag + path.substr(dot);
}

std::vector<std::uint64_t> resolve_seeds(const RunConfig& cfg, bool seed_given, std::uint64_t seed) {
    if (!cfg.seeds.empty()) return cfg.seeds;
    if (seed_given) return {seed};
    if (const char* env = std::getenv("LAYERSEG_SEED")) {
        try {
            return {std::stoull(env)};
        } catch (const std::exception&) {
            throw SchemaError(std::string("LAYERSEG_SEED is not an unsigned integer: ") + env);
        }
    }
    std::random_device rd;
    return {(static_cast<std::uint64_t>(rd()) << 32) ^ rd()};
}

void emit_outputs(const RunConfig& cfg, const Layer& layer, const std::vector<BasicElement>& elements,
                  const SegmentationResult& result, bool suffix) {
    auto path = [&](const std::string& p) { return suffix ? with_seed(p, result.seed) : p; };
    if (!cfg.out.empty()) write_file(path(cfg.out), write_result(result, {cfg.wall_time}));
    if (!cfg.svg.empty()) write_file(path(cfg.svg), render_svg(layer, elements, &result));
    if (!cfg.history.empty()) write_file(path(cfg.history), write_history(result.iterations, cfg.wall_time));
    double total_area = 0.0;
    for (const SubRegion& s : result.sub_regions) total_area += area(s.region);
    std::cout << fmt::format("seed {}: {} sub-regions in {} iterations, area {}, {:.3f} s\n", result.seed,
                             result.sub_regions.size(), result.iterations.size(), format_fixed(total_area, 6),
                             result.total_seconds);
}

int run_segment(const RunConfig& cfg, bool seed_given, std::uint64_t seed) {
    const Layer layer = parse_layer(read_file(cfg.input));
    const std::vector<std::uint64_t> seeds = resolve_seeds(cfg, seed_given, seed);
    const DepositionRegion region = build_deposition_region(classify_loops(layer));
    const std::vector<BasicElement> elements = decompose(region, cfg.preprocess);

    const std::vector<PipelineOutcome> outcomes =
        parallel_diversified(layer, cfg.preprocess, cfg.ga, cfg.strategy, seeds, cfg.jobs);
    std::exception_ptr first_error;
    for (const PipelineOutcome& o : outcomes) {
        if (o.result) {
            emit_outputs(cfg, layer, elements, *o.result, seeds.size() > 1);
        } else {
            std::cerr << fmt::format("seed {}: {}\n", o.seed, o.error);
            if (!first_error) first_error = o.exception;
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return 0;
}

int run_preprocess(const std::string& input, const PreprocessConfig& pre, const std::string& svg) {
    const Layer layer = parse_layer(read_file(input));
    const DepositionRegion region = build_deposition_region(classify_loops(layer));
    const auto turns = find_sharp_turns(region, pre);
    const auto elements = decompose(region, pre);
    std::cout << fmt::format("{} sharp turns, {} basic elements, deposition area {}\n", turns.size(), elements.size(),
                             format_fixed(region.area(), 6));
    for (const BasicElement& e : elements) {
        const Point2 c = centroid(e.region);
        std::cout << fmt::format("  element {}: area {} centroid ({}, {})\n", e.id, format_fixed(e.area, 6),
                                 format_fixed(c.x, 6), format_fixed(c.y, 6));
    }
    if (!svg.empty()) write_file(svg, render_svg(layer, elements));
    return 0;
}

int run_validate(const std::string& input) {
    const Layer layer = classify_loops(parse_layer(read_file(input)));
    const DepositionRegion region = build_deposition_region(layer);
    std::size_t holes = 0;
    for (const Loop& l : layer.loops) holes += l.role == LoopRole::Hole ? 1 : 0;
    std::cout << fmt::format("valid: {} loops ({} material, {} hole), {} components, deposition area {}\n",
                             layer.loops.size(), layer.loops.size() - holes, holes, region.components.size(),
                             format_fixed(region.area(), 6));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Segment additive-manufacturing layers into quasi-quadrilateral sub-regions"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::uint64_t seed = 0;
    std::string strategy = "single";

    auto* seg = app.add_subcommand("segment", "Pre-process and segment a layer");
    seg->add_option("--input", cfg.input, "Layer JSON file")->required();
    seg->add_option("--alpha-max", cfg.preprocess.alpha_max, "Sharp-turn threshold in degrees")->capture_default_str();
    seg->add_option("--pop", cfg.ga.n_ps, "Population size")->capture_default_str();
    seg->add_option("--new-pct", cfg.ga.n_new, "Percent of each generation used as parents")->capture_default_str();
    seg->add_option("--rho", cfg.ga.rho, "Mutation when X > rho, crossover otherwise")->capture_default_str();
    seg->add_option("--ns", cfg.strategy.n_s_single, "Stall generations (single mode)")->capture_default_str();
    seg->add_option("--strategy", strategy, "single | rough-finish")
        ->check(CLI::IsMember({"single", "rough-finish"}))
        ->capture_default_str();
    seg->add_option("--ns-rough", cfg.strategy.n_s_rough, "Stall generations, roughing stage")->capture_default_str();
    seg->add_option("--ns-finish", cfg.strategy.n_s_finish, "Stall generations, finishing stage")->capture_default_str();
    auto* seed_opt = seg->add_option("--seed", seed, "RNG seed (falls back to LAYERSEG_SEED, then entropy)");
    seg->add_option("--jobs", cfg.jobs, "Concurrent pipelines when several seeds are given")->capture_default_str();
    seg->add_option("--seeds", cfg.seeds, "Comma-separated seeds for diversified runs")->delimiter(',');
    seg->add_option("--out", cfg.out, "Result JSON file");
    seg->add_option("--svg", cfg.svg, "SVG rendering");
    seg->add_option("--history", cfg.history, "Fitness history CSV");
    seg->add_option("--max-generations", cfg.ga.max_generations, "Generation cap per GA run")->capture_default_str();
    seg->add_flag("--wall-time", cfg.wall_time, "Record wall-clock seconds in result and history files");

    std::string pre_input, pre_svg;
    PreprocessConfig pre_cfg;
    auto* pre = app.add_subcommand("preprocess", "Decompose a layer into basic elements");
    pre->add_option("--input", pre_input, "Layer JSON file")->required();
    pre->add_option("--alpha-max", pre_cfg.alpha_max, "Sharp-turn threshold in degrees")->capture_default_str();
    pre->add_option("--svg", pre_svg, "SVG of the basic elements");

    std::string val_input;
    auto* val = app.add_subcommand("validate", "Check a layer file");
    val->add_option("--input", val_input, "Layer JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitSchema;
    }

    try {
        if (*seg) {
            cfg.strategy.mode = strategy == "rough-finish" ? Strategy::RoughFinish : Strategy::Single;
            cfg.ga.n_s = cfg.strategy.n_s_single;
            cfg.ga.alpha_max = cfg.preprocess.alpha_max;
            try {
                cfg.preprocess.validate();
                cfg.ga.validate();
                cfg.strategy.validate();
            } catch (const PreconditionViolated& e) {
                throw SchemaError(std::string("invalid option: ") + e.what());
            }
            return run_segment(cfg, seed_opt->count() > 0, seed);
        }
        if (*pre) {
            try {
                pre_cfg.validate();
            } catch (const PreconditionViolated& e) {
                throw SchemaError(std::string("invalid option: ") + e.what());
            }
            return run_preprocess(pre_input, pre_cfg, pre_svg);
        }
        if (*val) return run_validate(val_input);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kExitSchema;
    } catch (const ResourceExhausted& e) {
        std::cerr << "resource exhausted: " << e.what() << '\n';
        return kExitExhausted;
    } catch (const Error& e) {
        std::cerr << "geometry error: " << e.what() << '\n';
        return kExitGeometry;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
