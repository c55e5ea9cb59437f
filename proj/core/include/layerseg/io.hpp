#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "layerseg/layer.hpp"
#include "layerseg/preprocess.hpp"
#include "layerseg/segmenter.hpp"

namespace layerseg {

// Everything a `layerseg segment` invocation needs. Defaults follow the
// reference parameter set [alpha_max, N_PS, N_new, rho, N_s] = [30, 40, 90, 0.5, 60].
struct RunConfig {
    PreprocessConfig preprocess;
    GAConfig ga;
    StrategyConfig strategy;
    std::string input;
    std::string out;
    std::string svg;
    std::string history;
    unsigned jobs = 1;
    std::vector<std::uint64_t> seeds;
    bool wall_time = false;  // write measured seconds into result and history
};

// --- layer file ------------------------------------------------------------
//
// { "units": "mm",
//   "loops": [ { "role": "material" | "hole" | null, "points": [[x, y], ...] } ],
//   "meta": { "layer_index": n, "z": z } }

// Throws SchemaError for malformed documents and InvalidLayer for geometric
// violations; both name the offending loop.
Layer parse_layer(std::string_view json);
std::string write_layer(const Layer& layer);

// --- result file -----------------------------------------------------------

struct ResultOptions {
    bool wall_time = false;
};

// Stable key order and 9-decimal coordinates: equal results give equal bytes.
std::string write_result(const SegmentationResult& result, const ResultOptions& options = {});

// Reads back the geometric and provenance content of a result document
// (config and timing are not restored).
SegmentationResult parse_result(std::string_view json);

// --- renderings ------------------------------------------------------------

// Layers: deposition area, basic-element outlines, sub-region fills and the
// winning rectangles dashed. Pass no result to draw the elements only.
std::string render_svg(const Layer& layer, const std::vector<BasicElement>& elements,
                       const SegmentationResult* result = nullptr);

// iteration,generation,best_fitness rows followed by a summary block
// iteration,generations_run,wall_seconds.
std::string write_history(const std::vector<IterationRecord>& iterations, bool wall_time = false);

std::string format_fixed(double v, int decimals = 9);

}  // namespace layerseg
