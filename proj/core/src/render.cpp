// SVG rendering and fitness-history CSV.
#include <algorithm>
#include <array>
#include <string>

#include <fmt/format.h>

#include "layerseg/io.hpp"

namespace layerseg {

namespace {

// SVG y grows downwards; coordinates are written with y negated.
std::string svg_num(double v) { return format_fixed(v, 6); }

std::string path_data(const Region& r) {
    std::string d;
    auto ring = [&](const Ring& pts) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            d += i == 0 ? "M" : " L";
            d += svg_num(pts[i].x) + " " + svg_num(-pts[i].y);
        }
        d += " Z ";
    };
    ring(r.outer);
    for (const Ring& h : r.holes) ring(h);
    if (!d.empty()) d.pop_back();
    return d;
}

std::string polygon_points(const Ring& pts) {
    std::string s;
    for (const Point2& p : pts) {
        if (!s.empty()) s += ' ';
        s += svg_num(p.x) + "," + svg_num(-p.y);
    }
    return s;
}

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string render_svg(const Layer& layer, const std::vector<BasicElement>& elements,
                       const SegmentationResult* result) {
    const DepositionRegion region = build_deposition_region(classify_loops(layer));
    std::vector<Point2> all;
    for (const Loop& l : layer.loops) all.insert(all.end(), l.ring.begin(), l.ring.end());
    const BoundingBox box = bounding_box(all);
    const double mx = 0.05 * box.width();
    const double my = 0.05 * box.height();
    const double stroke = 0.003 * std::max(box.width(), box.height());

    std::string out;
    out += R"(<?xml version="1.0" encoding="UTF-8"?>)" "\n";
    out += fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">)" "\n",
                       svg_num(box.min_x - mx), svg_num(-box.max_y - my), svg_num(box.width() + 2 * mx),
                       svg_num(box.height() + 2 * my));

    out += R"(<g id="deposition" fill="#dbe9f6" stroke="none" fill-rule="evenodd">)" "\n";
    for (const Region& r : region.components) out += fmt::format(R"(<path d="{}"/>)" "\n", path_data(r));
    out += "</g>\n";

    if (result) {
        out += R"(<g id="sub-regions" fill-opacity="0.55" stroke="none" fill-rule="evenodd">)" "\n";
        for (const SubRegion& s : result->sub_regions) {
            out += fmt::format(R"(<path data-id="{}" fill="{}" d="{}"/>)" "\n", s.id,
                               kPalette[static_cast<std::size_t>(s.id) % kPalette.size()], path_data(s.region));
        }
        out += "</g>\n";
    }

    out += fmt::format(R"(<g id="elements" fill="none" stroke="#333333" stroke-width="{}">)" "\n", svg_num(stroke));
    for (const BasicElement& e : elements) {
        out += fmt::format(R"(<path data-id="{}" d="{}"/>)" "\n", e.id, path_data(e.region));
    }
    out += "</g>\n";

    if (result) {
        out += fmt::format(
            R"(<g id="rectangles" fill="none" stroke="#d62728" stroke-width="{}" stroke-dasharray="{} {}">)" "\n",
            svg_num(stroke), svg_num(4 * stroke), svg_num(2 * stroke));
        for (const SubRegion& s : result->sub_regions) {
            out += fmt::format(R"(<polygon data-id="{}" points="{}"/>)" "\n", s.id,
                               polygon_points(rect_region(s.chromosome).outer));
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string write_history(const std::vector<IterationRecord>& iterations, bool wall_time) {
    if (iterations.empty()) throw PreconditionViolated("history needs at least one iteration");
    std::string out = "iteration,generation,best_fitness\n";
    for (const IterationRecord& r : iterations) {
        for (std::size_t g = 0; g < r.trace.best_fitness.size(); ++g) {
            out += fmt::format("{},{},{}\n", r.iteration, g, format_fixed(r.trace.best_fitness[g]));
        }
    }
    out += "\niteration,generations_run,wall_seconds\n";
    for (const IterationRecord& r : iterations) {
        out += fmt::format("{},{},{}\n", r.iteration, r.trace.generations,
                           wall_time ? format_fixed(r.wall_seconds, 6) : std::string());
    }
    return out;
}

}  // namespace layerseg
