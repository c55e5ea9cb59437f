#include <cmath>
#include <string>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "layerseg/io.hpp"

namespace layerseg {

using nlohmann::json;

std::string format_fixed(double v, int decimals) {
    const double unit = 0.5 * std::pow(10.0, -decimals);
    if (std::abs(v) < unit) v = 0.0;  // no "-0.000"
    return fmt::format("{:.{}f}", v, decimals);
}

namespace {

// Minimal streaming writer; numbers are formatted here, not by a library, so
// the byte layout is fixed.
class Writer {
public:
    void open(char c) {
        separate();
        out_ += c;
        first_ = true;
    }
    void close(char c) {
        out_ += c;
        first_ = false;
    }
    void key(std::string_view k) {
        separate();
        out_ += '"';
        out_ += k;
        out_ += "\":";
        first_ = true;
    }
    void raw(std::string_view v) {
        separate();
        out_ += v;
    }
    void str(std::string_view v) { raw(json(std::string(v)).dump()); }
    void num(double v) { raw(format_fixed(v)); }
    void integer(long long v) { raw(std::to_string(v)); }
    void uinteger(std::uint64_t v) { raw(std::to_string(v)); }
    void null() { raw("null"); }

    void point(Point2 p) {
        open('[');
        num(p.x);
        num(p.y);
        close(']');
    }
    void ring(const Ring& r) {
        open('[');
        for (const Point2& p : r) point(p);
        close(']');
    }

    std::string take() {
        out_ += '\n';
        return std::move(out_);
    }

private:
    void separate() {
        if (!first_) out_ += ',';
        first_ = false;
    }

    std::string out_;
    bool first_ = true;
};

const char* strategy_name(Strategy s) { return s == Strategy::RoughFinish ? "rough-finish" : "single"; }

void write_sub_regions(Writer& w, const std::vector<SubRegion>& subs) {
    w.open('[');
    for (const SubRegion& s : subs) {
        w.open('{');
        w.key("id");
        w.integer(s.id);
        w.key("iteration");
        w.integer(s.iteration);
        w.key("points");
        w.ring(s.region.outer);
        w.key("holes");
        w.open('[');
        for (const Ring& h : s.region.holes) w.ring(h);
        w.close(']');
        w.key("source_elements");
        w.open('[');
        for (int id : s.source_element_ids) w.integer(id);
        w.close(']');
        w.key("chromosome");
        w.open('{');
        w.key("w");
        w.num(s.chromosome.w);
        w.key("h");
        w.num(s.chromosome.h);
        w.key("tx");
        w.num(s.chromosome.tx);
        w.key("ty");
        w.num(s.chromosome.ty);
        w.key("theta");
        w.num(s.chromosome.theta);
        w.close('}');
        w.key("fitness");
        w.open('{');
        w.key("F");
        w.num(s.terms.fitness);
        w.key("s0");
        w.num(s.terms.s0);
        w.key("s1");
        w.num(s.terms.s1);
        w.key("s2");
        w.num(s.terms.s2);
        w.key("s3");
        w.num(s.terms.s3);
        w.key("n_st");
        w.integer(s.terms.n_st);
        w.close('}');
        w.close('}');
    }
    w.close(']');
}

[[noreturn]] void schema(const std::string& where, const std::string& what) {
    throw SchemaError(where.empty() ? what : where + ": " + what);
}

Point2 read_point(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        schema(where, "point must be [x, y]");
    }
    const Point2 p{j[0].get<double>(), j[1].get<double>()};
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) schema(where, "non-finite coordinate");
    return p;
}

Ring read_ring(const json& j, const std::string& where, std::size_t min_points) {
    if (!j.is_array()) schema(where, "points must be an array");
    if (j.size() < min_points) {
        schema(where, "needs at least " + std::to_string(min_points) + " points, has " + std::to_string(j.size()));
    }
    Ring r;
    for (const json& p : j) r.push_back(read_point(p, where));
    return r;
}

std::string loop_where(std::size_t i) { return "loop " + std::to_string(i); }

}  // namespace

Layer parse_layer(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) schema("", "layer document must be an object");
    if (doc.contains("units") && doc["units"] != "mm") schema("", "units must be \"mm\"");
    if (!doc.contains("loops") || !doc["loops"].is_array()) schema("", "missing \"loops\" array");

    Layer layer;
    const json& loops = doc["loops"];
    for (std::size_t i = 0; i < loops.size(); ++i) {
        const json& l = loops[i];
        const std::string where = loop_where(i);
        if (!l.is_object()) schema(where, "loop must be an object");
        if (!l.contains("points")) schema(where, "missing \"points\"");
        Loop loop;
        loop.ring = read_ring(l["points"], where, 3);
        if (l.contains("role") && !l["role"].is_null()) {
            if (l["role"] == "material") {
                loop.role = LoopRole::Material;
            } else if (l["role"] == "hole") {
                loop.role = LoopRole::Hole;
            } else {
                schema(where, "role must be \"material\", \"hole\" or null");
            }
        }
        layer.loops.push_back(std::move(loop));
    }
    if (doc.contains("meta")) {
        const json& meta = doc["meta"];
        if (!meta.is_object()) schema("meta", "must be an object");
        if (meta.contains("layer_index")) {
            if (!meta["layer_index"].is_number_integer()) schema("meta", "layer_index must be an integer");
            layer.meta.index = meta["layer_index"].get<long long>();
        }
        if (meta.contains("z")) {
            if (!meta["z"].is_number()) schema("meta", "z must be a number");
            layer.meta.z = meta["z"].get<double>();
        }
    }
    // Geometric validation; roles of the returned layer stay as declared.
    (void)classify_loops(layer);
    return layer;
}

std::string write_layer(const Layer& layer) {
    Writer w;
    w.open('{');
    w.key("units");
    w.str("mm");
    w.key("loops");
    w.open('[');
    for (const Loop& l : layer.loops) {
        w.open('{');
        w.key("role");
        if (!l.role) {
            w.null();
        } else {
            w.str(*l.role == LoopRole::Material ? "material" : "hole");
        }
        w.key("points");
        w.ring(l.ring);
        w.close('}');
    }
    w.close(']');
    w.key("meta");
    w.open('{');
    if (layer.meta.index) {
        w.key("layer_index");
        w.integer(*layer.meta.index);
    }
    if (layer.meta.z) {
        w.key("z");
        w.num(*layer.meta.z);
    }
    w.close('}');
    w.close('}');
    return w.take();
}

std::string write_result(const SegmentationResult& result, const ResultOptions& options) {
    if (result.sub_regions.empty()) throw PreconditionViolated("a segmentation result has at least one sub-region");
    Writer w;
    w.open('{');
    w.key("config");
    w.open('{');
    w.key("alpha_max");
    w.num(result.preprocess.alpha_max);
    w.key("n_ps");
    w.integer(result.ga.n_ps);
    w.key("n_new");
    w.num(result.ga.n_new);
    w.key("rho");
    w.num(result.ga.rho);
    w.key("n_s");
    w.integer(result.ga.n_s);
    w.key("c0");
    w.num(result.ga.c0);
    w.key("c1");
    w.num(result.ga.c1);
    w.key("c3");
    w.num(result.ga.c3);
    w.key("c2_threshold");
    w.num(result.ga.c2_threshold);
    w.key("max_generations");
    w.integer(result.ga.max_generations);
    w.key("strategy");
    w.str(strategy_name(result.strategy.mode));
    w.key("n_s_rough");
    w.integer(result.strategy.n_s_rough);
    w.key("n_s_finish");
    w.integer(result.strategy.n_s_finish);
    w.close('}');
    w.key("seed");
    w.uinteger(result.seed);
    w.key("sub_regions");
    write_sub_regions(w, result.sub_regions);
    if (result.strategy.mode == Strategy::RoughFinish) {
        w.key("rough_sub_regions");
        write_sub_regions(w, result.rough_sub_regions);
    }
    w.key("timing");
    w.open('{');
    w.key("iterations");
    w.open('[');
    for (const IterationRecord& r : result.iterations) {
        w.open('{');
        w.key("iteration");
        w.integer(r.iteration);
        w.key("stage");
        w.str(result.strategy.mode == Strategy::Single ? "single" : (r.stage == 0 ? "rough" : "finish"));
        w.key("generations");
        w.integer(r.trace.generations);
        if (options.wall_time) {
            w.key("wall_seconds");
            w.num(r.wall_seconds);
        }
        w.close('}');
    }
    w.close(']');
    if (options.wall_time) {
        w.key("total_seconds");
        w.num(result.total_seconds);
    }
    w.close('}');
    w.close('}');
    return w.take();
}

SegmentationResult parse_result(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("sub_regions")) schema("", "result document needs \"sub_regions\"");

    auto read_subs = [](const json& arr) {
        std::vector<SubRegion> subs;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const json& s = arr[i];
            const std::string where = "sub_region " + std::to_string(i);
            SubRegion sub;
            try {
                sub.id = s.at("id").get<int>();
                sub.iteration = s.at("iteration").get<int>();
                sub.region.outer = read_ring(s.at("points"), where, 3);
                for (const json& h : s.at("holes")) sub.region.holes.push_back(read_ring(h, where, 3));
                sub.source_element_ids = s.at("source_elements").get<std::vector<int>>();
                const json& c = s.at("chromosome");
                sub.chromosome = {c.at("w").get<double>(), c.at("h").get<double>(), c.at("tx").get<double>(),
                                  c.at("ty").get<double>(), c.at("theta").get<double>()};
                const json& f = s.at("fitness");
                sub.terms = {f.at("s0").get<double>(), f.at("s1").get<double>(), f.at("s2").get<double>(),
                             f.at("s3").get<double>(), f.at("n_st").get<int>(), f.at("F").get<double>()};
            } catch (const json::exception& e) {
                schema(where, e.what());
            }
            subs.push_back(std::move(sub));
        }
        return subs;
    };

    SegmentationResult r;
    r.sub_regions = read_subs(doc["sub_regions"]);
    if (doc.contains("rough_sub_regions")) {
        r.rough_sub_regions = read_subs(doc["rough_sub_regions"]);
        r.strategy.mode = Strategy::RoughFinish;
    }
    if (doc.contains("seed")) r.seed = doc["seed"].get<std::uint64_t>();
    return r;
}

}  // namespace layerseg
