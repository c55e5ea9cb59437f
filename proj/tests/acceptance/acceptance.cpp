// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <sys/wait.h>
#include <unistd.h>

#include "fixtures.hpp"

using namespace layerseg;
using namespace layerseg::testing;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

// Traces gathered by criteria 3 and 4 for the elitism check.
std::vector<std::vector<double>> traces;

void collect(const SegmentationResult& r) {
    for (const IterationRecord& it : r.iterations) {
        if (!it.trace.best_fitness.empty()) traces.push_back(it.trace.best_fitness);
    }
}

bool conserved(const std::vector<SubRegion>& subs, double total, double* worst_overlap = nullptr) {
    const double overlap = max_pairwise_overlap(regions_of(subs));
    if (worst_overlap) *worst_overlap = std::max(*worst_overlap, overlap);
    return std::abs(total_area(subs) - total) <= 1e-4 * total && overlap < 1e-6;
}

SegmentationResult run(const Layer& layer, Strategy mode, std::uint64_t seed) {
    StrategyConfig strategy;
    strategy.mode = mode;
    return segment_layer(layer, PreprocessConfig{}, GAConfig{}, strategy, seed);
}

void criterion_1() {
    const GAConfig cfg;
    const double a = fitness(200, 200, 0, 0, 4, 200, cfg);
    const double b = fitness(300, 300, 100, 0, 6, 400, cfg);
    const double eb = -300.3 / std::exp(2.0);
    const bool ok = std::abs(a + 200.2) <= 1e-9 && std::abs(b - eb) <= 1e-9;
    report(1, ok, fmt::format("F(200,200,0,0,4) = {:.12f} (want -200.2); F(300,300,100,0,6|400) = {:.12f} (want {:.12f})",
                              a, b, eb));
}

void criterion_2() {
    const auto t0 = Clock::now();
    const DepositionRegion region = region_of(load_layer("l_shape.json"));
    const PreprocessConfig cfg{30.0};
    const auto cuts = generate_cuts(region, find_sharp_turns(region, cfg));
    const auto elements = decompose(region, cfg);
    const double elapsed = seconds_since(t0);

    const Region expected[] = {box(0, 0, 10, 10), box(10, 0, 20, 10), box(0, 10, 10, 20)};
    bool shapes = elements.size() == 3;
    for (const Region& e : expected) {
        int hits = 0;
        for (const BasicElement& el : elements) hits += same_shape(el.region, e) ? 1 : 0;
        shapes = shapes && hits == 1;
    }
    double sum = 0.0;
    for (const BasicElement& e : elements) sum += e.area;
    const bool ok = shapes && cuts.size() == 2 && std::abs(sum - 300.0) <= 1e-6 * 300.0 && elapsed < 0.1;
    report(2, ok, fmt::format("{} elements (shapes {}), {} cuts, area sum {:.9f}, {:.4f} s", elements.size(),
                              shapes ? "match" : "differ", cuts.size(), sum, elapsed));
}

void criterion_3() {
    const Layer layer = load_layer("l_shape.json");
    const DepositionRegion region = region_of(layer);
    const auto elements = decompose(region, PreprocessConfig{});
    const auto subsets = oracle_enumerate_subsets(elements, region, 30.0);
    const auto best = std::min_element(subsets.begin(), subsets.end(),
                                       [](const SubsetScore& a, const SubsetScore& b) { return a.fitness < b.fitness; });
    // A = (5,5) centroid, B = (15,5), C = (5,15)
    auto id_at = [&](double x, double y) {
        for (const BasicElement& e : elements) {
            const Point2 c = centroid(e.region);
            if (std::abs(c.x - x) < 1e-6 && std::abs(c.y - y) < 1e-6) return e.id;
        }
        return -1;
    };
    std::vector<int> ab{id_at(5, 5), id_at(15, 5)}, ac{id_at(5, 5), id_at(5, 15)};
    std::sort(ab.begin(), ab.end());
    std::sort(ac.begin(), ac.end());
    std::vector<int> best_ids = best->ids;
    std::sort(best_ids.begin(), best_ids.end());
    const bool oracle_ok = std::abs(best->fitness + 200.2) <= 1e-9 && (best_ids == ab || best_ids == ac);

    const ElementSet set(elements);
    const DepositionContext ctx = DepositionContext::from(region);
    int near_optimal = 0;
    int two_regions = 0;
    double slowest = 0.0;
    std::string per_seed;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto t0 = Clock::now();
        Rng rng(seed);
        const GAResult ga = run_ga(set, ctx, GAConfig{}, rng);
        const SegmentationResult seg = run(layer, Strategy::Single, seed);
        slowest = std::max(slowest, seconds_since(t0));
        traces.push_back(ga.trace.best_fitness);
        collect(seg);
        near_optimal += ga.best.terms.fitness <= -190.0 ? 1 : 0;
        two_regions += seg.sub_regions.size() == 2 ? 1 : 0;
        per_seed += fmt::format(" {:.2f}", ga.best.terms.fitness);
    }
    const bool ok = oracle_ok && near_optimal >= 9 && two_regions == 10 && slowest < 5.0;
    report(3, ok, fmt::format("oracle: {} connected subsets, optimum {:.6f} on {{{}}}; GA <= -190 in {}/10 seeds "
                              "(best F per seed:{}); 2 sub-regions in {}/10; slowest seed {:.3f} s",
                              subsets.size(), best->fitness, fmt::join(best_ids, ","), near_optimal, per_seed,
                              two_regions, slowest));
}

void criterion_4() {
    bool ok = true;
    double worst_overlap = 0.0;
    double worst_rel = 0.0;
    for (const char* name : {"l_shape.json", "annulus.json", "benchmark.json"}) {
        const Layer layer = load_layer(name);
        const double total = region_of(layer).area();
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const SegmentationResult r = run(layer, Strategy::Single, seed);
            collect(r);
            worst_rel = std::max(worst_rel, std::abs(total_area(r.sub_regions) - total) / total);
            ok = conserved(r.sub_regions, total, &worst_overlap) && ok;
        }
    }
    report(4, ok, fmt::format("30 runs over F1-F3: worst relative area error {:.3e}, worst pairwise overlap {:.3e} mm2",
                              worst_rel, worst_overlap));
}

void criterion_5() {
    std::size_t bad = 0;
    for (const auto& t : traces) bad += non_increasing(t) ? 0 : 1;
    report(5, bad == 0 && !traces.empty(),
           fmt::format("{} traces from criteria 3-4, {} with an increasing step", traces.size(), bad));
}

void criterion_6() {
    const Layer layer = load_layer("benchmark.json");
    const double total = region_of(layer).area();
    std::vector<double> t_single, t_rf, n_single;
    std::vector<std::size_t> n_rf;
    bool conserve = true;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto t0 = Clock::now();
        const SegmentationResult s = run(layer, Strategy::Single, seed);
        t_single.push_back(seconds_since(t0));
        t0 = Clock::now();
        const SegmentationResult rf = run(layer, Strategy::RoughFinish, seed);
        t_rf.push_back(seconds_since(t0));
        n_single.push_back(static_cast<double>(s.sub_regions.size()));
        n_rf.push_back(rf.sub_regions.size());
        conserve = conserve && conserved(rf.rough_sub_regions, total) && conserved(rf.sub_regions, total);
    }
    const double ms = median(t_single), mr = median(t_rf), mc = median(n_single);
    bool counts = true;
    for (std::size_t n : n_rf) counts = counts && std::abs(static_cast<double>(n) - mc) <= 1.0;
    const double ratio = mr / ms;
    report(6, ratio <= 0.8 && counts && conserve,
           fmt::format("median wall time single {:.3f} s, rough-finish {:.3f} s, ratio {:.3f} (limit 0.8); "
                       "single median count {}, rough-finish counts [{}]; conservation both stages {}",
                       ms, mr, ratio, mc, fmt::join(n_rf, ","), conserve ? "holds" : "violated"));
}

void criterion_7() {
    const Layer layer = load_layer("benchmark.json");
    StrategyConfig strategy;
    strategy.mode = Strategy::RoughFinish;
    int diverse = 0;
    std::vector<double> triple_times, single_times;
    for (std::uint64_t k = 0; k < 10; ++k) {
        const std::vector<std::uint64_t> seeds{3 * k + 1, 3 * k + 2, 3 * k + 3};
        const auto t0 = Clock::now();
        const auto outcomes = parallel_diversified(layer, PreprocessConfig{}, GAConfig{}, strategy, seeds);
        triple_times.push_back(seconds_since(t0));
        bool distinct = false;
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            for (std::size_t j = i + 1; j < outcomes.size(); ++j) {
                if (outcomes[i].result && outcomes[j].result &&
                    structurally_distinct(*outcomes[i].result, *outcomes[j].result, 0.01)) {
                    distinct = true;
                }
            }
        }
        diverse += distinct ? 1 : 0;
        const auto t1 = Clock::now();
        run(layer, Strategy::RoughFinish, seeds.front());
        single_times.push_back(seconds_since(t1));
    }
    const unsigned units = std::thread::hardware_concurrency();
    report(7, diverse >= 8,
           fmt::format("{}/10 seed-triples gave >= 2 distinct segmentations (rough-finish); k=3 median {:.3f} s vs "
                       "single-run median {:.3f} s on {} execution unit(s) (logged only)",
                       diverse, median(triple_times), median(single_times), units));
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(LAYERSEG_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_8() {
    const fs::path dir = fs::temp_directory_path() / ("layerseg_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string input = data_path("benchmark.json");
    bool ran = true;
    for (const char* tag : {"a", "b"}) {
        const fs::path base = dir / tag;
        ran = ran && run_cli("segment --input " + input + " --seed 2024 --out " + base.string() + ".json --svg " +
                             base.string() + ".svg --history " + base.string() + ".csv") == 0;
    }
    std::vector<std::string> parts;
    bool same = ran;
    for (const char* ext : {".json", ".csv", ".svg"}) {
        const std::string a = read_text((dir / "a").string() + ext);
        const std::string b = read_text((dir / "b").string() + ext);
        const bool eq = !a.empty() && a == b;
        same = same && eq;
        parts.push_back(fmt::format("{} {} bytes {}", ext, a.size(), eq ? "identical" : "DIFFER"));
    }
    fs::remove_all(dir);
    report(8, same, fmt::format("two CLI runs on F3, seed 2024: {}", ran ? fmt::format("{}", fmt::join(parts, "; ")) : "CLI failed"));
}

void criterion_9() {
    std::printf("criterion 9: INFO  absolute case-study figures (iteration count, total seconds, generation of "
                "best solution) depend on unpublished geometry and hardware; covered by criteria 3-7\n");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    std::printf("%s: %d criterion failure(s)\n", failures ? "FAILED" : "PASSED", failures);
    return failures ? 1 : 0;
}
