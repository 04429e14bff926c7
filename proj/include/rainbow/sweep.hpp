#pragma once

// Seeded Monte Carlo sweeps over an edge-probability (or edge-count) grid.
//
// Trial j at grid point i draws its graph from GenSpec seed
// derive_seed(master, {i, j}); the same value seeds that trial's random
// coloring and k-set sampling through distinct stream tags. Results depend
// only on (config, master seed), never on the thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "index_solver.hpp"
#include "parallel.hpp"
#include "threshold.hpp"

namespace rainbow {

enum Check : unsigned {
    kCheckBadSet = 1U << 0,
    kCheckStarCert = 1U << 1,
    kCheckCommonNbrs = 1U << 2,
    kCheckExact = 1U << 3,
};

inline constexpr std::size_t kExactSweepMaxN = 8;

struct SweepConfig {
    Model model = Model::GNP;
    std::size_t n = 0;
    std::size_t k = 3;
    std::size_t ell = 1;
    std::vector<double> grid;      // p values, M values, or coefficients
    bool grid_is_coefficient = false;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    unsigned checks = kCheckBadSet | kCheckStarCert;
    std::size_t threads = 1;
    std::size_t full_scan_max_n = 60;      // COMMON_NBRS scans all k-sets up to this n
    std::size_t common_samples = 100000;   // ...and samples this many above it
};

struct Estimate {
    std::size_t hits = 0;
    std::size_t trials = 0;

    double p() const { return trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0; }
    double se() const { return std::sqrt(p() * (1.0 - p()) / static_cast<double>(trials)); }
};

struct SweepRow {
    Model model = Model::GNP;
    std::size_t n = 0, k = 0, ell = 0;
    double grid_value = 0;  // p for GNP, M for GNM
    std::optional<double> coefficient;
    bool clamped = false;
    std::size_t trials = 0;
    std::optional<Estimate> bad_set, star_cert, common_ok, exact;
    std::optional<double> mean_min_y;
    std::optional<std::size_t> min_min_y;  // smallest Y seen over all trials
    double y_target = 0;                   // 2k log_a n
};

namespace detail {

struct TrialResult {
    bool bad_set = false;
    bool star_cert = false;
    bool exact = false;
    std::size_t min_y = 0;
};

// Smallest common-neighbourhood size over every k-set (colex scan).
inline std::size_t min_common_full(const Graph& g, std::size_t k) {
    const std::size_t W = g.row_words();
    std::vector<std::vector<Word>> prefix(k, std::vector<Word>(W));
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for_each_k_subset_colex(
        g.order(), k,
        [&](std::size_t depth, Vertex v, std::span<const Vertex>) {
            auto r = g.row(v);
            if (depth == 0) {
                std::copy(r.begin(), r.end(), prefix[0].begin());
            } else {
                for (std::size_t w = 0; w < W; ++w) prefix[depth][w] = prefix[depth - 1][w] & r[w];
            }
            return true;
        },
        [&](std::span<const Vertex>) {
            // Rows exclude their own vertex, so the AND already excludes S.
            best = std::min(best, popcount(prefix[k - 1]));
            return best > 0;
        });
    return best;
}

// Uniform random k-set (Floyd's algorithm), ascending.
inline void sample_k_set(Engine& eng, std::size_t n, std::size_t k, std::vector<Vertex>& out) {
    out.clear();
    for (std::size_t j = n - k; j < n; ++j) {
        const auto t = static_cast<Vertex>(uniform_below(eng, j + 1));
        if (std::find(out.begin(), out.end(), t) == out.end()) {
            out.push_back(t);
        } else {
            out.push_back(static_cast<Vertex>(j));
        }
    }
    std::sort(out.begin(), out.end());
}

inline std::size_t min_common_sampled(const Graph& g, std::size_t k, std::size_t samples, std::uint64_t seed) {
    Engine eng = substream(seed, StreamTag::Sampling);
    std::vector<Vertex> s;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < samples && best > 0; ++i) {
        sample_k_set(eng, g.order(), k, s);
        best = std::min(best, popcount(common_neighbor_row(g, s)));
    }
    return best;
}

}  // namespace detail

// Smallest |common_neighbors(G, S)| over k-sets: every k-set when
// n <= full_scan_max_n, otherwise `samples` random k-sets.
inline std::size_t min_common_neighbors(const Graph& g, std::size_t k, std::size_t full_scan_max_n,
                                        std::size_t samples, std::uint64_t seed) {
    return g.order() <= full_scan_max_n ? detail::min_common_full(g, k)
                                        : detail::min_common_sampled(g, k, samples, seed);
}

struct GridPoint {
    double value = 0;  // p or M
    std::optional<double> coefficient;
    bool clamped = false;
};

// Coefficients c map to p = min(1, c p(n)); in GNM mode that p is then
// converted with p_to_M(n, p, 0).
inline GridPoint materialize_grid_point(const SweepConfig& cfg, double g) {
    GridPoint pt;
    if (cfg.grid_is_coefficient) {
        require(g >= 0, "grid coefficients must be non-negative");
        pt.coefficient = g;
        const double raw = g * threshold_p(static_cast<double>(cfg.n), cfg.k, LogBase::A);
        pt.clamped = raw > 1.0;
        const double p = std::min(1.0, raw);
        pt.value = cfg.model == Model::GNP ? p : static_cast<double>(p_to_M(cfg.n, p, 0.0));
        return pt;
    }
    if (cfg.model == Model::GNP) {
        require(g >= 0.0 && g <= 1.0, "p grid values must lie in [0, 1]");
    } else {
        require(g >= 0 && g == std::floor(g) && g <= static_cast<double>(max_edges(cfg.n)),
                "M grid values must be integers in [0, n(n-1)/2]");
    }
    pt.value = g;
    return pt;
}

inline void validate(const SweepConfig& cfg) {
    require(cfg.k >= 3, "k must be at least 3");
    require(cfg.n >= cfg.k, "n must be at least k");
    require(cfg.ell >= 1, "ell must be at least 1");
    require(cfg.trials >= 1, "trials must be at least 1");
    require(!cfg.grid.empty(), "grid must not be empty");
    require(cfg.checks != 0, "at least one check must be selected");
    require(!(cfg.checks & kCheckExact) || cfg.n <= kExactSweepMaxN, "EXACT check requires n <= 8");
    require(cfg.n >= 2, "n must be at least 2");
}

inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    validate(cfg);
    std::vector<GridPoint> points;
    for (double g : cfg.grid) points.push_back(materialize_grid_point(cfg, g));

    const double y_target = 2.0 * static_cast<double>(cfg.k) * log_a(static_cast<double>(cfg.n), cfg.k);
    const std::size_t per_point = cfg.trials;
    std::vector<detail::TrialResult> results(points.size() * per_point);

    parallel_for(results.size(), cfg.threads, [&](std::size_t idx) {
        const std::size_t pi = idx / per_point;
        const std::size_t tj = idx % per_point;
        const std::uint64_t seed = derive_seed(cfg.seed, {pi, tj});
        const GridPoint& pt = points[pi];
        const GenSpec spec = cfg.model == Model::GNP
                                 ? GenSpec::gnp(cfg.n, pt.value, seed)
                                 : GenSpec::gnm(cfg.n, static_cast<std::uint64_t>(pt.value), seed);
        const Graph g = generate(spec);
        detail::TrialResult& r = results[idx];
        if (cfg.checks & kCheckBadSet) r.bad_set = find_bad_set(g, cfg.k).has_value();
        if (cfg.checks & kCheckStarCert)
            r.star_cert = upper_certificate(g, cfg.k, cfg.ell, 1, seed, CertMode::Star).has_value();
        if (cfg.checks & kCheckCommonNbrs)
            r.min_y = min_common_neighbors(g, cfg.k, cfg.full_scan_max_n, cfg.common_samples, seed);
        if (cfg.checks & kCheckExact) r.exact = exact_rx(g, cfg.k, cfg.ell, cfg.k).found();
    });

    std::vector<SweepRow> rows;
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        SweepRow row;
        row.model = cfg.model;
        row.n = cfg.n;
        row.k = cfg.k;
        row.ell = cfg.ell;
        row.grid_value = points[pi].value;
        row.coefficient = points[pi].coefficient;
        row.clamped = points[pi].clamped;
        row.trials = cfg.trials;
        row.y_target = y_target;
        Estimate bad{0, cfg.trials}, star{0, cfg.trials}, common{0, cfg.trials}, exact{0, cfg.trials};
        double sum_y = 0;
        std::size_t min_y = std::numeric_limits<std::size_t>::max();
        for (std::size_t tj = 0; tj < per_point; ++tj) {
            const auto& r = results[pi * per_point + tj];
            bad.hits += r.bad_set;
            star.hits += r.star_cert;
            exact.hits += r.exact;
            common.hits += static_cast<double>(r.min_y) >= y_target;
            sum_y += static_cast<double>(r.min_y);
            min_y = std::min(min_y, r.min_y);
        }
        if (cfg.checks & kCheckBadSet) row.bad_set = bad;
        if (cfg.checks & kCheckStarCert) row.star_cert = star;
        if (cfg.checks & kCheckExact) row.exact = exact;
        if (cfg.checks & kCheckCommonNbrs) {
            row.common_ok = common;
            row.mean_min_y = sum_y / static_cast<double>(cfg.trials);
            row.min_min_y = min_y;
        }
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr const char* kSweepCsvHeader =
    "model,n,k,ell,grid,coef,trials,pr_bad_set,se_bad_set,pr_star_cert,se_star_cert,pr_common_ok,se_common_ok,"
    "mean_minY,clamped";

namespace detail {

inline std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

inline void append_estimate(std::string& line, const std::optional<Estimate>& e) {
    if (e) {
        line += ',' + fixed6(e->p()) + ',' + fixed6(e->se());
    } else {
        line += ",,";
    }
}

}  // namespace detail

// Columns whose check was not requested are left empty. When any row carries
// EXACT results, pr_exact and se_exact are appended after `clamped`.
inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    const bool with_exact = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.exact.has_value(); });
    std::string out = kSweepCsvHeader;
    if (with_exact) out += ",pr_exact,se_exact";
    out += '\n';
    for (const SweepRow& r : rows) {
        std::string line = r.model == Model::GNP ? "gnp" : "gnm";
        line += ',' + std::to_string(r.n) + ',' + std::to_string(r.k) + ',' + std::to_string(r.ell);
        line += ',' + detail::fixed6(r.grid_value);
        line += ',' + (r.coefficient ? detail::fixed6(*r.coefficient) : std::string());
        line += ',' + std::to_string(r.trials);
        detail::append_estimate(line, r.bad_set);
        detail::append_estimate(line, r.star_cert);
        detail::append_estimate(line, r.common_ok);
        line += ',' + (r.mean_min_y ? detail::fixed6(*r.mean_min_y) : std::string());
        line += r.clamped ? ",1" : ",0";
        if (with_exact) detail::append_estimate(line, r.exact);
        out += line + '\n';
    }
    return out;
}

}  // namespace rainbow
