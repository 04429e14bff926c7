#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace rainbow;

namespace {

SweepConfig small_config() {
    SweepConfig cfg;
    cfg.n = 20;
    cfg.k = 3;
    cfg.ell = 1;
    cfg.grid = {0.0, 0.5, 1.0};
    cfg.trials = 20;
    cfg.seed = 11;
    cfg.checks = kCheckBadSet | kCheckStarCert | kCheckCommonNbrs;
    return cfg;
}

}  // namespace

TEST(Sweep, TrivialGridEnds) {
    const auto rows = run_sweep(small_config());
    ASSERT_EQ(rows.size(), 3U);
    EXPECT_EQ(rows[0].bad_set->p(), 1.0);
    EXPECT_EQ(rows[0].star_cert->p(), 0.0);
    EXPECT_EQ(*rows[0].min_min_y, 0U);
    EXPECT_EQ(rows[2].bad_set->p(), 0.0);
    EXPECT_EQ(*rows[2].min_min_y, 17U);
    for (const auto& r : rows) {
        for (const auto& e : {r.bad_set, r.star_cert, r.common_ok}) {
            EXPECT_GE(e->p(), 0.0);
            EXPECT_LE(e->p(), 1.0);
            EXPECT_DOUBLE_EQ(e->se(), std::sqrt(e->p() * (1 - e->p()) / r.trials));
        }
    }
}

TEST(Sweep, ThreadCountDoesNotChangeOutput) {
    auto cfg = small_config();
    const std::string one = sweep_csv(run_sweep(cfg));
    cfg.threads = 4;
    EXPECT_EQ(sweep_csv(run_sweep(cfg)), one);
    cfg.seed = 12;
    EXPECT_NE(sweep_csv(run_sweep(cfg)), one);
}

TEST(Sweep, CsvLayout) {
    auto cfg = small_config();
    cfg.checks = kCheckBadSet;
    cfg.grid = {0.0};
    cfg.trials = 4;
    EXPECT_EQ(sweep_csv(run_sweep(cfg)),
              std::string(kSweepCsvHeader) + "\n" + "gnp,20,3,1,0.000000,,4,1.000000,0.000000,,,,,,0\n");
}

TEST(Sweep, CoefficientGridClamps) {
    SweepConfig cfg;
    cfg.n = 20;
    cfg.grid = {0.5, 3.0};
    cfg.grid_is_coefficient = true;
    cfg.trials = 2;
    cfg.checks = kCheckBadSet;
    const auto rows = run_sweep(cfg);
    EXPECT_NEAR(rows[0].grid_value, 0.5 * threshold_p(20, 3), 1e-12);
    EXPECT_FALSE(rows[0].clamped);
    EXPECT_EQ(rows[1].grid_value, 1.0);
    EXPECT_TRUE(rows[1].clamped);
    EXPECT_EQ(*rows[1].coefficient, 3.0);

    cfg.model = Model::GNM;
    const auto mrows = run_sweep(cfg);
    EXPECT_EQ(mrows[0].grid_value, static_cast<double>(p_to_M(20, 0.5 * threshold_p(20, 3), 0)));
    EXPECT_EQ(mrows[1].grid_value, 190.0);
}

TEST(Sweep, Validation) {
    auto cfg = small_config();
    cfg.checks = kCheckExact;
    EXPECT_THROW(run_sweep(cfg), ParameterError);
    cfg = small_config();
    cfg.grid = {1.2};
    EXPECT_THROW(run_sweep(cfg), ParameterError);
    cfg = small_config();
    cfg.model = Model::GNM;
    cfg.grid = {10.5};
    EXPECT_THROW(run_sweep(cfg), ParameterError);
    cfg = small_config();
    cfg.trials = 0;
    EXPECT_THROW(run_sweep(cfg), ParameterError);
}

TEST(Sweep, ExactColumnOnSmallGraphs) {
    SweepConfig cfg;
    cfg.n = 6;
    cfg.grid = {0.3, 1.0};
    cfg.trials = 10;
    cfg.checks = kCheckExact | kCheckBadSet;
    const auto rows = run_sweep(cfg);
    EXPECT_EQ(rows[1].exact->p(), 1.0);  // rx(K6) <= 3
    const std::string csv = sweep_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), std::string(kSweepCsvHeader) + ",pr_exact,se_exact");
}

TEST(CommonNeighbours, FullScanMatchesOracle) {
    for (int i = 0; i < 20; ++i) {
        const Graph g = gen_gnp(GenSpec::gnp(15, 0.6, static_cast<std::uint64_t>(i)));
        std::size_t want = SIZE_MAX;
        for (const auto& s : oracle::all_k_sets(15, 3)) want = std::min(want, oracle::common_neighbors(g, s).size());
        EXPECT_EQ(min_common_neighbors(g, 3, 60, 0, 0), want);
        // Sampling can only see a superset of the minimum.
        EXPECT_GE(min_common_neighbors(g, 3, 10, 200, 5), want);
    }
}

TEST(CommonNeighbours, SamplerIsUniformOverTriples) {
    Engine eng(1);
    std::vector<Vertex> s;
    std::vector<int> hits(binomial(6, 3), 0);
    const int draws = 40000;
    for (int i = 0; i < draws; ++i) {
        detail::sample_k_set(eng, 6, 3, s);
        ASSERT_TRUE(std::is_sorted(s.begin(), s.end()));
        ASSERT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
        const auto all = oracle::all_k_sets(6, 3);
        ++hits[static_cast<std::size_t>(std::find(all.begin(), all.end(), s) - all.begin())];
    }
    const double mean = draws / 20.0, sd = std::sqrt(draws * 0.05 * 0.95);
    for (int h : hits) EXPECT_LT(std::abs(h - mean), 4 * sd);
}

// Curves from an uncoupled sweep still respect monotonicity within noise.
TEST(Sweep, MonotoneCurvesWithinTwoSigma) {
    SweepConfig cfg;
    cfg.n = 20;
    cfg.grid = {0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    cfg.trials = 100;
    cfg.seed = 3;
    const auto rows = run_sweep(cfg);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const auto &a = rows[i], &b = rows[i + 1];
        EXPECT_GE(b.star_cert->p() + 2 * (a.star_cert->se() + b.star_cert->se()), a.star_cert->p());
        EXPECT_LE(b.bad_set->p(), a.bad_set->p() + 2 * (a.bad_set->se() + b.bad_set->se()));
    }
}
