#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"

using namespace rainbow;

namespace {

std::vector<Color> colors_for(const Graph& g, std::initializer_list<std::pair<Edge, Color>> assigned, Color rest) {
    std::vector<Color> cs(g.size(), rest);
    for (const auto& [e, c] : assigned) {
        const auto it = std::find(g.edges().begin(), g.edges().end(), e);
        cs[static_cast<std::size_t>(it - g.edges().begin())] = c;
    }
    return cs;
}

Graph star_graph(std::size_t leaves) {
    std::vector<Edge> es;
    for (Vertex v = 1; v <= leaves; ++v) es.push_back({0, v});
    return Graph(leaves + 1, es);
}

}  // namespace

TEST(EdgeColoring, ValidatesPalette) {
    const Graph g = complete_graph(3);
    std::vector<Color> zero{0, 1, 1};
    EXPECT_THROW(EdgeColoring(g, 2, zero), ParameterError);
    std::vector<Color> high{1, 3, 1};
    EXPECT_THROW(EdgeColoring(g, 2, high), ParameterError);
    std::vector<Color> short_list{1, 1};
    EXPECT_THROW(EdgeColoring(g, 2, short_list), ParameterError);
}

TEST(EdgeColoring, SymmetricLookupAndUncoloredEdge) {
    const Graph g = cycle_graph(4);
    const auto c = random_coloring(g, 3, 7);
    for (const Edge& e : g.edges()) EXPECT_EQ(c.at(e.u, e.v), c.at(e.v, e.u));
    EXPECT_THROW(c.color({0, 2}), ContractError);
    const std::vector<Edge> bad{{0, 2}};
    EXPECT_THROW(is_rainbow(bad, c), ContractError);
}

TEST(RandomColoring, SingleColorAndEmptyGraph) {
    const Graph g = gen_gnp(GenSpec::gnp(15, 0.4, 3));
    const auto c = random_coloring(g, 1, 99);
    for (const Edge& e : g.edges()) EXPECT_EQ(c.color(e), 1);
    const Graph empty(6);
    const auto ce = random_coloring(empty, 4, 1);
    EXPECT_EQ(ce.colored_edges(), 0U);
    EXPECT_TRUE(ce.matches(empty));
    EXPECT_THROW(random_coloring(g, 0, 1), ParameterError);
}

TEST(RandomColoring, Deterministic) {
    const Graph g = complete_graph(10);
    EXPECT_EQ(random_coloring(g, 3, 5), random_coloring(g, 3, 5));
    EXPECT_NE(random_coloring(g, 3, 5), random_coloring(g, 3, 6));
}

// Each of the 6 edges of K4 takes each of 3 colors with probability 1/3.
TEST(RandomColoring, PerEdgeUniform) {
    const Graph g = complete_graph(4);
    const int seeds = 9000;
    std::vector<std::array<int, 3>> hits(g.size(), {0, 0, 0});
    for (int s = 0; s < seeds; ++s) {
        const auto cs = random_coloring(g, 3, static_cast<std::uint64_t>(s)).per_edge(g);
        for (std::size_t i = 0; i < cs.size(); ++i) ++hits[i][cs[i] - 1];
    }
    const double mean = seeds / 3.0, sd = std::sqrt(seeds * (1.0 / 3) * (2.0 / 3));
    for (const auto& h : hits)
        for (int x : h) EXPECT_LT(std::abs(x - mean), 3.5 * sd);
}

TEST(IsRainbow, Examples) {
    const Graph g = complete_graph(4);
    const EdgeColoring c(g, 3, colors_for(g, {{{0, 1}, 1}, {{0, 2}, 1}, {{0, 3}, 2}}, 3));
    const std::vector<Edge> one{{0, 1}};
    EXPECT_TRUE(is_rainbow(one, c));
    const std::vector<Edge> same{{0, 1}, {0, 2}};
    EXPECT_FALSE(is_rainbow(same, c));
    const std::vector<Edge> diff{{0, 1}, {0, 3}};
    EXPECT_TRUE(is_rainbow(diff, c));
}

TEST(IsRainbow, MatchesSetOracle) {
    const Graph g = complete_graph(8);
    Engine eng(3);
    for (int i = 0; i < 500; ++i) {
        const auto c = random_coloring(g, 6, static_cast<std::uint64_t>(i));
        std::vector<Edge> pick;
        std::vector<std::size_t> idx(g.size());
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t j = 0; j < 5; ++j) {
            std::swap(idx[j], idx[j + uniform_below(eng, g.size() - j)]);
            pick.push_back(g.edges()[idx[j]]);
        }
        std::set<Color> seen;
        for (const Edge& e : pick) seen.insert(c.color(e));
        EXPECT_EQ(is_rainbow(pick, c), seen.size() == pick.size());
    }
}

TEST(RainbowStarCount, K4Examples) {
    const Graph g = complete_graph(4);
    const EdgeColoring good(g, 3, colors_for(g, {{{0, 3}, 1}, {{1, 3}, 2}, {{2, 3}, 3}}, 1));
    EXPECT_EQ(rainbow_star_count(g, good, {0, 1, 2}), 1U);
    const EdgeColoring bad(g, 3, colors_for(g, {{{0, 3}, 1}, {{1, 3}, 1}, {{2, 3}, 3}}, 1));
    EXPECT_EQ(rainbow_star_count(g, bad, {0, 1, 2}), 0U);
}

TEST(RainbowStarCount, RejectsForeignColoring) {
    const Graph g = complete_graph(4);
    const auto c = random_coloring(cycle_graph(4), 3, 1);
    EXPECT_THROW(rainbow_star_count(g, c, {0, 1, 2}), ContractError);
}

TEST(RainbowStarCount, PropertiesOnRandomInstances) {
    Engine eng(17);
    for (int i = 0; i < 200; ++i) {
        const Graph g = gen_gnp(GenSpec::gnp(14, 0.6, static_cast<std::uint64_t>(i)));
        const auto c = random_coloring(g, 3, static_cast<std::uint64_t>(1000 + i));
        std::vector<Vertex> s;
        detail::sample_k_set(eng, 14, 3, s);
        const VertexSet S(s);
        const VertexSet common = common_neighbors(g, S);
        const std::size_t count = rainbow_star_count(g, c, S);
        EXPECT_LE(count, common.size());

        std::size_t recount = 0;
        for (Vertex u : common) {
            std::vector<Edge> star;
            for (Vertex v : s) star.push_back(make_edge(u, v));
            if (is_rainbow(star, c)) ++recount;
        }
        EXPECT_EQ(count, recount);

        // Permuting colors changes nothing.
        const std::vector<Color> sigma{3, 1, 2};
        const auto cp = relabel(g, c, sigma);
        EXPECT_EQ(rainbow_star_count(g, cp, S), count);
        for (const Edge& e : g.edges()) {
            const std::vector<Edge> one{e};
            EXPECT_TRUE(is_rainbow(one, cp));
        }
    }
}

// A single 3-star under a uniform 3-coloring is rainbow with probability 3!/3^3.
TEST(RainbowStarCount, StarLawMatchesTwoNinths) {
    const Graph g = star_graph(3);
    const int trials = 100000;
    int hits = 0;
    for (int i = 0; i < trials; ++i)
        hits += rainbow_star_count(g, random_coloring(g, 3, static_cast<std::uint64_t>(i)), {1, 2, 3}) == 1;
    EXPECT_NEAR(static_cast<double>(hits) / trials, 2.0 / 9.0, 0.01);
}

// With c common neighbours, the count is Bin(c, 2/9): check mean and variance.
TEST(RainbowStarCount, BinomialLaw) {
    const Graph g = complete_graph(12);  // S = {0,1,2} has 9 common neighbours
    const int trials = 10000;
    const double q = 2.0 / 9.0, c = 9;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < trials; ++i) {
        const double x =
            static_cast<double>(rainbow_star_count(g, random_coloring(g, 3, static_cast<std::uint64_t>(i)), {0, 1, 2}));
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / trials;
    const double var = sum2 / trials - mean * mean;
    const double true_var = c * q * (1 - q);
    EXPECT_LT(std::abs(mean - c * q), 3 * std::sqrt(true_var / trials));
    // Var of the sample variance for a binomial: (mu4 - sigma^4) / trials.
    const double mu4 = c * q * (1 - q) * (1 + 3 * (c - 2) * q * (1 - q));
    EXPECT_LT(std::abs(var - true_var), 3 * std::sqrt((mu4 - true_var * true_var) / trials));
}
