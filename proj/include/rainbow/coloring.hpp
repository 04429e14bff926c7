#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "graph.hpp"

namespace rainbow {

// Colors are dense 1-based integers 1..t; 0 marks "not an edge / uncolored".
using Color = std::uint16_t;

inline constexpr std::size_t kMaxPalette = std::numeric_limits<Color>::max();

// Total map from the edges of one graph to the palette 1..t.
//
// Stored as a symmetric n x n matrix so lookups of (u, v) and (v, u) agree
// without normalisation on the hot path.
class EdgeColoring {
public:
    EdgeColoring() = default;

    // `per_edge[i]` colors g.edges()[i].
    EdgeColoring(const Graph& g, std::size_t t, std::span<const Color> per_edge)
        : n_(g.order()), t_(t), m_(g.size()), cells_(g.order() * g.order(), 0) {
        require(t >= 1, "palette size t must be at least 1");
        require(t <= kMaxPalette, "palette size too large");
        require(per_edge.size() == g.size(), "coloring must assign exactly one color per edge");
        const auto& es = g.edges();
        for (std::size_t i = 0; i < es.size(); ++i) {
            require(per_edge[i] >= 1 && per_edge[i] <= t, "color out of palette range [1, t]");
            put(es[i], per_edge[i]);
        }
    }

    static EdgeColoring uniform(const Graph& g, std::size_t t, Color c = 1) {
        std::vector<Color> cs(g.size(), c);
        return EdgeColoring(g, t, cs);
    }

    std::size_t palette() const noexcept { return t_; }
    std::size_t order() const noexcept { return n_; }
    std::size_t colored_edges() const noexcept { return m_; }

    // Unchecked; 0 if (a, b) is not a colored edge.
    Color at(Vertex a, Vertex b) const noexcept { return cells_[static_cast<std::size_t>(a) * n_ + b]; }

    Color color(Edge e) const {
        if (e.u >= n_ || e.v >= n_ || at(e.u, e.v) == 0)
            throw ContractError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not colored");
        return at(e.u, e.v);
    }

    // True iff this coloring colors exactly the edges of g.
    bool matches(const Graph& g) const {
        if (g.order() != n_ || g.size() != m_) return false;
        return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) { return at(e.u, e.v) != 0; });
    }

    // Colors in g.edges() order.
    std::vector<Color> per_edge(const Graph& g) const {
        std::vector<Color> out;
        out.reserve(g.size());
        for (const Edge& e : g.edges()) out.push_back(color(e));
        return out;
    }

    friend bool operator==(const EdgeColoring&, const EdgeColoring&) = default;

private:
    void put(Edge e, Color c) noexcept {
        cells_[static_cast<std::size_t>(e.u) * n_ + e.v] = c;
        cells_[static_cast<std::size_t>(e.v) * n_ + e.u] = c;
    }

    std::size_t n_ = 0;
    std::size_t t_ = 0;
    std::size_t m_ = 0;
    std::vector<Color> cells_;
};

// Applies the palette bijection sigma (sigma[c-1] is the image of color c).
inline EdgeColoring relabel(const Graph& g, const EdgeColoring& c, std::span<const Color> sigma) {
    require(sigma.size() == c.palette(), "relabeling must be a bijection on the palette");
    std::vector<Color> cs = c.per_edge(g);
    for (Color& x : cs) x = sigma[x - 1];
    return EdgeColoring(g, c.palette(), cs);
}

// Each edge independently uniform on 1..t.
inline EdgeColoring random_coloring(const Graph& g, std::size_t t, std::uint64_t seed) {
    require(t >= 1, "palette size t must be at least 1");
    require(t <= kMaxPalette, "palette size too large");
    Engine eng = substream(seed, StreamTag::Coloring);
    std::vector<Color> cs(g.size());
    for (Color& x : cs) x = static_cast<Color>(1 + uniform_below(eng, t));
    return EdgeColoring(g, t, cs);
}

inline bool is_rainbow(std::span<const Edge> edges, const EdgeColoring& c) {
    std::vector<Color> seen;
    seen.reserve(edges.size());
    for (const Edge& e : edges) seen.push_back(c.color(e));
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

// True iff the star edges {u s : s in S} carry pairwise distinct colors.
inline bool is_rainbow_star(const EdgeColoring& c, Vertex center, std::span<const Vertex> s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Color ci = c.at(center, s[i]);
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (c.at(center, s[j]) == ci) return false;
    }
    return true;
}

// Number of common neighbours u of S whose star to S is rainbow, capped at `limit`.
inline std::size_t count_rainbow_stars(const EdgeColoring& c, std::span<const Vertex> s,
                                       std::span<const Word> common, std::size_t limit) {
    std::size_t count = 0;
    for_each_bit(common, [&](Vertex u) {
        if (is_rainbow_star(c, u, s)) ++count;
        return count < limit;
    });
    return count;
}

inline std::size_t rainbow_star_count(const Graph& g, const EdgeColoring& c, const VertexSet& s,
                                      std::size_t limit = std::numeric_limits<std::size_t>::max()) {
    g.check_set(s);
    if (!c.matches(g)) throw ContractError("coloring does not cover the graph's edge set");
    if (s.empty()) return 0;
    return count_rainbow_stars(c, s.span(), common_neighbor_row(g, s.span()), limit);
}

}  // namespace rainbow
