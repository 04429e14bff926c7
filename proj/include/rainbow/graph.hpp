#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace rainbow {

// Undirected edge in canonical form (u < v).
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) {
    if (a == b) throw ParameterError("self-loop at vertex " + std::to_string(a));
    return a < b ? Edge{a, b} : Edge{b, a};
}

// Strictly increasing list of vertex ids.
class VertexSet {
public:
    VertexSet() = default;

    // Sorts and rejects duplicates.
    explicit VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
            throw ParameterError("duplicate vertex in vertex set");
    }
    VertexSet(std::initializer_list<Vertex> members) : VertexSet(std::vector<Vertex>(members)) {}

    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    Vertex operator[](std::size_t i) const { return members_[i]; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }
    std::span<const Vertex> span() const noexcept { return members_; }
    const std::vector<Vertex>& members() const noexcept { return members_; }
    bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    std::vector<Vertex> members_;
};

// ---------------------------------------------------------------------------
// Bit rows

using Word = std::uint64_t;

constexpr std::size_t words_for(std::size_t bits) noexcept { return (bits + 63) / 64; }

inline std::size_t popcount(std::span<const Word> row) noexcept {
    std::size_t c = 0;
    for (Word w : row) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

inline bool any_bit(std::span<const Word> row) noexcept {
    return std::any_of(row.begin(), row.end(), [](Word w) { return w != 0; });
}

inline bool test_bit(std::span<const Word> row, std::size_t i) noexcept {
    return (row[i >> 6] >> (i & 63)) & 1U;
}

inline void set_bit(std::span<Word> row, std::size_t i) noexcept { row[i >> 6] |= Word{1} << (i & 63); }
inline void clear_bit(std::span<Word> row, std::size_t i) noexcept { row[i >> 6] &= ~(Word{1} << (i & 63)); }

// Calls fn(index) for each set bit in ascending order; stops early if fn returns false.
template <class Fn>
bool for_each_bit(std::span<const Word> row, Fn&& fn) {
    for (std::size_t w = 0; w < row.size(); ++w) {
        Word bits = row[w];
        while (bits) {
            const auto i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            if (!fn(static_cast<Vertex>(i))) return false;
            bits &= bits - 1;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

// Simple undirected graph on vertices 0..n-1 with bit-row adjacency.
// Immutable once constructed.
class Graph {
public:
    Graph() = default;

    explicit Graph(std::size_t n) : n_(n), words_(words_for(n)), bits_(n * words_for(n), 0) {}

    // Validates every edge; duplicates and out-of-range ids are errors.
    Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
        for (const Edge& e : edges) {
            if (e.u >= e.v) throw ParameterError("edge is not in canonical form u < v");
            if (e.v >= n) throw ParameterError("edge endpoint " + std::to_string(e.v) + " out of range");
            if (adjacent(e.u, e.v)) throw ParameterError("duplicate edge");
            link(e.u, e.v);
        }
        finalize();
    }

    std::size_t order() const noexcept { return n_; }
    std::size_t size() const noexcept { return edges_.size(); }

    std::span<const Word> row(Vertex v) const noexcept {
        return {bits_.data() + static_cast<std::size_t>(v) * words_, words_};
    }
    std::size_t row_words() const noexcept { return words_; }

    bool adjacent(Vertex a, Vertex b) const noexcept { return test_bit(row(a), b); }
    std::size_t degree(Vertex v) const noexcept { return popcount(row(v)); }

    // Canonical edges in lexicographic (u, v) order.
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    Graph with_edge(Edge e) const {
        std::vector<Edge> es = edges_;
        es.push_back(e);
        std::sort(es.begin(), es.end());
        return Graph(n_, es);
    }

    bool connected() const {
        if (n_ <= 1) return true;
        std::vector<Word> seen(words_, 0), frontier(words_, 0);
        set_bit(seen, 0);
        set_bit(frontier, 0);
        std::vector<Word> next(words_);
        while (any_bit(frontier)) {
            std::fill(next.begin(), next.end(), 0);
            for_each_bit(frontier, [&](Vertex v) {
                auto r = row(v);
                for (std::size_t w = 0; w < words_; ++w) next[w] |= r[w] & ~seen[w];
                return true;
            });
            for (std::size_t w = 0; w < words_; ++w) seen[w] |= next[w];
            frontier.swap(next);
        }
        return popcount(seen) == n_;
    }

    void check_vertex(Vertex v) const {
        if (v >= n_)
            throw ParameterError("vertex " + std::to_string(v) + " out of range for graph of order " +
                                 std::to_string(n_));
    }
    void check_set(const VertexSet& s) const {
        for (Vertex v : s) check_vertex(v);
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

private:
    friend class GraphBuilder;

    std::span<Word> mrow(Vertex v) noexcept { return {bits_.data() + static_cast<std::size_t>(v) * words_, words_}; }

    void link(Vertex a, Vertex b) noexcept {
        set_bit(mrow(a), b);
        set_bit(mrow(b), a);
    }

    void finalize() {
        edges_.clear();
        for (Vertex u = 0; u < n_; ++u)
            for_each_bit(row(u), [&](Vertex v) {
                if (v > u) edges_.push_back({u, v});
                return true;
            });
    }

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<Word> bits_;
    std::vector<Edge> edges_;
};

// Accumulates edges without per-edge validation; used by generators that
// produce canonical, duplicate-free edges by construction.
class GraphBuilder {
public:
    explicit GraphBuilder(std::size_t n) : g_(n) {}
    void link(Vertex a, Vertex b) noexcept { g_.link(a, b); }
    bool adjacent(Vertex a, Vertex b) const noexcept { return g_.adjacent(a, b); }
    Graph build() && {
        g_.finalize();
        return std::move(g_);
    }

private:
    Graph g_;
};

inline Graph complete_graph(std::size_t n) {
    std::vector<Edge> es;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) es.push_back({u, v});
    return Graph(n, es);
}

inline Graph cycle_graph(std::size_t n) {
    std::vector<Edge> es;
    for (Vertex v = 0; v < n; ++v) es.push_back(make_edge(v, static_cast<Vertex>((v + 1) % n)));
    std::sort(es.begin(), es.end());
    return Graph(n, es);
}

// ---------------------------------------------------------------------------
// Random graph models

enum class Model { GNP, GNM };

struct GenSpec {
    Model model = Model::GNP;
    std::size_t n = 0;
    std::optional<double> p;
    std::optional<std::uint64_t> M;
    std::uint64_t seed = 0;

    static GenSpec gnp(std::size_t n, double p, std::uint64_t seed) { return {Model::GNP, n, p, std::nullopt, seed}; }
    static GenSpec gnm(std::size_t n, std::uint64_t M, std::uint64_t seed) { return {Model::GNM, n, std::nullopt, M, seed}; }
};

inline std::uint64_t max_edges(std::size_t n) { return static_cast<std::uint64_t>(n) * (n - (n > 0)) / 2; }

// Edge (u, v), u < v, has colex index v(v-1)/2 + u.
inline Edge edge_from_colex_index(std::uint64_t idx) {
    auto v = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(idx))) / 2.0);
    while (v * (v - 1) / 2 > idx) --v;
    while ((v + 1) * v / 2 <= idx) ++v;
    return {static_cast<Vertex>(idx - v * (v - 1) / 2), static_cast<Vertex>(v)};
}

inline Graph gen_gnp_impl(std::size_t n, double p, Engine& eng) {
    GraphBuilder g(n);
    // Pairs visited in lexicographic order, one uniform draw each.
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (uniform01(eng) < p) g.link(u, v);
    return std::move(g).build();
}

// Partial Fisher-Yates over the colex edge indices [0, N); displaced slots
// are tracked sparsely so the work is O(M).
inline Graph gen_gnm_impl(std::size_t n, std::uint64_t M, Engine& eng) {
    GraphBuilder g(n);
    const std::uint64_t N = max_edges(n);
    std::unordered_map<std::uint64_t, std::uint64_t> displaced;
    auto slot = [&](std::uint64_t i) {
        auto it = displaced.find(i);
        return it == displaced.end() ? i : it->second;
    };
    for (std::uint64_t i = 0; i < M; ++i) {
        const std::uint64_t j = i + uniform_below(eng, N - i);
        const std::uint64_t picked = slot(j);
        displaced[j] = slot(i);
        const Edge e = edge_from_colex_index(picked);
        g.link(e.u, e.v);
    }
    return std::move(g).build();
}

inline Graph gen_gnp(const GenSpec& spec) {
    require(spec.model == Model::GNP, "gen_gnp requires a GNP spec");
    require(spec.p.has_value() && !spec.M.has_value(), "GNP spec must set p and not M");
    require(spec.n >= 1, "n must be at least 1");
    const double p = *spec.p;
    require(p >= 0.0 && p <= 1.0, "p must lie in [0, 1]");
    Engine eng = substream(spec.seed, StreamTag::Graph);
    return gen_gnp_impl(spec.n, p, eng);
}

inline Graph gen_gnm(const GenSpec& spec) {
    require(spec.model == Model::GNM, "gen_gnm requires a GNM spec");
    require(spec.M.has_value() && !spec.p.has_value(), "GNM spec must set M and not p");
    require(spec.n >= 1, "n must be at least 1");
    require(*spec.M <= max_edges(spec.n), "M exceeds n(n-1)/2");
    Engine eng = substream(spec.seed, StreamTag::Graph);
    return gen_gnm_impl(spec.n, *spec.M, eng);
}

inline Graph generate(const GenSpec& spec) { return spec.model == Model::GNP ? gen_gnp(spec) : gen_gnm(spec); }

// ---------------------------------------------------------------------------
// Neighbourhood queries

// Vertices outside S adjacent to every member of S, as a bit row.
inline std::vector<Word> common_neighbor_row(const Graph& g, std::span<const Vertex> s) {
    std::vector<Word> acc(g.row_words(), ~Word{0});
    if (g.order() % 64) acc.back() = (Word{1} << (g.order() % 64)) - 1;
    for (Vertex v : s) {
        auto r = g.row(v);
        for (std::size_t w = 0; w < acc.size(); ++w) acc[w] &= r[w];
    }
    for (Vertex v : s) clear_bit(acc, v);
    return acc;
}

inline VertexSet common_neighbors(const Graph& g, const VertexSet& s) {
    require(!s.empty(), "common_neighbors requires a nonempty set");
    g.check_set(s);
    std::vector<Vertex> out;
    for_each_bit(common_neighbor_row(g, s.span()), [&](Vertex v) {
        out.push_back(v);
        return true;
    });
    return VertexSet(std::move(out));
}

inline bool is_independent(const Graph& g, const VertexSet& s) {
    g.check_set(s);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (g.adjacent(s[i], s[j])) return false;
    return true;
}

// First k-set in colex order that is independent and has no common neighbour.
inline std::optional<VertexSet> find_bad_set(const Graph& g, std::size_t k) {
    require(k >= 3, "k must be at least 3");
    require(k <= g.order(), "k exceeds the number of vertices");
    const std::size_t W = g.row_words();
    // prefix[d] = AND of rows of the d+1 largest chosen vertices.
    std::vector<std::vector<Word>> prefix(k, std::vector<Word>(W));
    std::optional<VertexSet> found;
    for_each_k_subset_colex(
        g.order(), k,
        [&](std::size_t depth, Vertex v, std::span<const Vertex> chosen) {
            // chosen[0] == v; the rest were placed at shallower depths.
            for (std::size_t i = 1; i < chosen.size(); ++i)
                if (g.adjacent(v, chosen[i])) return false;
            auto r = g.row(v);
            if (depth == 0) {
                std::copy(r.begin(), r.end(), prefix[0].begin());
            } else {
                for (std::size_t w = 0; w < W; ++w) prefix[depth][w] = prefix[depth - 1][w] & r[w];
            }
            return true;
        },
        [&](std::span<const Vertex> set) {
            if (any_bit(prefix[k - 1])) return true;
            found = VertexSet(std::vector<Vertex>(set.begin(), set.end()));
            return false;
        });
    return found;
}

}  // namespace rainbow
