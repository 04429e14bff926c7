#pragma once

// Rainbow S-trees and internally disjoint families of them.
//
// Only minimal S-trees are produced: every leaf is a terminal, so every
// Steiner (non-terminal) vertex has tree degree at least 2. Any S-tree
// contains a minimal one with a subset of its edges, so restricting to
// minimal trees does not change whether a rainbow family exists.
//
// Enumeration picks the Steiner vertex set W first (|W| <= max_edges + 1 - k,
// colex order), then enumerates spanning trees of the induced subgraph on
// S u W by include/exclude over its edges with an undoable union-find.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "coloring.hpp"
#include "graph.hpp"

namespace rainbow {

struct STree {
    std::vector<Edge> edges;  // canonical, ascending
    VertexSet terminals;
    VertexSet steiner;

    std::vector<Vertex> vertices() const {
        std::vector<Vertex> vs(terminals.begin(), terminals.end());
        vs.insert(vs.end(), steiner.begin(), steiner.end());
        std::sort(vs.begin(), vs.end());
        return vs;
    }

    friend bool operator==(const STree& a, const STree& b) { return a.edges == b.edges && a.terminals == b.terminals; }
};

struct DisjointFamily {
    std::vector<STree> trees;
};

namespace detail {

// Union-find with union by size and an undo log; no path compression.
class UndoUnionFind {
public:
    explicit UndoUnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0U); }

    std::uint32_t find(std::uint32_t x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }

    // Returns false (and logs nothing) if a and b are already joined.
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        log_.push_back(b);
        return true;
    }

    void undo() {
        const std::uint32_t b = log_.back();
        log_.pop_back();
        const std::uint32_t a = parent_[b];
        size_[a] -= size_[b];
        parent_[b] = b;
    }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
    std::vector<std::uint32_t> log_;
};

struct LocalEdge {
    std::uint32_t a, b;  // local indices into U
    Edge global;
    Color color;         // 0 when enumerating structure only
};

}  // namespace detail

// Calls emit(edges, steiner) for every minimal S-tree with at most
// `max_edges` edges. When `coloring` is non-null only rainbow trees are
// produced. `edges` is ascending; `steiner` is ascending. Stops early if
// emit returns false; returns false in that case.
template <class Emit>
bool for_each_minimal_s_tree(const Graph& g, std::span<const Vertex> s, std::size_t max_edges,
                             const EdgeColoring* coloring, Emit&& emit) {
    const std::size_t n = g.order();
    const std::size_t k = s.size();
    if (k == 0 || max_edges + 1 < k) return true;

    std::vector<Vertex> others;
    for (Vertex v = 0; v < n; ++v)
        if (!std::binary_search(s.begin(), s.end(), v)) others.push_back(v);

    const std::size_t max_steiner = std::min(max_edges + 1 - k, others.size());

    std::vector<Vertex> U;
    std::vector<detail::LocalEdge> local;
    std::vector<Edge> chosen;
    std::vector<Color> chosen_colors;
    std::vector<std::uint32_t> degree;
    std::vector<Vertex> steiner;
    bool keep_going = true;

    for (std::size_t w = 0; w <= max_steiner && keep_going; ++w) {
        keep_going = for_each_k_subset_colex(others.size(), w, [&](std::span<const Vertex> pick) {
            U.assign(s.begin(), s.end());
            steiner.clear();
            for (Vertex i : pick) {
                U.push_back(others[i]);
                steiner.push_back(others[i]);
            }
            const std::size_t u_size = U.size();

            // Every Steiner vertex needs two neighbours in U, every terminal one.
            for (std::size_t i = 0; i < u_size; ++i) {
                std::size_t nb = 0;
                for (std::size_t j = 0; j < u_size; ++j)
                    if (i != j && g.adjacent(U[i], U[j])) ++nb;
                if (nb < (i >= k ? 2U : 1U)) return true;
            }

            local.clear();
            for (std::uint32_t i = 0; i < u_size; ++i)
                for (std::uint32_t j = i + 1; j < u_size; ++j)
                    if (g.adjacent(U[i], U[j])) {
                        const Edge e = make_edge(U[i], U[j]);
                        local.push_back({i, j, e, coloring ? coloring->at(e.u, e.v) : Color{0}});
                    }
            std::sort(local.begin(), local.end(),
                      [](const detail::LocalEdge& x, const detail::LocalEdge& y) { return x.global < y.global; });

            const std::size_t need = u_size - 1;
            detail::UndoUnionFind uf(u_size);
            degree.assign(u_size, 0);
            chosen.clear();
            chosen_colors.clear();

            auto rec = [&](auto&& self, std::size_t idx) -> bool {
                if (chosen.size() == need) {
                    for (std::size_t i = k; i < u_size; ++i)
                        if (degree[i] < 2) return true;
                    return emit(std::span<const Edge>(chosen), std::span<const Vertex>(steiner));
                }
                if (local.size() - idx < need - chosen.size()) return true;
                const detail::LocalEdge& le = local[idx];
                const bool color_ok =
                    !coloring || std::find(chosen_colors.begin(), chosen_colors.end(), le.color) == chosen_colors.end();
                if (color_ok && uf.unite(le.a, le.b)) {
                    chosen.push_back(le.global);
                    chosen_colors.push_back(le.color);
                    ++degree[le.a];
                    ++degree[le.b];
                    const bool cont = self(self, idx + 1);
                    --degree[le.a];
                    --degree[le.b];
                    chosen.pop_back();
                    chosen_colors.pop_back();
                    uf.undo();
                    if (!cont) return false;
                }
                return self(self, idx + 1);
            };
            return rec(rec, 0);
        });
    }
    return keep_going;
}

// All minimal rainbow S-trees with at most `max_edges` edges, sorted by edge list.
inline std::vector<STree> enumerate_rainbow_s_trees(const Graph& g, const EdgeColoring& c, const VertexSet& s,
                                                    std::size_t max_edges) {
    g.check_set(s);
    require(s.size() >= 3, "terminal set must have at least 3 vertices");
    require(max_edges + 1 >= s.size(), "max_edges must be at least |S| - 1");
    if (!c.matches(g)) throw ContractError("coloring does not cover the graph's edge set");
    std::vector<STree> out;
    for_each_minimal_s_tree(g, s.span(), max_edges, &c,
                            [&](std::span<const Edge> edges, std::span<const Vertex> steiner) {
                                out.push_back({std::vector<Edge>(edges.begin(), edges.end()), s,
                                               VertexSet(std::vector<Vertex>(steiner.begin(), steiner.end()))});
                                return true;
                            });
    std::sort(out.begin(), out.end(), [](const STree& a, const STree& b) { return a.edges < b.edges; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace detail {

template <class T>
bool sorted_intersect(const std::vector<T>& a, const std::vector<T>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Two S-trees conflict iff they share an edge or a non-terminal vertex.
inline bool trees_conflict(const STree& a, const STree& b) {
    return detail::sorted_intersect(a.edges, b.edges) ||
           detail::sorted_intersect(a.steiner.members(), b.steiner.members());
}

// Picks `ell` pairwise non-conflicting candidates by backtracking, trying
// candidates in ascending order of conflict degree. The returned trees keep
// their relative order from `candidates`.
inline std::optional<DisjointFamily> find_disjoint_family(std::span<const STree> candidates, std::size_t ell) {
    require(ell >= 1, "ell must be at least 1");
    if (candidates.size() < ell) return std::nullopt;
    if (ell == 1) return DisjointFamily{{candidates.front()}};

    const std::size_t c = candidates.size();
    const std::size_t W = words_for(c);
    std::vector<Word> conflict(c * W, 0);
    std::vector<std::size_t> deg(c, 0);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = i + 1; j < c; ++j)
            if (trees_conflict(candidates[i], candidates[j])) {
                set_bit(std::span<Word>(conflict.data() + i * W, W), j);
                set_bit(std::span<Word>(conflict.data() + j * W, W), i);
                ++deg[i];
                ++deg[j];
            }

    std::vector<std::size_t> order(c);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deg[a] < deg[b]; });

    std::vector<std::size_t> picked;
    auto rec = [&](auto&& self, std::size_t pos) -> bool {
        if (picked.size() == ell) return true;
        for (std::size_t p = pos; p + (ell - picked.size()) <= c; ++p) {
            const std::size_t cand = order[p];
            const bool clash = std::any_of(picked.begin(), picked.end(), [&](std::size_t q) {
                return test_bit(std::span<const Word>(conflict.data() + cand * W, W), q);
            });
            if (clash) continue;
            picked.push_back(cand);
            if (self(self, p + 1)) return true;
            picked.pop_back();
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;

    std::sort(picked.begin(), picked.end());
    DisjointFamily fam;
    for (std::size_t i : picked) fam.trees.push_back(candidates[i]);
    return fam;
}

// Whether S has `ell` internally disjoint rainbow S-trees under c. Trees are
// limited to c.palette() edges, the most a rainbow tree can have.
inline bool has_l_disjoint_rainbow_trees(const Graph& g, const EdgeColoring& c, const VertexSet& s, std::size_t ell) {
    require(ell >= 1, "ell must be at least 1");
    require(s.size() >= 3, "terminal set must have at least 3 vertices");
    if (c.palette() + 1 < s.size()) return false;
    const auto candidates = enumerate_rainbow_s_trees(g, c, s, c.palette());
    return find_disjoint_family(candidates, ell).has_value();
}

}  // namespace rainbow
