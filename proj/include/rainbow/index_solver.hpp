#pragma once

// (k, l)-rainbow index: coloring verification, exact search on small graphs,
// and the two polynomial-time certificates.

#include <atomic>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coloring.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "rainbow_trees.hpp"

namespace rainbow {

// Independent k-set with no common neighbour: rx_{k,l} >= k + 1 for every l.
struct LowerWitness {
    std::size_t k = 0;
    VertexSet set;
};

// k-coloring under which every k-set has l internally disjoint rainbow trees.
struct UpperColoring {
    std::size_t k = 0;
    EdgeColoring coloring;
    std::size_t attempt = 0;  // zero-based index of the accepted draw
};

// Least palette size admitting a valid coloring, with a witness.
struct ExactValue {
    std::size_t t = 0;
    EdgeColoring coloring;
};

using Certificate = std::variant<LowerWitness, UpperColoring, ExactValue>;

enum class CertMode { Star, Full };

namespace detail {

inline void check_k(const Graph& g, std::size_t k) {
    require(k >= 3, "k must be at least 3");
    require(k <= g.order(), "k exceeds the number of vertices");
}

// Visits k-sets whose largest element is `top`, in colex order.
template <class Leaf>
bool for_each_k_subset_with_max(Vertex top, std::size_t k, std::vector<Vertex>& buf, Leaf&& leaf) {
    return for_each_k_subset_colex(top, k - 1, [&](std::span<const Vertex> rest) {
        buf.assign(rest.begin(), rest.end());
        buf.push_back(top);
        return leaf(VertexSet(buf));
    });
}

}  // namespace detail

// True iff every k-subset S has `ell` internally disjoint rainbow S-trees
// under c. k-sets are grouped by their largest vertex; groups may run on
// several threads, each scanning in colex order and stopping at the first
// failure anywhere.
inline bool check_coloring(const Graph& g, const EdgeColoring& c, std::size_t k, std::size_t ell,
                           std::size_t threads = 1) {
    detail::check_k(g, k);
    require(ell >= 1, "ell must be at least 1");
    if (!c.matches(g)) throw ContractError("coloring does not cover the graph's edge set");
    if (c.palette() + 1 < k) return false;

    std::atomic<bool> failed{false};
    const std::size_t groups = g.order() - k + 1;
    parallel_for(groups, threads, [&](std::size_t gi) {
        if (failed.load(std::memory_order_relaxed)) return;
        std::vector<Vertex> buf;
        detail::for_each_k_subset_with_max(static_cast<Vertex>(k - 1 + gi), k, buf, [&](const VertexSet& s) {
            if (failed.load(std::memory_order_relaxed)) return false;
            if (!has_l_disjoint_rainbow_trees(g, c, s, ell)) {
                failed = true;
                return false;
            }
            return true;
        });
    });
    return !failed;
}

// True iff every k-set S has at least `ell` common neighbours u whose star
// {us : s in S} is rainbow under c. Polynomial for fixed k.
inline bool star_certifies(const Graph& g, const EdgeColoring& c, std::size_t k, std::size_t ell) {
    detail::check_k(g, k);
    const std::size_t W = g.row_words();
    std::vector<std::vector<Word>> prefix(k, std::vector<Word>(W));
    bool ok = true;
    for_each_k_subset_colex(
        g.order(), k,
        [&](std::size_t depth, Vertex v, std::span<const Vertex>) {
            if (!ok) return false;
            auto r = g.row(v);
            if (depth == 0) {
                std::copy(r.begin(), r.end(), prefix[0].begin());
            } else {
                for (std::size_t w = 0; w < W; ++w) prefix[depth][w] = prefix[depth - 1][w] & r[w];
            }
            // Later vertices only shrink the common neighbourhood.
            if (popcount(prefix[depth]) < ell) {
                ok = false;
                return false;
            }
            return true;
        },
        [&](std::span<const Vertex> s) {
            if (count_rainbow_stars(c, s, prefix[k - 1], ell) < ell) ok = false;
            return ok;
        });
    return ok;
}

inline std::optional<LowerWitness> lower_certificate(const Graph& g, std::size_t k) {
    detail::check_k(g, k);
    if (auto s = find_bad_set(g, k)) return LowerWitness{k, std::move(*s)};
    return std::nullopt;
}

// Attempt a uses random_coloring(g, k, derive_seed(seed, {a})).
inline std::optional<UpperColoring> upper_certificate(const Graph& g, std::size_t k, std::size_t ell,
                                                      std::size_t attempts, std::uint64_t seed, CertMode mode,
                                                      std::size_t threads = 1) {
    detail::check_k(g, k);
    require(ell >= 1, "ell must be at least 1");
    require(attempts >= 1, "attempts must be at least 1");
    for (std::size_t a = 0; a < attempts; ++a) {
        EdgeColoring c = random_coloring(g, k, derive_seed(seed, {a}));
        const bool ok = mode == CertMode::Star ? star_certifies(g, c, k, ell) : check_coloring(g, c, k, ell, threads);
        if (ok) return UpperColoring{k, std::move(c), a};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Exact search

enum class ExactStatus { Found, ExceededTMax, Undefined };

struct ExactOutcome {
    ExactStatus status = ExactStatus::Undefined;
    std::size_t t = 0;
    std::optional<EdgeColoring> coloring;
    std::string reason;

    bool found() const noexcept { return status == ExactStatus::Found; }
};

namespace detail {

struct TreeShape {
    std::uint64_t edges = 0;    // bit i <=> g.edges()[i]
    std::uint64_t steiner = 0;  // bit v <=> Steiner vertex v
    std::uint32_t set_index = 0;
};

inline bool shapes_conflict(const TreeShape& a, const TreeShape& b) {
    return (a.edges & b.edges) || (a.steiner & b.steiner);
}

// Whether `ell` pairwise non-conflicting shapes exist among ids.
inline bool has_disjoint_shapes(const std::vector<TreeShape>& shapes, const std::vector<std::uint32_t>& ids,
                                std::size_t ell) {
    if (ids.size() < ell) return false;
    if (ell <= 1) return !ids.empty() || ell == 0;
    std::vector<std::uint32_t> picked;
    auto rec = [&](auto&& self, std::size_t pos) -> bool {
        if (picked.size() == ell) return true;
        for (std::size_t p = pos; p + (ell - picked.size()) <= ids.size(); ++p) {
            const TreeShape& cand = shapes[ids[p]];
            bool clash = false;
            for (std::uint32_t q : picked)
                if (shapes_conflict(cand, shapes[q])) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            picked.push_back(ids[p]);
            if (self(self, p + 1)) return true;
            picked.pop_back();
        }
        return false;
    };
    return rec(rec, 0);
}

class ExactSearch {
public:
    ExactSearch(const Graph& g, std::size_t k, std::size_t ell) : g_(g), k_(k), ell_(ell) {
        for_each_k_subset_colex(g.order(), k, [&](std::span<const Vertex> s) {
            sets_.emplace_back(s.begin(), s.end());
            return true;
        });
        edge_index_.assign(g.order() * g.order(), 0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const Edge& e = g.edges()[i];
            edge_index_[e.u * g.order() + e.v] = static_cast<std::uint32_t>(i);
        }
    }

    // Builds tree shapes with at most max_edges edges. Returns the index of
    // the first k-set lacking `ell` disjoint shapes, or npos.
    std::size_t build_shapes(std::size_t max_edges) {
        shapes_.clear();
        per_set_.assign(sets_.size(), {});
        for (std::uint32_t si = 0; si < sets_.size(); ++si) {
            for_each_minimal_s_tree(g_, sets_[si], max_edges, nullptr,
                                    [&](std::span<const Edge> edges, std::span<const Vertex> steiner) {
                                        TreeShape sh;
                                        for (const Edge& e : edges) sh.edges |= std::uint64_t{1} << index_of(e);
                                        for (Vertex v : steiner) sh.steiner |= std::uint64_t{1} << v;
                                        sh.set_index = si;
                                        per_set_[si].push_back(static_cast<std::uint32_t>(shapes_.size()));
                                        shapes_.push_back(sh);
                                        return true;
                                    });
            if (!has_disjoint_shapes(shapes_, per_set_[si], ell_)) return si;
        }
        return npos;
    }

    // Whether k-set si has `ell` disjoint S-trees of at most max_edges edges,
    // growing the size limit so small families are found without listing
    // every large tree.
    bool structurally_feasible(std::size_t si, std::size_t max_edges) const {
        std::vector<TreeShape> local;
        std::vector<std::uint32_t> ids;
        for (std::size_t limit = k_ - 1; limit <= max_edges; ++limit) {
            local.clear();
            ids.clear();
            for_each_minimal_s_tree(g_, sets_[si], limit, nullptr,
                                    [&](std::span<const Edge> edges, std::span<const Vertex> steiner) {
                                        TreeShape sh;
                                        for (const Edge& e : edges) sh.edges |= std::uint64_t{1} << index_of(e);
                                        for (Vertex v : steiner) sh.steiner |= std::uint64_t{1} << v;
                                        ids.push_back(static_cast<std::uint32_t>(local.size()));
                                        local.push_back(sh);
                                        return true;
                                    });
            if (has_disjoint_shapes(local, ids, ell_)) return true;
        }
        return false;
    }

    std::size_t set_count() const { return sets_.size(); }

    // Depth-first search over colorings with palette t, in first-occurrence
    // canonical form. Requires build_shapes(t) to have succeeded.
    std::optional<std::vector<Color>> search(std::size_t t) {
        const std::size_t m = g_.size();
        t_ = t;
        colors_.assign(m, 0);
        alive_.assign(shapes_.size(), 1);
        alive_count_.resize(sets_.size());
        for (std::size_t si = 0; si < sets_.size(); ++si) alive_count_[si] = per_set_[si].size();
        edge_shapes_.assign(m, {});
        for (std::uint32_t id = 0; id < shapes_.size(); ++id)
            for (std::uint64_t bits = shapes_[id].edges; bits; bits &= bits - 1)
                edge_shapes_[static_cast<std::size_t>(std::countr_zero(bits))].push_back(id);
        if (dfs(0, 0)) return colors_;
        return std::nullopt;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    const std::vector<Vertex>& set(std::size_t i) const { return sets_[i]; }

private:
    std::uint32_t index_of(const Edge& e) const { return edge_index_[e.u * g_.order() + e.v]; }

    bool dfs(std::size_t i, std::size_t used) {
        if (i == g_.size()) return true;
        const std::size_t top = std::min(t_, used + 1);
        for (std::size_t col = 1; col <= top; ++col) {
            colors_[i] = static_cast<Color>(col);
            const std::size_t mark = killed_.size();
            if (assign_ok(i) && dfs(i + 1, std::max(used, col))) return true;
            while (killed_.size() > mark) {
                const std::uint32_t id = killed_.back();
                killed_.pop_back();
                alive_[id] = 1;
                ++alive_count_[shapes_[id].set_index];
            }
        }
        colors_[i] = 0;
        return false;
    }

    // Kills shapes through edge i that now repeat a color; checks the
    // affected k-sets can still reach `ell` disjoint rainbow trees.
    bool assign_ok(std::size_t i) {
        const Color col = colors_[i];
        const std::uint64_t before = (i == 0) ? 0 : ((std::uint64_t{1} << i) - 1);
        touched_.clear();
        for (std::uint32_t id : edge_shapes_[i]) {
            if (!alive_[id]) continue;
            bool clash = false;
            for (std::uint64_t bits = shapes_[id].edges & before; bits; bits &= bits - 1)
                if (colors_[static_cast<std::size_t>(std::countr_zero(bits))] == col) {
                    clash = true;
                    break;
                }
            if (!clash) continue;
            alive_[id] = 0;
            killed_.push_back(id);
            const std::uint32_t si = shapes_[id].set_index;
            --alive_count_[si];
            touched_.push_back(si);
        }
        for (std::uint32_t si : touched_) {
            if (alive_count_[si] < ell_) return false;
            if (ell_ >= 2) {
                live_ids_.clear();
                for (std::uint32_t id : per_set_[si])
                    if (alive_[id]) live_ids_.push_back(id);
                if (!has_disjoint_shapes(shapes_, live_ids_, ell_)) return false;
            }
        }
        return true;
    }

    const Graph& g_;
    std::size_t k_;
    std::size_t ell_;
    std::size_t t_ = 0;
    std::vector<std::vector<Vertex>> sets_;
    std::vector<std::uint32_t> edge_index_;
    std::vector<TreeShape> shapes_;
    std::vector<std::vector<std::uint32_t>> per_set_;
    std::vector<std::vector<std::uint32_t>> edge_shapes_;
    std::vector<Color> colors_;
    std::vector<char> alive_;
    std::vector<std::size_t> alive_count_;
    std::vector<std::uint32_t> killed_;
    std::vector<std::uint32_t> touched_;
    std::vector<std::uint32_t> live_ids_;
};

inline std::string describe_set(const std::vector<Vertex>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

}  // namespace detail

inline constexpr std::size_t kExactMaxEdges = 64;
inline constexpr std::size_t kExactMaxOrder = 64;

// Least t <= t_max for which some coloring with palette 1..t passes
// check_coloring. Exponential in the edge count; meant for graphs with at
// most a dozen or so edges, and limited to 64 edges and 64 vertices.
inline ExactOutcome exact_rx(const Graph& g, std::size_t k, std::size_t ell, std::size_t t_max) {
    detail::check_k(g, k);
    require(ell >= 1, "ell must be at least 1");
    require(t_max >= 1, "t_max must be at least 1");
    require(g.size() <= kExactMaxEdges, "exact_rx supports at most 64 edges");
    require(g.order() <= kExactMaxOrder, "exact_rx supports at most 64 vertices");

    ExactOutcome out;
    if (!g.connected()) {
        out.reason = "graph is disconnected, so some k-set has no S-tree";
        return out;
    }

    detail::ExactSearch search(g, k, ell);

    // With every edge a distinct color every tree is rainbow, so the value
    // exists iff each k-set has `ell` disjoint trees of any size. For ell = 1
    // connectivity already guarantees that.
    if (ell >= 2) {
        for (std::size_t si = 0; si < search.set_count(); ++si) {
            if (search.structurally_feasible(si, g.order() - 1)) continue;
            out.reason = "k-set " + detail::describe_set(search.set(si)) + " has fewer than " + std::to_string(ell) +
                         " internally disjoint S-trees";
            return out;
        }
    }

    for (std::size_t t = std::max<std::size_t>(1, k - 1); t <= t_max; ++t) {
        // Trees have at most n - 1 <= m edges, so a palette of m colors
        // makes every tree rainbow.
        if (t >= g.size()) {
            std::vector<Color> distinct(g.size());
            for (std::size_t i = 0; i < distinct.size(); ++i) distinct[i] = static_cast<Color>(i + 1);
            out.status = ExactStatus::Found;
            out.t = t;
            out.coloring = EdgeColoring(g, t, distinct);
            return out;
        }
        if (search.build_shapes(t) != detail::ExactSearch::npos) continue;
        if (auto colors = search.search(t)) {
            out.status = ExactStatus::Found;
            out.t = t;
            out.coloring = EdgeColoring(g, t, *colors);
            return out;
        }
    }
    out.status = ExactStatus::ExceededTMax;
    out.reason = "no valid coloring with at most " + std::to_string(t_max) + " colors";
    return out;
}

}  // namespace rainbow
