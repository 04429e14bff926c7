#pragma once

// k-subset enumeration in colexicographic order.
//
// Colex order compares sets by their largest element first, then the next
// largest, and so on: {0,1,2} < {0,1,3} < {0,2,3} < {1,2,3} < {0,1,4} < ...
// All "first witness" searches in the library use this order.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "errors.hpp"

namespace rainbow {

using Vertex = std::uint32_t;

// C(n, k), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

// Depth-first colex enumeration with prefix hooks. The largest element is
// chosen first (depth 0), then the next largest below it, etc.
//
//   enter(depth, v, chosen) -> bool : called when v is placed at `depth`;
//                                     return false to prune that branch.
//   leaf(set)               -> bool : set is ascending; return false to stop.
//
// k == 0 visits the empty set once. Returns false iff a leaf requested a stop.
template <class Enter, class Leaf>
bool for_each_k_subset_colex(std::size_t n, std::size_t k, Enter&& enter, Leaf&& leaf) {
    if (k > n) return true;
    if (k == 0) return leaf(std::span<const Vertex>());
    std::vector<Vertex> chosen(k);  // chosen[k-1-depth] filled at depth
    auto rec = [&](auto&& self, std::size_t depth, std::size_t upper) -> bool {
        const std::size_t slot = k - 1 - depth;
        // Element at `slot` ranges over [slot, upper).
        for (std::size_t v = slot; v < upper; ++v) {
            chosen[slot] = static_cast<Vertex>(v);
            if (!enter(depth, static_cast<Vertex>(v), std::span<const Vertex>(chosen).subspan(slot)))
                continue;
            if (slot == 0) {
                if (!leaf(std::span<const Vertex>(chosen))) return false;
            } else if (!self(self, depth + 1, v)) {
                return false;
            }
        }
        return true;
    };
    return rec(rec, 0, n);
}

template <class Leaf>
bool for_each_k_subset_colex(std::size_t n, std::size_t k, Leaf&& leaf) {
    return for_each_k_subset_colex(
        n, k, [](std::size_t, Vertex, std::span<const Vertex>) { return true; },
        std::forward<Leaf>(leaf));
}

// The k-subset of rank `rank` in colex order (combinatorial number system).
inline std::vector<Vertex> unrank_colex(std::uint64_t rank, std::size_t k) {
    std::vector<Vertex> out(k);
    for (std::size_t i = k; i-- > 0;) {
        // Largest c with C(c, i+1) <= rank.
        std::uint64_t c = i;
        while (binomial(c + 1, i + 1) <= rank) ++c;
        out[i] = static_cast<Vertex>(c);
        rank -= binomial(c, i + 1);
    }
    return out;
}

}  // namespace rainbow
