#pragma once

// Closed-form quantities around the threshold p(n) = (log_a n / n)^{1/k},
// a = k^k / (k^k - k!), for the property rx_{k,l} <= k.
//
// log_a n is always evaluated as ln n / ln a.

#include <cmath>
#include <cstdint>
#include <string>

#include "combinatorics.hpp"
#include "errors.hpp"

namespace rainbow {

enum class LogBase { A, Natural };

namespace detail {

inline void check_k3(std::size_t k) { require(k >= 3, "k must be at least 3"); }

// k^k and k! as exact 128-bit integers when k^k fits.
inline bool exact_powers(std::size_t k, unsigned __int128& kk, unsigned __int128& fact) {
    kk = 1;
    fact = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        if (__builtin_mul_overflow(kk, static_cast<unsigned __int128>(k), &kk)) return false;
        fact *= i;  // k! <= k^k, cannot overflow first
    }
    return true;
}

}  // namespace detail

// Probability that a uniformly k-colored k-star is rainbow: k! / k^k.
inline double q_rainbow_star(std::size_t k) {
    detail::check_k3(k);
    unsigned __int128 kk, fact;
    if (detail::exact_powers(k, kk, fact))
        return static_cast<double>(static_cast<long double>(fact) / static_cast<long double>(kk));
    // prod_{i=1..k} i/k in log space
    double lq = 0.0;
    for (std::size_t i = 1; i <= k; ++i) lq += std::log(static_cast<double>(i) / static_cast<double>(k));
    return std::exp(lq);
}

// a = k^k / (k^k - k!) = 1 / (1 - q).
inline double base_a(std::size_t k) {
    detail::check_k3(k);
    unsigned __int128 kk, fact;
    if (detail::exact_powers(k, kk, fact))
        return static_cast<double>(static_cast<long double>(kk) / static_cast<long double>(kk - fact));
    return 1.0 / (1.0 - q_rainbow_star(k));
}

inline double ln_base_a(std::size_t k) { return -std::log1p(-q_rainbow_star(k)); }

inline double log_a(double n, std::size_t k) { return std::log(n) / ln_base_a(k); }

inline double threshold_p(double n, std::size_t k, LogBase base = LogBase::A) {
    detail::check_k3(k);
    require(n >= 2, "threshold_p requires n >= 2");
    const double L = base == LogBase::A ? log_a(n, k) : std::log(n);
    return std::pow(L / n, 1.0 / static_cast<double>(k));
}

// M(n) = (n^{2k-1} log_a n)^{1/k}.
inline double threshold_M(double n, std::size_t k) {
    detail::check_k3(k);
    require(n >= 2, "threshold_M requires n >= 2");
    const double kd = static_cast<double>(k);
    return std::exp(((2.0 * kd - 1.0) * std::log(n) + std::log(log_a(n, k))) / kd);
}

// M = floor(pN + x sqrt(p(1-p)N)), N = n(n-1)/2, clamped into [0, N].
inline std::uint64_t p_to_M(std::size_t n, double p, double x) {
    require(n >= 1, "n must be at least 1");
    require(p >= 0.0 && p <= 1.0, "p must lie in [0, 1]");
    const std::uint64_t N = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    const double Nd = static_cast<double>(N);
    const double m = std::floor(p * Nd + x * std::sqrt(p * (1.0 - p) * Nd));
    if (!(m > 0.0)) return 0;
    if (m >= Nd) return N;
    return static_cast<std::uint64_t>(m);
}

struct ChernoffBound {
    double delta = 0;        // relative deviation below the mean
    double per_set = 0;      // bound on Pr[Y < 2k log_a n] for one k-set
    double union_bound = 0;  // C(n, k) * per_set
    // c1 * p(n); the bound models G(n, p) with this p only when it is <= 1.
    double edge_probability = 0;
    bool edge_probability_valid = false;
};

// Chernoff bound on the chance that a fixed k-set has fewer than 2k log_a n
// common neighbours in G(n, c1 p(n)).
inline ChernoffBound chernoff_tail_bound(std::size_t n, std::size_t k, double c1) {
    detail::check_k3(k);
    require(c1 > 0, "c1 must be positive");
    const double kd = static_cast<double>(k);
    const double nd = static_cast<double>(n);
    const double ck = std::pow(c1, kd);
    if (!(ck > 2.0 * kd)) throw ParameterError("c1^k > 2k violated");
    if (!(nd > ck * kd / (ck - 2.0 * kd))) throw ParameterError("n > c1^k k / (c1^k - 2k) violated");

    ChernoffBound b;
    b.delta = ((ck - 2.0 * kd) * nd - ck * kd) / (ck * (nd - kd));
    const double mean = ck * (nd - kd) / nd * log_a(nd, k);
    b.per_set = std::exp(-mean / 2.0 * b.delta * b.delta);
    b.union_bound = static_cast<double>(binomial(n, k)) * b.per_set;
    b.edge_probability = c1 * threshold_p(nd, k, LogBase::A);
    b.edge_probability_valid = b.edge_probability <= 1.0;
    return b;
}

struct Claim2Bound {
    double per_set = 0;   // (1 + 2k log_a n)^{l-1} / n^{2k}
    double all_sets = 0;  // (1 + 2k log_a n)^{l-1} / n^k
};

// Failure bounds for the random k-coloring star argument.
inline Claim2Bound claim2_failure_bound(std::size_t n, std::size_t k, std::size_t ell) {
    detail::check_k3(k);
    require(n >= 2, "n must be at least 2");
    require(ell >= 1, "ell must be at least 1");
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    const double num = std::pow(1.0 + 2.0 * kd * log_a(nd, k), static_cast<double>(ell - 1));
    return {num / std::pow(nd, 2.0 * kd), num / std::pow(nd, kd)};
}

struct LowerEventProbs {
    std::uint64_t h = 0;       // |H| = ceil(n^{1/(2k+1)})
    std::uint64_t blocks = 0;  // floor(h / k)
    double pr_e1 = 0;          // H independent
    double pr_e2 = 0;          // some block has no common neighbour outside H
};

inline LowerEventProbs lower_bound_event_probs(std::size_t n, std::size_t k, double p) {
    detail::check_k3(k);
    require(p >= 0.0 && p <= 1.0, "p must lie in [0, 1]");
    require(n >= 1, "n must be at least 1");
    LowerEventProbs out;
    // Smallest h with h^{2k+1} >= n, in integers.
    auto reaches = [&](std::uint64_t h) {
        unsigned __int128 acc = 1;
        for (std::size_t i = 0; i < 2 * k + 1; ++i) {
            acc *= h;
            if (acc >= n) return true;
        }
        return acc >= n;
    };
    std::uint64_t h = 1;
    while (!reaches(h)) ++h;
    if (h < k) throw ParameterError("n too small: ceil(n^{1/(2k+1)}) = " + std::to_string(h) + " < k");
    out.h = h;
    out.blocks = h / k;
    out.pr_e1 = std::pow(1.0 - p, static_cast<double>(binomial(h, 2)));
    // y = (1 - p^k)^{n-h}; pr_e2 = 1 - (1 - y)^blocks
    const double pk = std::pow(p, static_cast<double>(k));
    const double y = pk >= 1.0 ? 0.0 : std::exp(static_cast<double>(n - h) * std::log1p(-pk));
    out.pr_e2 = y >= 1.0 ? 1.0 : -std::expm1(static_cast<double>(out.blocks) * std::log1p(-y));
    return out;
}

}  // namespace rainbow
