#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls the library code it is used to check.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

struct Points {
    std::size_t n;
    std::size_t d;
    std::vector<double> x;  // row-major

    double at(std::size_t i, std::size_t k) const { return x[i * d + k]; }
};

struct MonteCarlo {
    double mean;
    double std_error;
};

/// Monte-Carlo estimate of the squared L2 star discrepancy from its
/// definition: integral over u of (#{x_i < u}/n - vol[0,u))^2.
inline MonteCarlo l2_star_squared(const Points& p, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> u(p.d);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        double vol = 1.0;
        for (auto& v : u) {
            v = unif(rng);
            vol *= v;
        }
        std::size_t inside = 0;
        for (std::size_t i = 0; i < p.n; ++i) {
            bool in = true;
            for (std::size_t k = 0; k < p.d && in; ++k) in = p.at(i, k) < u[k];
            inside += in;
        }
        const double g = static_cast<double>(inside) / static_cast<double>(p.n) - vol;
        sum += g * g;
        sum_sq += g * g * g * g;
    }
    const double m = sum / static_cast<double>(samples);
    const double var = sum_sq / static_cast<double>(samples) - m * m;
    return {m, std::sqrt(var / static_cast<double>(samples))};
}

/// Monte-Carlo estimate of the squared centered L2 discrepancy. For a point u
/// and every nonempty subset S of the coordinates, the box spans u and its
/// nearest cube vertex in the coordinates of S; the squared local
/// discrepancies of all 2^d - 1 projections are summed.
inline MonteCarlo centered_l2_squared(const Points& p, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> lo(p.d), hi(p.d);
    const std::size_t subsets = std::size_t{1} << p.d;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t k = 0; k < p.d; ++k) {
            const double v = unif(rng);
            if (v < 0.5) {
                lo[k] = 0.0;
                hi[k] = v;
            } else {
                lo[k] = v;
                hi[k] = 1.0;
            }
        }
        double g = 0.0;
        for (std::size_t mask = 1; mask < subsets; ++mask) {
            double vol = 1.0;
            for (std::size_t k = 0; k < p.d; ++k) {
                if (mask >> k & 1) vol *= hi[k] - lo[k];
            }
            std::size_t inside = 0;
            for (std::size_t i = 0; i < p.n; ++i) {
                bool in = true;
                for (std::size_t k = 0; k < p.d && in; ++k) {
                    if (mask >> k & 1) in = p.at(i, k) >= lo[k] && p.at(i, k) < hi[k];
                }
                inside += in;
            }
            const double local = static_cast<double>(inside) / static_cast<double>(p.n) - vol;
            g += local * local;
        }
        sum += g;
        sum_sq += g * g;
    }
    const double m = sum / static_cast<double>(samples);
    const double var = sum_sq / static_cast<double>(samples) - m * m;
    return {m, std::sqrt(var / static_cast<double>(samples))};
}

/// Hickernell's closed form re-evaluated in long double, term by term.
inline long double centered_l2_extended(const Points& p) {
    const long double n = p.n;
    long double single = 0.0L, pair = 0.0L;
    for (std::size_t i = 0; i < p.n; ++i) {
        long double prod = 1.0L;
        for (std::size_t k = 0; k < p.d; ++k) {
            const long double c = std::fabs(static_cast<long double>(p.at(i, k)) - 0.5L);
            prod *= 1.0L + c / 2.0L - c * c / 2.0L;
        }
        single += prod;
        for (std::size_t j = 0; j < p.n; ++j) {
            long double q = 1.0L;
            for (std::size_t k = 0; k < p.d; ++k) {
                const long double a = p.at(i, k), b = p.at(j, k);
                q *= 1.0L + std::fabs(a - 0.5L) / 2.0L + std::fabs(b - 0.5L) / 2.0L - std::fabs(a - b) / 2.0L;
            }
            pair += q;
        }
    }
    const long double sq = std::pow(13.0L / 12.0L, static_cast<long double>(p.d)) - 2.0L / n * single + pair / (n * n);
    return std::sqrt(sq);
}

/// Minimum total weight over every spanning tree of the complete Euclidean
/// graph, by enumerating all (n-1)-edge subsets. Practical for n <= 7.
inline double brute_force_mst_weight(const Points& p) {
    struct Edge {
        std::size_t a, b;
        double w;
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < p.n; ++i) {
        for (std::size_t j = i + 1; j < p.n; ++j) {
            double sq = 0.0;
            for (std::size_t k = 0; k < p.d; ++k) sq += (p.at(i, k) - p.at(j, k)) * (p.at(i, k) - p.at(j, k));
            edges.push_back({i, j, std::sqrt(sq)});
        }
    }
    const std::size_t m = edges.size();
    const std::size_t pick = p.n - 1;
    double best = INFINITY;
    std::vector<std::size_t> idx(pick);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::vector<std::size_t> parent(p.n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        bool tree = true;
        double weight = 0.0;
        for (std::size_t e : idx) {
            const auto ra = find(edges[e].a), rb = find(edges[e].b);
            if (ra == rb) {
                tree = false;
                break;
            }
            parent[ra] = rb;
            weight += edges[e].w;
        }
        if (tree && weight < best) best = weight;

        // next combination
        std::size_t pos = pick;
        while (pos > 0 && idx[pos - 1] == m - pick + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t q = pos; q < pick; ++q) idx[q] = idx[q - 1] + 1;
    }
    return best;
}

}  // namespace oracle
