#include "kldesign/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace kld {

namespace {

// ln of the Gaussian normalizer (2 pi)^{-d/2} s^{-d}.
double log_kernel_norm(std::size_t d, double s2) {
    return -0.5 * static_cast<double>(d) * (std::log(2.0 * std::numbers::pi) + std::log(s2));
}

// ln sum_j exp(terms[j]), terms nonempty.
double log_sum_exp(std::span<const double> terms) {
    const double top = *std::ranges::max_element(terms);
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - top);
    return top + std::log(sum);
}

}  // namespace

KdeParams KdeParams::for_size(std::size_t n, std::size_t d, bool leave_one_out) {
    if (d == 0) throw ValidationError("dimension must be at least 1");
    return {scott_bandwidth(n, d), static_cast<double>(d) / 12.0, leave_one_out};
}

std::string_view to_string(EntropyMethod method) noexcept {
    return method == EntropyMethod::MC_KDE ? "MC_KDE" : "NN_KL";
}

double scott_bandwidth(std::size_t n, std::size_t d) {
    if (n == 0 || d == 0) throw ValidationError("bandwidth needs n >= 1 and d >= 1");
    return std::pow(static_cast<double>(n), -1.0 / (static_cast<double>(d) + 4.0)) / std::sqrt(12.0);
}

double gaussian_kernel(std::span<const double> z, double s2) {
    double sq = 0.0;
    for (double v : z) sq += v * v;
    return std::exp(log_kernel_norm(z.size(), s2) - sq / (2.0 * s2));
}

double gaussian_kernel(std::span<const double> z) {
    if (z.empty()) throw ValidationError("kernel argument must have dimension >= 1");
    return gaussian_kernel(z, static_cast<double>(z.size()) / 12.0);
}

double kde_density(std::span<const double> x, PointsView points, const KdeParams& params) {
    const std::size_t n = points.size();
    const std::size_t d = points.dim();
    if (n == 0) throw ValidationError("density estimate needs at least one point");
    if (x.size() != d) throw ValidationError("evaluation point has the wrong dimension");
    if (!(params.h > 0.0) || !(params.s2 > 0.0)) throw ValidationError("bandwidth and kernel variance must be positive");

    const double scale = 2.0 * params.s2 * params.h * params.h;
    std::vector<double> exponents(n);
    for (std::size_t j = 0; j < n; ++j) exponents[j] = -squared_distance(x, points[j]) / scale;
    const double log_f = log_kernel_norm(d, params.s2) - static_cast<double>(d) * std::log(params.h) -
                         std::log(static_cast<double>(n)) + log_sum_exp(exponents);
    return std::exp(log_f);
}

EntropyEstimate entropy_mc(PointsView points, const KdeParams& params) {
    const std::size_t n = points.size();
    const std::size_t d = points.dim();
    if (n == 0) throw ValidationError("entropy estimate needs at least one point");
    if (params.leave_one_out && n < 2) throw ValidationError("leave-one-out entropy needs at least 2 points");
    if (!(params.h > 0.0) || !(params.s2 > 0.0)) throw ValidationError("bandwidth and kernel variance must be positive");

    const double scale = 2.0 * params.s2 * params.h * params.h;
    const std::size_t terms = params.leave_one_out ? n - 1 : n;
    const double log_const = log_kernel_norm(d, params.s2) - static_cast<double>(d) * std::log(params.h) -
                             std::log(static_cast<double>(terms));

    std::vector<double> sq(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            sq[i * n + j] = sq[j * n + i] = squared_distance(points[i], points[j]);
        }
    }

    std::vector<double> exponents;
    exponents.reserve(n);
    double sum_log_f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        exponents.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (params.leave_one_out && j == i) continue;
            exponents.push_back(-sq[i * n + j] / scale);
        }
        sum_log_f += log_const + log_sum_exp(exponents);
    }
    return {-sum_log_f / static_cast<double>(n), EntropyMethod::MC_KDE, params};
}

double log_unit_ball_volume(std::size_t d) {
    const double half = 0.5 * static_cast<double>(d);
    return half * std::log(std::numbers::pi) - std::lgamma(half + 1.0);
}

EntropyEstimate entropy_nn(PointsView points) {
    const std::size_t n = points.size();
    const std::size_t d = points.dim();
    const auto rho = nn_distances(points);

    if (std::ranges::any_of(rho, [](double r) { return r == 0.0; })) {
        std::vector<std::pair<std::size_t, std::size_t>> collisions;
        for (std::size_t i = 0; i < n; ++i) {
            if (rho[i] != 0.0) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (std::ranges::equal(points[i], points[j])) collisions.emplace_back(i, j);
            }
        }
        std::ostringstream msg;
        msg << "nearest-neighbor entropy is undefined for coincident points:";
        for (const auto& [i, j] : collisions) msg << " (" << i << ", " << j << ")";
        throw DegenerateDesignError(msg.str(), std::move(collisions));
    }

    return {kozachenko_leonenko(rho, d), EntropyMethod::NN_KL, std::nullopt};
}

double kozachenko_leonenko(std::span<const double> rho, std::size_t d) {
    const auto n = static_cast<double>(rho.size());
    double sum_log = 0.0;
    for (double r : rho) sum_log += std::log(r);
    return static_cast<double>(d) * sum_log / n + log_unit_ball_volume(d) + kEulerGamma + std::log(n - 1.0);
}

}  // namespace kld
