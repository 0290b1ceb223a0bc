#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "kldesign/design.hpp"

namespace kld {

/// Euler-Mascheroni constant as used by the nearest-neighbor estimator.
inline constexpr double kEulerGamma = 0.5772156649;

/// Kernel density parameters. s2 is the per-coordinate variance of the
/// Gaussian kernel, d/12 (variance of U[0,1] times the dimension).
struct KdeParams {
    double h = 0.0;
    double s2 = 0.0;
    /// Drop the self-term K(0) when evaluating the density at design points.
    bool leave_one_out = false;

    /// Scott-rule bandwidth and s2 = d/12 for a design of n points in dimension d.
    static KdeParams for_size(std::size_t n, std::size_t d, bool leave_one_out = false);

    friend bool operator==(const KdeParams&, const KdeParams&) = default;
};

enum class EntropyMethod { MC_KDE, NN_KL };

std::string_view to_string(EntropyMethod method) noexcept;

struct EntropyEstimate {
    double value = 0.0;  // nats
    EntropyMethod method = EntropyMethod::NN_KL;
    std::optional<KdeParams> params;  // set iff method == MC_KDE
};

/// Scott's rule with the uniform standard deviation: 12^{-1/2} n^{-1/(d+4)}.
double scott_bandwidth(std::size_t n, std::size_t d);

/// Multivariate Gaussian kernel with per-coordinate variance s2.
double gaussian_kernel(std::span<const double> z, double s2);

/// Same kernel with s2 = d/12, d = z.size().
double gaussian_kernel(std::span<const double> z);

/// Kernel density estimate f(x) = 1/(n h^d) sum_i K((x - X_i)/h) over all
/// points; params.leave_one_out does not apply to arbitrary x and is ignored.
double kde_density(std::span<const double> x, PointsView points, const KdeParams& params);

/// Resubstitution entropy estimate -1/n sum_i ln f(X_i). Kernel sums are
/// accumulated in log space so the result stays finite for any h.
EntropyEstimate entropy_mc(PointsView points, const KdeParams& params);

/// Kozachenko-Leonenko estimate from nearest-neighbor distances (k = 1).
/// Throws DegenerateDesignError listing colliding pairs when points coincide.
EntropyEstimate entropy_nn(PointsView points);

/// The estimator formula applied to precomputed nearest-neighbor distances,
/// all assumed positive.
double kozachenko_leonenko(std::span<const double> rho, std::size_t d);

/// Log-volume of the unit Euclidean ball in dimension d.
double log_unit_ball_volume(std::size_t d);

}  // namespace kld
