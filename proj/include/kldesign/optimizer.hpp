#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kldesign/design.hpp"
#include "kldesign/entropy.hpp"
#include "kldesign/generators.hpp"

namespace kld {

enum class ObjectiveKind { ENTROPY_MC, ENTROPY_NN, MAXIMIN };

/// CLI names: mc, nn, maximin.
std::string_view to_string(ObjectiveKind kind) noexcept;
std::optional<ObjectiveKind> parse_objective(std::string_view name) noexcept;

/// A criterion to maximize. ENTROPY_MC carries its kernel parameters, computed
/// once from (n, d) and held fixed for the whole run.
class Objective {
public:
    static Objective entropy_mc(std::size_t n, std::size_t d);
    static Objective entropy_nn();
    static Objective maximin();
    static Objective make(ObjectiveKind kind, std::size_t n, std::size_t d);

    ObjectiveKind kind() const noexcept { return kind_; }
    const std::optional<KdeParams>& kde_params() const noexcept { return params_; }

    /// Objective value. ENTROPY_NN returns -infinity on coincident points so
    /// that such proposals are always rejected.
    double operator()(PointsView points) const;

private:
    Objective(ObjectiveKind kind, std::optional<KdeParams> params) : kind_(kind), params_(params) {}

    ObjectiveKind kind_;
    std::optional<KdeParams> params_;
};

struct ExchangeConfig {
    std::size_t max_iterations = 0;
    std::size_t stall_limit = 1;
    std::size_t restarts = 1;
    std::uint64_t seed = 0;

    /// max_iterations = 500 n, stall_limit = 50 n, restarts = 5.
    static ExchangeConfig defaults_for(std::size_t n, std::uint64_t seed = 0);

    void validate() const;
};

struct TracePoint {
    std::size_t iteration;
    double objective;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct OptResult {
    Design design;
    /// Iteration 0 holds the initial design's value; then one entry per
    /// accepted proposal, strictly increasing in objective.
    std::vector<TracePoint> objective_trace;
    std::size_t accepted_count = 0;
    std::size_t proposed_count = 0;
    std::size_t restart_index = 0;

    double objective() const noexcept { return objective_trace.back().objective; }

    friend bool operator==(const OptResult&, const OptResult&) = default;
};

/// Stochastic exchange search. Each iteration replaces one uniformly chosen
/// point by a uniform candidate in [0,1]^d and keeps the change iff the
/// objective strictly increases. Stops after config.max_iterations proposals
/// or config.stall_limit consecutive rejections. Throws DegenerateDesignError
/// when the objective is undefined on the initial design.
OptResult exchange_optimize(const Design& initial, const Objective& objective, const ExchangeConfig& config);

/// Seeds used by restart r of best_of_restarts.
struct RestartSeeds {
    std::uint64_t initial;   // seed of the initial design, derive_seed(seed, r, 0)
    std::uint64_t exchange;  // seed of the exchange run, derive_seed(seed, r, 1)
};
RestartSeeds restart_seeds(std::uint64_t seed, std::size_t restart);

/// Runs config.restarts exchange searches from designs drawn with `initials`
/// (its seed replaced per restart) and returns the best final objective; ties
/// go to the lowest restart index. Restarts run on up to `threads` workers
/// and the result does not depend on the thread count.
OptResult best_of_restarts(const GeneratorSpec& initials, const Objective& objective, const ExchangeConfig& config,
                           std::size_t threads = 1);

/// CSV with header `iteration,objective`, one row per trace entry.
void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);
void write_trace_csv_file(const std::string& path, const std::vector<TracePoint>& trace);

}  // namespace kld
