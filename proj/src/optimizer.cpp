#include "kldesign/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "kldesign/criteria.hpp"
#include "kldesign/parallel.hpp"
#include "kldesign/rng.hpp"

namespace kld {

std::string_view to_string(ObjectiveKind kind) noexcept {
    switch (kind) {
        case ObjectiveKind::ENTROPY_MC: return "mc";
        case ObjectiveKind::ENTROPY_NN: return "nn";
        case ObjectiveKind::MAXIMIN: return "maximin";
    }
    return "unknown";
}

std::optional<ObjectiveKind> parse_objective(std::string_view name) noexcept {
    for (auto kind : {ObjectiveKind::ENTROPY_MC, ObjectiveKind::ENTROPY_NN, ObjectiveKind::MAXIMIN}) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

Objective Objective::entropy_mc(std::size_t n, std::size_t d) {
    return Objective(ObjectiveKind::ENTROPY_MC, KdeParams::for_size(n, d));
}

Objective Objective::entropy_nn() { return Objective(ObjectiveKind::ENTROPY_NN, std::nullopt); }

Objective Objective::maximin() { return Objective(ObjectiveKind::MAXIMIN, std::nullopt); }

Objective Objective::make(ObjectiveKind kind, std::size_t n, std::size_t d) {
    switch (kind) {
        case ObjectiveKind::ENTROPY_MC: return entropy_mc(n, d);
        case ObjectiveKind::ENTROPY_NN: return entropy_nn();
        case ObjectiveKind::MAXIMIN: return maximin();
    }
    throw ValidationError("unknown objective");
}

double Objective::operator()(PointsView points) const {
    switch (kind_) {
        case ObjectiveKind::ENTROPY_MC: return kld::entropy_mc(points, *params_).value;
        case ObjectiveKind::ENTROPY_NN: {
            const auto rho = nn_distances(points);
            if (std::ranges::any_of(rho, [](double r) { return r == 0.0; })) {
                return -std::numeric_limits<double>::infinity();
            }
            return kozachenko_leonenko(rho, points.dim());
        }
        case ObjectiveKind::MAXIMIN: return mindist(points);
    }
    throw ValidationError("unknown objective");
}

ExchangeConfig ExchangeConfig::defaults_for(std::size_t n, std::uint64_t seed) {
    return {500 * n, 50 * n, 5, seed};
}

void ExchangeConfig::validate() const {
    if (stall_limit < 1) throw ValidationError("stall_limit must be at least 1");
    if (restarts < 1) throw ValidationError("restarts must be at least 1");
}

OptResult exchange_optimize(const Design& initial, const Objective& objective, const ExchangeConfig& config) {
    if (config.stall_limit < 1) throw ValidationError("stall_limit must be at least 1");
    if (objective.kind() == ObjectiveKind::ENTROPY_NN && initial.has_duplicates()) {
        entropy_nn(initial);  // throws with the colliding indices
    }

    const std::size_t n = initial.size();
    const std::size_t d = initial.dim();
    std::vector<double> coords = initial.coords();
    const PointsView points(coords, d);

    double value = objective(points);
    OptResult result{initial, {{0, value}}, 0, 0, 0};

    Rng rng(config.seed);
    std::vector<double> saved(d);
    std::size_t stall = 0;
    for (std::size_t iteration = 1; iteration <= config.max_iterations; ++iteration) {
        const auto index = static_cast<std::size_t>(uniform_index(rng, n));
        double* point = coords.data() + index * d;
        std::copy(point, point + d, saved.begin());
        for (std::size_t k = 0; k < d; ++k) point[k] = uniform01(rng);
        ++result.proposed_count;

        const double candidate = objective(points);
        if (candidate > value) {
            value = candidate;
            result.objective_trace.push_back({iteration, value});
            ++result.accepted_count;
            stall = 0;
        } else {
            std::copy(saved.begin(), saved.end(), point);
            if (++stall >= config.stall_limit) break;
        }
    }

    if (result.accepted_count > 0) result.design = Design(d, std::move(coords));
    return result;
}

RestartSeeds restart_seeds(std::uint64_t seed, std::size_t restart) {
    return {derive_seed(seed, restart, 0), derive_seed(seed, restart, 1)};
}

OptResult best_of_restarts(const GeneratorSpec& initials, const Objective& objective, const ExchangeConfig& config,
                           std::size_t threads) {
    config.validate();
    initials.validate();

    std::vector<std::optional<OptResult>> runs(config.restarts);
    parallel_for(config.restarts, threads, [&](std::size_t r) {
        const auto seeds = restart_seeds(config.seed, r);
        GeneratorSpec spec = initials;
        spec.seed = seeds.initial;
        ExchangeConfig run_config = config;
        run_config.seed = seeds.exchange;
        runs[r] = exchange_optimize(generate(spec), objective, run_config);
        runs[r]->restart_index = r;
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r) {
        if (runs[r]->objective() > runs[best]->objective()) best = r;
    }
    return std::move(*runs[best]);
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
    out << "iteration,objective\n";
    for (const auto& point : trace) out << point.iteration << ',' << format_double(point.objective) << '\n';
}

void write_trace_csv_file(const std::string& path, const std::vector<TracePoint>& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_trace_csv(out, trace);
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace kld
