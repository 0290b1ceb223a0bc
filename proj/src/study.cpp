#include "kldesign/study.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "kldesign/parallel.hpp"
#include "kldesign/rng.hpp"

namespace kld {

namespace {

std::size_t criterion_index(std::string_view name) {
    for (std::size_t c = 0; c < kCriterionNames.size(); ++c) {
        if (kCriterionNames[c] == name) return c;
    }
    throw ValidationError("unknown criterion '" + std::string(name) + "'");
}

template <class T>
T read_field(const nlohmann::json& j, const char* field) {
    const auto it = j.find(field);
    if (it == j.end()) throw ValidationError(std::string("study spec: missing field '") + field + "'");
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError(std::string("study spec: field '") + field + "' has the wrong type");
    }
}

std::size_t read_count(const nlohmann::json& j, const char* field) {
    const auto it = j.find(field);
    if (it == j.end()) throw ValidationError(std::string("study spec: missing field '") + field + "'");
    if (!it->is_number_unsigned()) {
        throw ValidationError(std::string("study spec: field '") + field + "' must be a nonnegative integer");
    }
    return it->get<std::size_t>();
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace

std::string family_name(const StudyFamily& family) {
    return std::visit([](auto f) { return std::string(to_string(f)); }, family);
}

std::optional<StudyFamily> parse_study_family(std::string_view name) noexcept {
    if (auto f = parse_family(name)) return StudyFamily{*f};
    if (auto o = parse_objective(name)) return StudyFamily{*o};
    return std::nullopt;
}

void StudySpec::validate() const {
    if (n < 2) throw ValidationError("study spec: field 'n' must be at least 2");
    if (d < 1) throw ValidationError("study spec: field 'd' must be at least 1");
    if (replicates < 1) throw ValidationError("study spec: field 'replicates' must be at least 1");
    if (families.empty()) throw ValidationError("study spec: field 'families' must not be empty");
    for (const auto& family : families) {
        if (std::holds_alternative<Family>(family)) {
            try {
                GeneratorSpec{std::get<Family>(family), n, d, 0}.validate();
            } catch (const ValidationError& e) {
                throw ValidationError(std::string("study spec: field 'families': ") + e.what());
            }
        }
    }
    if (exchange.stall_limit < 1) throw ValidationError("study spec: field 'exchange.stall_limit' must be at least 1");
    if (exchange.restarts < 1) throw ValidationError("study spec: field 'exchange.restarts' must be at least 1");
}

std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t family_index, std::size_t replicate) {
    return derive_seed(base_seed, family_index, replicate);
}

StudySpec parse_study_spec(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("study spec: top level must be a JSON object");
    StudySpec spec;
    spec.n = read_count(j, "n");
    spec.d = read_count(j, "d");
    spec.replicates = j.contains("replicates") ? read_count(j, "replicates") : 20;
    spec.base_seed = j.contains("base_seed") ? read_count(j, "base_seed") : 0;

    const auto names = read_field<std::vector<std::string>>(j, "families");
    for (const auto& name : names) {
        auto family = parse_study_family(name);
        if (!family) throw ValidationError("study spec: field 'families' has unknown entry '" + name + "'");
        spec.families.push_back(*family);
    }

    spec.exchange = ExchangeConfig::defaults_for(spec.n);
    if (auto it = j.find("exchange"); it != j.end()) {
        if (!it->is_object()) throw ValidationError("study spec: field 'exchange' must be an object");
        const auto& ex = *it;
        for (const auto& [key, value] : ex.items()) {
            if (key != "max_iterations" && key != "stall_limit" && key != "restarts") {
                throw ValidationError("study spec: field 'exchange." + key + "' is not recognized");
            }
            if (!value.is_number_unsigned()) {
                throw ValidationError("study spec: field 'exchange." + key + "' must be a nonnegative integer");
            }
        }
        if (ex.contains("max_iterations")) spec.exchange.max_iterations = ex["max_iterations"].get<std::size_t>();
        if (ex.contains("stall_limit")) spec.exchange.stall_limit = ex["stall_limit"].get<std::size_t>();
        if (ex.contains("restarts")) spec.exchange.restarts = ex["restarts"].get<std::size_t>();
    }
    spec.validate();
    return spec;
}

StudySpec read_study_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("study spec: invalid JSON in '" + path + "': " + e.what());
    }
    return parse_study_spec(j);
}

nlohmann::json to_json(const StudySpec& spec) {
    nlohmann::json families = nlohmann::json::array();
    for (const auto& family : spec.families) families.push_back(family_name(family));
    return nlohmann::json{{"n", spec.n},
                          {"d", spec.d},
                          {"replicates", spec.replicates},
                          {"families", families},
                          {"base_seed", spec.base_seed},
                          {"exchange",
                           {{"max_iterations", spec.exchange.max_iterations},
                            {"stall_limit", spec.exchange.stall_limit},
                            {"restarts", spec.exchange.restarts}}}};
}

double criterion_value(const CriteriaReport& report, std::string_view name) {
    switch (criterion_index(name)) {
        case 0: return report.cov;
        case 1: return report.mindist;
        case 2: return report.dl2;
        case 3: return report.dc2;
        case 4: return report.mst_mean;
        default: return report.mst_std;
    }
}

const Summary& FamilyAggregate::at(std::string_view criterion) const { return criteria[criterion_index(criterion)]; }

const FamilyAggregate& StudyReport::aggregate(std::string_view family) const {
    for (const auto& agg : aggregates) {
        if (agg.family == family) return agg;
    }
    throw ValidationError("no family '" + std::string(family) + "' in the study");
}

double quantile(std::vector<double> values, double p) {
    if (values.empty()) throw ValidationError("quantile of an empty sample");
    std::ranges::sort(values);
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<FamilyAggregate> aggregate_rows(const std::vector<StudyRow>& rows) {
    std::vector<std::string> order;
    for (const auto& row : rows) {
        if (std::ranges::find(order, row.family) == order.end()) order.push_back(row.family);
    }
    std::vector<FamilyAggregate> out;
    for (const auto& family : order) {
        FamilyAggregate agg{family, {}};
        for (std::size_t c = 0; c < kCriterionNames.size(); ++c) {
            std::vector<double> values;
            for (const auto& row : rows) {
                if (row.family == family) values.push_back(criterion_value(row.criteria, kCriterionNames[c]));
            }
            agg.criteria[c] = {quantile(values, 0.5), quantile(values, 0.25), quantile(values, 0.75)};
        }
        out.push_back(std::move(agg));
    }
    return out;
}

StudyReport run_study(const StudySpec& spec, std::size_t threads) {
    spec.validate();
    const std::size_t tasks = spec.families.size() * spec.replicates;
    std::vector<StudyRow> rows(tasks);

    parallel_for(tasks, threads, [&](std::size_t task) {
        const std::size_t f = task / spec.replicates;
        const std::size_t r = task % spec.replicates;
        const auto& family = spec.families[f];
        const std::string name = family_name(family);
        const std::uint64_t seed = replicate_seed(spec.base_seed, f, r);
        try {
            const Design design = std::visit(
                [&](auto kind) -> Design {
                    if constexpr (std::is_same_v<decltype(kind), Family>) {
                        return generate({kind, spec.n, spec.d, seed});
                    } else {
                        ExchangeConfig config = spec.exchange;
                        config.seed = seed;
                        // Restarts run serially here; the study already spreads replicates over threads.
                        return best_of_restarts({Family::RANDOM, spec.n, spec.d, 0},
                                                Objective::make(kind, spec.n, spec.d), config, 1)
                            .design;
                    }
                },
                family);
            rows[task] = {name, r, seed, evaluate(design, name)};
        } catch (const std::exception& e) {
            throw StudyError("study failed for family '" + name + "', replicate " + std::to_string(r) + ", seed " +
                                 std::to_string(seed) + ": " + e.what(),
                             name, r, seed);
        }
    });

    StudyReport report{spec, std::move(rows), {}};
    report.aggregates = aggregate_rows(report.rows);
    return report;
}

void write_criteria_csv(std::ostream& out, const std::vector<StudyRow>& rows) {
    out << "family,replicate,seed,n,d,cov,mindist,dl2,dc2,mst_mean,mst_std\n";
    for (const auto& row : rows) {
        const auto& c = row.criteria;
        out << row.family << ',' << row.replicate << ',' << row.seed << ',' << c.n << ',' << c.d << ','
            << format_double(c.cov) << ',' << format_double(c.mindist) << ',' << format_double(c.dl2) << ','
            << format_double(c.dc2) << ',' << format_double(c.mst_mean) << ',' << format_double(c.mst_std) << '\n';
    }
}

void write_aggregate_csv(std::ostream& out, const std::vector<FamilyAggregate>& aggregates) {
    out << "family,criterion,median,q1,q3,iqr\n";
    for (const auto& agg : aggregates) {
        for (std::size_t c = 0; c < kCriterionNames.size(); ++c) {
            const auto& s = agg.criteria[c];
            out << agg.family << ',' << kCriterionNames[c] << ',' << format_double(s.median) << ','
                << format_double(s.q1) << ',' << format_double(s.q3) << ',' << format_double(s.iqr()) << '\n';
        }
    }
}

void write_scatter_csv(std::ostream& out, const std::vector<StudyRow>& rows) {
    out << "family,replicate,mst_mean,mst_std\n";
    for (const auto& row : rows) {
        out << row.family << ',' << row.replicate << ',' << format_double(row.criteria.mst_mean) << ','
            << format_double(row.criteria.mst_std) << '\n';
    }
}

void emit_report(const StudyReport& report, const std::filesystem::path& directory) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw Error("cannot create directory '" + directory.string() + "': " + ec.message());

    const auto write = [&](const char* name, auto&& writer) {
        const auto path = directory / name;
        auto out = open_output(path);
        writer(out);
        finish(out, path);
    };
    write("criteria.csv", [&](std::ostream& out) { write_criteria_csv(out, report.rows); });
    write("aggregate.csv", [&](std::ostream& out) { write_aggregate_csv(out, report.aggregates); });
    write("mst_scatter.csv", [&](std::ostream& out) { write_scatter_csv(out, report.rows); });
    write("manifest.json", [&](std::ostream& out) { out << to_json(report.spec).dump(2) << '\n'; });
}

}  // namespace kld
