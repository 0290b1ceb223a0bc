#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kldesign/criteria.hpp"
#include "kldesign/generators.hpp"
#include "kldesign/optimizer.hpp"

namespace kld {

/// A column of a study: a baseline generator or a design optimized with
/// best_of_restarts under the given objective.
using StudyFamily = std::variant<Family, ObjectiveKind>;

std::string family_name(const StudyFamily& family);
std::optional<StudyFamily> parse_study_family(std::string_view name) noexcept;

struct StudySpec {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t replicates = 20;
    std::vector<StudyFamily> families;
    std::uint64_t base_seed = 0;
    /// Template for optimizer families; its seed is replaced per replicate.
    ExchangeConfig exchange;

    void validate() const;
};

/// Seed of replicate r of the family at position f in spec.families:
/// derive_seed(base_seed, f, r).
std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t family_index, std::size_t replicate);

/// Parses the study JSON. Missing exchange fields default to
/// ExchangeConfig::defaults_for(n). Throws ValidationError naming the
/// offending field.
StudySpec parse_study_spec(const nlohmann::json& j);
StudySpec read_study_spec_file(const std::string& path);
nlohmann::json to_json(const StudySpec& spec);

class StudyError : public Error {
public:
    StudyError(const std::string& what, std::string family, std::size_t replicate, std::uint64_t seed)
        : Error(what), family_(std::move(family)), replicate_(replicate), seed_(seed) {}

    const std::string& family() const noexcept { return family_; }
    std::size_t replicate() const noexcept { return replicate_; }
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::string family_;
    std::size_t replicate_;
    std::uint64_t seed_;
};

struct StudyRow {
    std::string family;
    std::size_t replicate = 0;
    std::uint64_t seed = 0;
    CriteriaReport criteria;

    friend bool operator==(const StudyRow&, const StudyRow&) = default;
};

struct Summary {
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double iqr() const noexcept { return q3 - q1; }

    friend bool operator==(const Summary&, const Summary&) = default;
};

inline constexpr std::array<std::string_view, 6> kCriterionNames{"cov", "mindist", "dl2", "dc2", "mst_mean",
                                                                 "mst_std"};

/// Value of the named criterion (one of kCriterionNames).
double criterion_value(const CriteriaReport& report, std::string_view name);

struct FamilyAggregate {
    std::string family;
    /// Indexed like kCriterionNames.
    std::array<Summary, kCriterionNames.size()> criteria;

    const Summary& at(std::string_view criterion) const;

    friend bool operator==(const FamilyAggregate&, const FamilyAggregate&) = default;
};

struct StudyReport {
    StudySpec spec;
    /// Family-major, replicate-minor order.
    std::vector<StudyRow> rows;
    std::vector<FamilyAggregate> aggregates;

    const FamilyAggregate& aggregate(std::string_view family) const;
};

/// Sample quantile with linear interpolation between order statistics
/// (the "type 7" rule). values must be nonempty.
double quantile(std::vector<double> values, double p);

/// Median and quartiles of each criterion per family, recomputed from rows.
std::vector<FamilyAggregate> aggregate_rows(const std::vector<StudyRow>& rows);

StudyReport run_study(const StudySpec& spec, std::size_t threads = 1);

/// Writes criteria.csv, aggregate.csv, mst_scatter.csv and manifest.json into
/// `directory`, creating it if needed.
void emit_report(const StudyReport& report, const std::filesystem::path& directory);

void write_criteria_csv(std::ostream& out, const std::vector<StudyRow>& rows);
void write_aggregate_csv(std::ostream& out, const std::vector<FamilyAggregate>& aggregates);
void write_scatter_csv(std::ostream& out, const std::vector<StudyRow>& rows);

}  // namespace kld
