#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "kldesign/parallel.hpp"
#include "kldesign/study.hpp"

using namespace kld;
namespace fs = std::filesystem;

namespace {

StudySpec small_spec() {
    return parse_study_spec(nlohmann::json::parse(R"({
        "n": 12, "d": 2, "replicates": 4,
        "families": ["random", "lhs", "halton", "maximin", "nn", "mc"],
        "base_seed": 11,
        "exchange": {"max_iterations": 600, "stall_limit": 150, "restarts": 2}
    })"));
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::ifstream in(path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        rows.push_back(fields);
    }
    return rows;
}

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("kldesign_test_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("study spec parsing") {
    const auto spec = small_spec();
    CHECK(spec.n == 12);
    CHECK(spec.families.size() == 6);
    CHECK(family_name(spec.families[3]) == "maximin");
    CHECK(spec.exchange.max_iterations == 600);

    const auto defaults = parse_study_spec(nlohmann::json::parse(R"({"n": 10, "d": 3, "families": ["nn"]})"));
    CHECK(defaults.replicates == 20);
    CHECK(defaults.exchange.max_iterations == 5000);
    CHECK(defaults.exchange.stall_limit == 500);
    CHECK(defaults.exchange.restarts == 5);

    CHECK(parse_study_spec(to_json(spec)).families == spec.families);
}

TEST_CASE("study spec errors name the field") {
    const auto message_of = [](const char* text) -> std::string {
        try {
            parse_study_spec(nlohmann::json::parse(text));
        } catch (const ValidationError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(message_of(R"({"d": 2, "families": ["random"]})").find("'n'") != std::string::npos);
    CHECK(message_of(R"({"n": 10, "d": -2, "families": ["random"]})").find("'d'") != std::string::npos);
    CHECK(message_of(R"({"n": 10, "d": 2, "families": ["dmax"]})").find("'families'") != std::string::npos);
    CHECK(message_of(R"({"n": 10, "d": 2, "families": []})").find("'families'") != std::string::npos);
    CHECK(message_of(R"({"n": 10, "d": 2, "families": "random"})").find("'families'") != std::string::npos);
    CHECK(message_of(R"({"n": 10, "d": 2, "families": ["nn"], "exchange": {"stall_limit": 0}})")
              .find("'exchange.stall_limit'") != std::string::npos);
    CHECK(message_of(R"({"n": 10, "d": 2, "families": ["nn"], "exchange": {"budget": 5}})")
              .find("'exchange.budget'") != std::string::npos);
    CHECK(message_of(R"({"n": 10, "d": 12, "families": ["sobol"]})").find("'families'") != std::string::npos);
    CHECK(message_of(R"({"n": 10, "d": 2, "replicates": 0, "families": ["nn"]})").find("'replicates'") !=
          std::string::npos);
}

TEST_CASE("quantile uses linear interpolation") {
    CHECK(quantile({3.0}, 0.5) == 3.0);
    CHECK(quantile({4.0, 1.0, 3.0, 2.0}, 0.5) == 2.5);
    CHECK(quantile({1.0, 2.0, 3.0, 4.0, 5.0}, 0.25) == 2.0);
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.25) == doctest::Approx(1.75));
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.75) == doctest::Approx(3.25));
}

TEST_CASE("single random replicate") {
    auto spec = parse_study_spec(nlohmann::json::parse(R"({"n": 15, "d": 2, "replicates": 1,
                                                           "families": ["random"], "base_seed": 3})"));
    const auto report = run_study(spec);
    REQUIRE(report.rows.size() == 1);
    const auto& row = report.rows[0];
    CHECK(row.seed == replicate_seed(3, 0, 0));
    CHECK(row.criteria == evaluate(random_design(15, 2, row.seed), "random"));
    const auto& agg = report.aggregate("random");
    for (auto name : kCriterionNames) {
        CHECK(agg.at(name).median == criterion_value(row.criteria, name));
        CHECK(agg.at(name).iqr() == 0.0);
    }
}

TEST_CASE("study runs are deterministic and thread-count independent") {
    const auto spec = small_spec();
    const auto serial = run_study(spec, 1);
    const auto threaded = run_study(spec, 3);
    CHECK(serial.rows == threaded.rows);
    CHECK(serial.aggregates == threaded.aggregates);
    CHECK(serial.rows.size() == spec.families.size() * spec.replicates);
    for (std::size_t t = 0; t < serial.rows.size(); ++t) {
        CHECK(serial.rows[t].family == family_name(spec.families[t / spec.replicates]));
        CHECK(serial.rows[t].replicate == t % spec.replicates);
    }
}

TEST_CASE("emitted files") {
    const auto spec = small_spec();
    const auto report = run_study(spec);
    const auto dir_a = scratch_dir("a");
    const auto dir_b = scratch_dir("b");
    emit_report(report, dir_a);
    emit_report(run_study(spec, 2), dir_b);

    for (const char* name : {"criteria.csv", "aggregate.csv", "mst_scatter.csv", "manifest.json"}) {
        CHECK(fs::exists(dir_a / name));
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
    }

    SUBCASE("scatter has one row per design") {
        const auto scatter = read_csv(dir_a / "mst_scatter.csv");
        CHECK(scatter[0] == std::vector<std::string>{"family", "replicate", "mst_mean", "mst_std"});
        CHECK(scatter.size() - 1 == spec.families.size() * spec.replicates);
    }

    SUBCASE("manifest replays the study") {
        std::ifstream in(dir_a / "manifest.json");
        const auto replay = run_study(parse_study_spec(nlohmann::json::parse(in)));
        CHECK(replay.rows == report.rows);
    }

    SUBCASE("aggregate CSV matches recomputation from the per-replicate CSV") {
        const auto rows = read_csv(dir_a / "criteria.csv");
        const auto& header = rows[0];
        std::map<std::pair<std::string, std::string>, std::vector<double>> columns;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            for (std::size_t c = 5; c < header.size(); ++c) {
                columns[{rows[r][0], header[c]}].push_back(std::stod(rows[r][c]));
            }
        }
        const auto agg = read_csv(dir_a / "aggregate.csv");
        CHECK(agg.size() - 1 == spec.families.size() * kCriterionNames.size());
        for (std::size_t r = 1; r < agg.size(); ++r) {
            const auto& values = columns.at({agg[r][0], agg[r][1]});
            CHECK(std::stod(agg[r][2]) == quantile(values, 0.5));
            CHECK(std::stod(agg[r][3]) == quantile(values, 0.25));
            CHECK(std::stod(agg[r][4]) == quantile(values, 0.75));
        }
    }

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("aggregates are a pure function of the rows") {
    const auto report = run_study(small_spec());
    CHECK(aggregate_rows(report.rows) == report.aggregates);
}

TEST_CASE("parallel_for reports the lowest failing task") {
    for (std::size_t threads : {1, 4}) {
        try {
            parallel_for(20, threads, [](std::size_t i) {
                if (i == 7 || i == 13) throw std::runtime_error("task " + std::to_string(i));
            });
            FAIL("expected an exception");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()) == "task 7");
        }
    }
}
