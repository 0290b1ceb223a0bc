// kldesign: generate, optimize, evaluate and compare space-filling designs.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or validation error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kldesign/criteria.hpp"
#include "kldesign/design.hpp"
#include "kldesign/generators.hpp"
#include "kldesign/optimizer.hpp"
#include "kldesign/parallel.hpp"
#include "kldesign/study.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct GenerateArgs {
    std::string family = "random";
    std::size_t n = 20;
    std::size_t d = 2;
    std::uint64_t seed = 0;
    std::string out;
};

struct OptimizeArgs {
    std::string objective = "nn";
    std::size_t n = 20;
    std::size_t d = 2;
    std::uint64_t seed = 0;
    std::size_t restarts = 5;
    long long max_iter = -1;  // -1: 500 n
    long long stall = -1;     // -1: 50 n
    std::string out;
    std::string trace;
};

struct EvalArgs {
    std::string in;
    std::string json;
};

struct CompareArgs {
    std::string spec;
    std::string out;
};

void write_design(const std::string& path, const kld::Design& design) {
    if (path.empty() || path == "-") {
        kld::write_design_csv(std::cout, design);
    } else {
        kld::write_design_csv_file(path, design);
    }
}

int run_generate(const GenerateArgs& args) {
    const auto family = kld::parse_family(args.family);
    if (!family) throw kld::ValidationError("unknown family '" + args.family + "'");
    write_design(args.out, kld::generate({*family, args.n, args.d, args.seed}));
    return 0;
}

int run_optimize(const OptimizeArgs& args, std::size_t threads) {
    const auto kind = kld::parse_objective(args.objective);
    if (!kind) throw kld::ValidationError("unknown objective '" + args.objective + "'");
    kld::GeneratorSpec initials{kld::Family::RANDOM, args.n, args.d, 0};
    initials.validate();

    auto config = kld::ExchangeConfig::defaults_for(args.n, args.seed);
    config.restarts = args.restarts;
    if (args.max_iter >= 0) config.max_iterations = static_cast<std::size_t>(args.max_iter);
    if (args.stall >= 0) config.stall_limit = static_cast<std::size_t>(args.stall);
    config.validate();

    const auto result = kld::best_of_restarts(initials, kld::Objective::make(*kind, args.n, args.d), config, threads);
    write_design(args.out, result.design);
    if (!args.trace.empty()) kld::write_trace_csv_file(args.trace, result.objective_trace);
    std::cerr << "objective " << kld::to_string(*kind) << " = " << kld::format_double(result.objective())
              << " (restart " << result.restart_index << ", " << result.accepted_count << "/"
              << result.proposed_count << " accepted)\n";
    return 0;
}

int run_eval(const EvalArgs& args) {
    std::ifstream in(args.in);
    if (!in) throw kld::ValidationError("cannot open '" + args.in + "' for reading");
    const auto design = kld::read_design_csv(in);
    const nlohmann::json report = kld::evaluate(design);
    if (args.json.empty() || args.json == "-") {
        std::cout << report.dump(2) << '\n';
    } else {
        std::ofstream out(args.json, std::ios::binary);
        if (!out) throw kld::Error("cannot open '" + args.json + "' for writing");
        out << report.dump(2) << '\n';
        if (!out) throw kld::Error("write to '" + args.json + "' failed");
    }
    return 0;
}

int run_compare(const CompareArgs& args, std::size_t threads) {
    const auto spec = kld::read_study_spec_file(args.spec);
    const auto report = kld::run_study(spec, threads);
    kld::emit_report(report, args.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Space-filling designs by entropy maximization"};
    app.require_subcommand(1);
    std::size_t threads = kld::default_thread_count();
    app.add_option("--threads", threads, "Worker threads for restarts and study replicates")
        ->check(CLI::PositiveNumber);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a baseline design");
    generate->add_option("--family", gen.family, "random, lhs, halton, hammersley or sobol")->capture_default_str();
    generate->add_option("--n", gen.n, "Number of points")->capture_default_str();
    generate->add_option("--d", gen.d, "Dimension")->capture_default_str();
    generate->add_option("--seed", gen.seed, "Seed (random and lhs)")->capture_default_str();
    generate->add_option("--out", gen.out, "Output CSV (stdout if omitted)");

    OptimizeArgs opt;
    auto* optimize = app.add_subcommand("optimize", "Run the exchange algorithm");
    optimize->add_option("--objective", opt.objective, "mc, nn or maximin")->capture_default_str();
    optimize->add_option("--n", opt.n, "Number of points")->capture_default_str();
    optimize->add_option("--d", opt.d, "Dimension")->capture_default_str();
    optimize->add_option("--seed", opt.seed, "Seed")->capture_default_str();
    optimize->add_option("--restarts", opt.restarts, "Independent random initializations")->capture_default_str();
    optimize->add_option("--max-iter", opt.max_iter, "Proposal budget per restart (default 500 n)")
        ->check(CLI::Range(0LL, static_cast<long long>(1) << 62));
    optimize->add_option("--stall", opt.stall, "Consecutive rejections before stopping (default 50 n)")
        ->check(CLI::Range(1LL, static_cast<long long>(1) << 62));
    optimize->add_option("--out", opt.out, "Output design CSV (stdout if omitted)");
    optimize->add_option("--trace", opt.trace, "Convergence trace CSV of the selected restart");

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Compute uniformity criteria of a design CSV");
    eval->add_option("--in", ev.in, "Design CSV")->required();
    eval->add_option("--json", ev.json, "Output JSON (stdout if omitted)");

    CompareArgs cmp;
    auto* compare = app.add_subcommand("compare", "Run a comparison study");
    compare->add_option("--spec", cmp.spec, "Study spec JSON")->required();
    compare->add_option("--out", cmp.out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*generate) return run_generate(gen);
        if (*optimize) return run_optimize(opt, threads);
        if (*eval) return run_eval(ev);
        if (*compare) return run_compare(cmp, threads);
    } catch (const kld::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
