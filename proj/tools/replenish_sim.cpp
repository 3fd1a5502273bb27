// Command-line front end: simulate, compare, ablate, sweep, validate.

#include <chrono>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "replenish/report.hpp"
#include "replenish/scenario_io.hpp"

using namespace replenish;

namespace {

// Bad flag values surface as usage errors (exit 2), not runtime failures.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw UsageError("invalid seed '" + s + "' in --seeds " + text);
        return static_cast<std::uint64_t>(v);
    };
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (const auto dots = part.find(".."); dots != std::string::npos) {
            const auto lo = number(part.substr(0, dots));
            const auto hi = number(part.substr(dots + 2));
            if (hi < lo) throw UsageError("empty seed range " + part);
            for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
        } else {
            seeds.push_back(number(part));
        }
    }
    if (seeds.empty()) throw UsageError("--seeds selects no seeds");
    return seeds;
}

PolicyKind parse_policy(const std::string& name) {
    if (auto k = parse_policy_kind(name)) return *k;
    throw UsageError("unknown policy '" + name + "'; valid policies: " + policy_kind_names());
}

std::vector<double> parse_factors(const std::vector<std::string>& items) {
    std::vector<double> out;
    for (const auto& s : items) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw UsageError("invalid factor '" + s + "'");
        if (v < 0.5 || v > 1.5) throw UsageError("factor " + s + " outside [0.5, 1.5]");
        out.push_back(v);
    }
    return out;
}

void print_summary(const ComparisonReport& report) {
    for (const auto& v : report.variants) {
        std::string line = fmt::format("{:<22}", v.label);
        for (const auto& s : v.summary)
            if (s.metric == "stockout_rate" || s.metric == "holding_cost" || s.metric == "total_cost")
                line += fmt::format("  {}={:.4f}", s.metric, s.mean);
        std::cout << line << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inventory replenishment simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir;
    std::string policy_name;
    std::string policies_text = "static_rop,rule80,sQ,newsvendor,agentic,oracle";
    std::string seeds_text = "1..30";
    std::optional<std::uint64_t> seed;
    int threads = 0;
    bool no_negotiation = false;
    bool no_trend = false;
    bool no_supplier = false;
    std::vector<std::string> demand_factors{"0.8", "1.0", "1.2"};
    std::vector<std::string> lead_factors{"0.8", "1.0", "1.2"};

    auto* simulate = app.add_subcommand("simulate", "Run one episode and write metrics, time series, order log and summary");
    simulate->add_option("--scenario", scenario_path, "Scenario YAML file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--policy", policy_name, "Policy (defaults to the scenario's)");
    simulate->add_option("--seed", seed, "Seed (defaults to the scenario's master_seed)");
    simulate->add_option("--out", out_dir, "Output directory")->required();
    simulate->add_flag("--no-negotiation", no_negotiation, "Pay list prices");
    simulate->add_flag("--no-trend", no_trend, "Disable trend adoption");
    simulate->add_flag("--no-supplier-selection", no_supplier, "Always use the first-listed supplier");

    auto* compare = app.add_subcommand("compare", "Compare policies over common-random-number seeds");
    compare->add_option("--scenario", scenario_path, "Scenario YAML file")->required()->check(CLI::ExistingFile);
    compare->add_option("--policies", policies_text, "Comma-separated policies")->capture_default_str();
    compare->add_option("--seeds", seeds_text, "Seeds, e.g. 1..30 or 1,2,5")->capture_default_str();
    compare->add_option("--out", out_dir, "Output directory")->required();
    compare->add_option("--threads", threads, "Worker threads (default: REPLENISH_SIM_THREADS or all cores)");

    auto* ablate = app.add_subcommand("ablate", "Agentic policy with each sub-agent removed in turn");
    ablate->add_option("--scenario", scenario_path, "Scenario YAML file")->required()->check(CLI::ExistingFile);
    ablate->add_option("--seeds", seeds_text, "Seeds, e.g. 1..30")->capture_default_str();
    ablate->add_option("--out", out_dir, "Output directory")->required();
    ablate->add_option("--threads", threads, "Worker threads");

    auto* sweep = app.add_subcommand("sweep", "Demand and lead-time sensitivity grid for the agentic policy");
    sweep->add_option("--scenario", scenario_path, "Scenario YAML file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--demand-factors", demand_factors, "Demand scale factors")->delimiter(',')->capture_default_str();
    sweep->add_option("--lead-factors", lead_factors, "Lead-time scale factors")->delimiter(',')->capture_default_str();
    sweep->add_option("--seeds", seeds_text, "Seeds, e.g. 1..30")->capture_default_str();
    sweep->add_option("--out", out_dir, "Output directory")->required();
    sweep->add_option("--threads", threads, "Worker threads");

    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
    validate->add_option("--scenario", scenario_path, "Scenario YAML file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const auto t0 = std::chrono::steady_clock::now();
        auto elapsed = [&] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        };

        if (*validate) {
            const Scenario s = parse_scenario(scenario_path);
            std::cout << fmt::format("{}: ok (scenario {}, {} skus, {} offers, {} trend candidates, hash {:016x})\n",
                                     scenario_path, s.name, s.skus.size(), s.offers.size(), s.trend.candidates.size(),
                                     scenario_hash(s));
            return 0;
        }

        // Validate flag values before doing any work.
        std::vector<PolicyKind> policies;
        std::vector<std::uint64_t> seeds;
        std::optional<PolicyKind> policy;
        std::vector<double> dfs, lfs;
        if (*simulate && !policy_name.empty()) policy = parse_policy(policy_name);
        if (*compare) {
            std::stringstream ss(policies_text);
            for (std::string p; std::getline(ss, p, ',');) policies.push_back(parse_policy(p));
            if (policies.empty()) throw UsageError("--policies selects no policies");
        }
        if (*compare || *ablate || *sweep) seeds = parse_seeds(seeds_text);
        if (*sweep) {
            dfs = parse_factors(demand_factors);
            lfs = parse_factors(lead_factors);
        }

        const Scenario scenario = parse_scenario(scenario_path);
        const std::filesystem::path out(out_dir);

        if (*simulate) {
            RunOptions options;
            options.negotiation = !no_negotiation;
            options.trend = !no_trend;
            options.supplier_selection = !no_supplier;
            const auto report =
                run_episode(scenario, policy.value_or(scenario.policy.kind), seed.value_or(scenario.master_seed), options);
            write_run(out, report);
            std::cout << fmt::format("{} seed {} on {}: total_cost={} stockout_rate={:.4f} fill_rate={:.4f} ({:.2f}s)\n",
                                     to_string(report.policy), report.seed, report.scenario_name,
                                     report.metrics.total_cost.to_string(), report.metrics.stockout_rate,
                                     report.metrics.fill_rate, elapsed());
            return 0;
        }
        if (*compare) {
            const auto report = run_comparison(scenario, policies, seeds, {}, threads);
            write_file(out / "comparison.csv", [&](std::ostream& o) { write_comparison_csv(o, report); });
            write_file(out / "paired.csv", [&](std::ostream& o) { write_paired_csv(o, report); });
            print_summary(report);
            std::cout << fmt::format("{} runs in {:.2f}s\n", policies.size() * seeds.size(), elapsed());
            return 0;
        }
        if (*ablate) {
            const auto report = run_ablation(scenario, seeds, threads);
            write_file(out / "ablation.csv", [&](std::ostream& o) { write_comparison_csv(o, report); });
            write_file(out / "ablation_paired.csv", [&](std::ostream& o) { write_paired_csv(o, report); });
            print_summary(report);
            std::cout << fmt::format("{} runs in {:.2f}s\n", 4 * seeds.size(), elapsed());
            return 0;
        }
        if (*sweep) {
            const auto report = run_sensitivity(scenario, dfs, lfs, seeds, threads);
            write_file(out / "sensitivity.csv", [&](std::ostream& o) { write_sensitivity_csv(o, report); });
            for (const auto& c : report.cells)
                std::cout << fmt::format("demand x{:.2f} lead x{:.2f}: cost/unit={:.4f} ({:+.2f}%) total={:.2f} ({:+.2f}%)\n",
                                         c.demand_factor, c.lead_factor, c.cost_per_unit_demand,
                                         100.0 * c.relative_cost_per_unit, c.mean_total_cost,
                                         100.0 * c.relative_total_cost);
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const ScenarioError& e) {
        std::cerr << "scenario is invalid:\n";
        for (const auto& msg : e.errors()) std::cerr << "  " << msg << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
