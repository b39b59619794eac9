#include <CLI11.hpp>
#include <cstdio>
#include <exception>

#include "weakconv/scene.hpp"
#include "weakconv/verify.hpp"

namespace {

// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.
constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

int cmd_run(const std::string& config, const weakconv::ExperimentOverrides& overrides) {
    try {
        auto rep = weakconv::run_experiment_file(config, overrides);
        std::printf("%s: %zu rows, %s\n", rep.name.c_str(), rep.rows.size(),
                    rep.pass ? "pass" : "FAIL");
        if (overrides.output.empty()) std::fputs(rep.to_csv().c_str(), stdout);
        return rep.pass ? kExitPass : kExitCheckFailed;
    } catch (const weakconv::SceneError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCheckFailed;
    }
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& out) {
    try {
        std::vector<weakconv::CheckResult> results;
        if (suite == "all") {
            results = weakconv::run_all_verifications(seed, out);
        } else {
            results.push_back(weakconv::run_verification_suite(suite, seed));
            if (!out.empty()) {
                for (const auto& res : results)
                    for (const auto& [aname, rep] : res.artifacts)
                        weakconv::write_file(out + "/" + res.suite + "__" + aname + ".csv",
                                             rep.to_csv());
            }
        }
        bool all_pass = true;
        for (const auto& res : results) {
            std::printf("%-24s %-4s  margin % .3e  (%.2fs)  %s\n", res.suite.c_str(),
                        res.pass ? "pass" : "FAIL", res.worst_margin, res.seconds,
                        res.summary.c_str());
            all_pass = all_pass && res.pass;
        }
        return all_pass ? kExitPass : kExitCheckFailed;
    } catch (const weakconv::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCheckFailed;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weakconv: numerical toolkit for weakly convex sets in p-norm spaces"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::uint64_t seed = 42;
    std::string out;
    double tol = 0.0;
    int density = 0;
    int threads = 1;
    app.add_option("--seed", seed, "RNG seed (default 42)");
    app.add_option("--out", out, "output path (file for run, directory for verify)");
    app.add_option("--tol", tol, "tolerance override where applicable");
    app.add_option("--density", density, "sampling density override where applicable");
    app.add_option("--threads", threads,
                   "worker threads; results are independent of this value");

    auto* run = app.add_subcommand("run", "run a configured experiment, emit CSV");
    std::string config;
    run->add_option("config", config, "experiment config JSON")->required();

    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::string suite = "all";
    verify->add_option("suite", suite, "suite name or \"all\"");

    auto* list = app.add_subcommand("list-ops", "list operations and suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    if (run->parsed()) {
        weakconv::ExperimentOverrides overrides;
        if (app.count("--seed")) overrides.seed = seed;
        if (app.count("--tol")) overrides.tol = tol;
        if (app.count("--density")) overrides.density = density;
        overrides.output = out;
        return cmd_run(config, overrides);
    }
    if (verify->parsed()) return cmd_verify(suite, seed, out);
    if (list->parsed()) {
        std::puts("operations (run):");
        for (const auto& name : weakconv::experiment_operation_names())
            std::printf("  %s\n", name.c_str());
        std::puts("suites (verify):");
        for (const auto& name : weakconv::verification_suite_names())
            std::printf("  %s\n", name.c_str());
        return kExitPass;
    }
    return kExitUsage;
}
