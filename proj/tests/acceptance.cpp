// Acceptance suite: runs every verification testbed at its pinned tolerance
// and prints one pass/fail line per criterion.  Exit 0 iff everything holds.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "weakconv/verify.hpp"

namespace {

struct Criterion {
    std::string label;
    std::string suite;
    double budget_seconds;
};

const std::vector<Criterion> kCriteria = {
    {"space modulus vs closed form", "space-modulus", 5.0},
    {"parabola bound across exponents", "day-nordlander", 30.0},
    {"cavern moduli and dual bounds", "cavern", 60.0},
    {"sigma scaling and monotonicity", "sigma-laws", 30.0},
    {"condition roots and sqrt growth", "roots", 5.0},
    {"projection stability on the arc", "projection-stability", 60.0},
    {"midpoint-chain connectivity", "connectivity", 10.0},
    {"retraction fixes and idempotence", "retraction", 10.0},
    {"intersection stability and transfer", "intersection-stability", 120.0},
    {"selection and splitting", "selection-splitting", 60.0},
    {"smooth closed curves", "surfaces", 60.0},
};

}  // namespace

int main() {
    bool all_pass = true;
    double total_seconds = 0.0;

    int index = 1;
    for (const auto& criterion : kCriteria) {
        auto result = weakconv::run_verification_suite(criterion.suite, 42);
        const bool in_budget = result.seconds < criterion.budget_seconds;
        const bool ok = result.pass && in_budget;
        all_pass = all_pass && ok;
        total_seconds += result.seconds;
        std::printf("criterion %2d %-38s %-4s  margin % .3e  %6.2fs/%.0fs%s\n", index++,
                    criterion.label.c_str(), ok ? "pass" : "FAIL", result.worst_margin,
                    result.seconds, criterion.budget_seconds,
                    in_budget ? "" : "  (over budget)");
        if (!result.pass) std::printf("              %s\n", result.summary.c_str());
    }

    // determinism: identical seeds give byte-identical artifacts, a different
    // seed gives the same verdicts, and the double run stays within twice the
    // single-run time
    using Clock = std::chrono::steady_clock;
    auto t0 = Clock::now();
    auto run_a = weakconv::run_all_verifications(42);
    const double t_single = std::chrono::duration<double>(Clock::now() - t0).count();
    t0 = Clock::now();
    auto run_b = weakconv::run_all_verifications(42);
    const double t_second = std::chrono::duration<double>(Clock::now() - t0).count();
    auto run_c = weakconv::run_all_verifications(43);

    const bool bytes_equal =
        weakconv::artifact_digest(run_a) == weakconv::artifact_digest(run_b);
    bool verdicts_equal = run_a.size() == run_c.size();
    for (std::size_t i = 0; verdicts_equal && i < run_a.size(); ++i)
        verdicts_equal = run_a[i].pass == run_c[i].pass;
    const bool in_budget = t_second <= 2.0 * t_single + 5.0;
    const bool determinism = bytes_equal && verdicts_equal && in_budget;
    all_pass = all_pass && determinism;
    std::printf("criterion 12 %-38s %-4s  bytes=%d verdicts=%d  %6.2fs\n",
                "seeded determinism", determinism ? "pass" : "FAIL", bytes_equal ? 1 : 0,
                verdicts_equal ? 1 : 0, t_single + t_second);

    std::printf("%s (%.1fs across criteria)\n", all_pass ? "ALL CRITERIA PASS" : "FAILURES",
                total_seconds);
    return all_pass ? 0 : 1;
}
