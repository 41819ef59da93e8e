// Acceptance driver: runs the CLI for one criterion and prints a PASS/FAIL line.

#include "logsum/harness/generators.hpp"
#include "logsum/loewner_ineq.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Context {
    std::string cli;
    fs::path workdir;
};

struct Run {
    int exit_code = -1;
    json report;
    std::string raw;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Run run_cli(const Context& ctx, const std::string& args, const std::string& tag) {
    const auto report = ctx.workdir / ("acceptance_" + tag + ".json");
    fs::remove(report);
    const std::string cmd = "\"" + ctx.cli + "\" " + args + " --report \"" + report.string() + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    Run r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (fs::exists(report)) {
        r.raw = slurp(report);
        try {
            r.report = json::parse(r.raw);
        } catch (const json::parse_error&) {
        }
    }
    return r;
}

struct Check {
    bool ok = true;
    std::vector<std::string> notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
};

std::string describe(const std::string& suite, const Run& r) {
    std::ostringstream os;
    os << suite << ": exit " << r.exit_code;
    if (r.report.is_object())
        os << ", violations " << r.report.value("violations", -1) << ", oracle_mismatches "
           << r.report.value("oracle_mismatches", -1) << ", worst_gap " << r.report.value("worst_gap", 0.0);
    else
        os << ", no report";
    return os.str();
}

/// check suite run that must come back clean; --dim and --m are maxima.
void clean_suite(Check& c, const Context& ctx, const std::string& suite, const std::string& extra) {
    const auto r = run_cli(ctx, "check --suite " + suite + " " + extra, suite);
    const bool clean = r.exit_code == 0 && r.report.is_object() && r.report.value("violations", -1) == 0 &&
                       r.report.value("oracle_mismatches", -1) == 0;
    c.notes.push_back(describe(suite, r));
    if (!clean)
        c.ok = false;
}

Check criterion_1(const Context& ctx) {
    Check c;
    clean_suite(c, ctx, "scalar_log_sum", "--trials 10000 --seed 1 --dim 16");
    clean_suite(c, ctx, "scalar_log_sum_equality", "--trials 1000 --seed 2 --dim 16");
    return c;
}

Check criterion_2(const Context& ctx) {
    Check c;
    clean_suite(c, ctx, "q_log_identities", "--trials 10000 --seed 3 --tol 1e-12");
    return c;
}

Check criterion_3(const Context& ctx) {
    Check c;
    clean_suite(c, ctx, "q_direction", "--trials 2000 --seed 4 --dim 8");
    clean_suite(c, ctx, "q_log_sum", "--trials 2000 --seed 4 --dim 8");
    return c;
}

Check criterion_4(const Context& ctx) {
    Check c;
    for (const char* s : {"trace_log_sum", "q_trace", "reverse_trace", "exp_log_trace"})
        clean_suite(c, ctx, s, "--trials 2000 --seed 5 --dim 8");
    return c;
}

Check criterion_5(const Context& ctx) {
    Check c;
    for (const char* s : {"quantum_relative_entropy", "von_neumann_entropy"})
        clean_suite(c, ctx, s, "--trials 2000 --seed 6 --dim 8");
    return c;
}

Check criterion_6(const Context& ctx) {
    Check c;
    clean_suite(c, ctx, "hansen_jensen", "--trials 2000 --seed 7 --dim 6 --tol 1e-8");
    clean_suite(c, ctx, "hansen_jensen_convex", "--trials 2000 --seed 7 --dim 6 --tol 1e-8");
    return c;
}

Check criterion_7(const Context& ctx) {
    Check c;
    clean_suite(c, ctx, "perspective_sum", "--trials 500 --seed 8 --dim 6 --m 4");
    // m = 1 is an identity; the residual must vanish.
    logsum::harness::Rng rng(8);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const auto fam = logsum::harness::random_expansive_families(rng, 1, rng.integer(1, 6));
        const auto r = logsum::perspective_sum_residual(logsum::OperatorFunctionSpec::power(0.5), fam.A, fam.B);
        worst = std::max(worst, r.verdict.residual_norm);
    }
    c.require(worst <= 1e-10, "m = 1 residual " + std::to_string(worst) + " exceeds 1e-10");
    c.notes.push_back("m = 1 max residual " + std::to_string(worst));
    return c;
}

Check criterion_8(const Context& ctx) {
    Check c;
    clean_suite(c, ctx, "operator_shannon", "--trials 500 --seed 9 --dim 6 --m 4");
    return c;
}

Check criterion_9(const Context& ctx) {
    Check c;
    for (const char* s : {"quadratic_inverse_sum", "inverse_mean", "sandwiched_inverse_mean", "nested_inverse_mean"})
        clean_suite(c, ctx, s, "--trials 1000 --seed 10 --dim 4 --m 4");

    // 1 x 1 instances against the scalar forms.
    using namespace logsum;
    const auto f = OperatorFunctionSpec::power(0.5);
    const auto sqrt_fn = [](double t) { return std::sqrt(t); };
    harness::Rng rng(10);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const auto m = static_cast<std::size_t>(rng.integer(1, 4));
        std::vector<double> a = harness::uniform_values(rng, m, 0.1, 10.0);
        std::vector<double> b = harness::uniform_values(rng, m, 0.1, 10.0);
        std::vector<HermitianMatrix> am, bm;
        for (std::size_t i = 0; i < m; ++i) {
            am.push_back(HermitianMatrix::diagonal({a[i]}));
            bm.push_back(HermitianMatrix::diagonal({b[i]}));
        }
        const MatrixFamily A(am), B(bm);
        const auto [l1, r1] = scalar_forms::inverse_mean(sqrt_fn, a, b);
        const auto v1 = inverse_mean_residual(f, A, B);
        worst = std::max(worst, std::abs(v1.residual_min_eigenvalue - (r1 - l1)) / std::max({1.0, l1, r1}));
        const auto [l2, r2] = scalar_forms::sandwiched_inverse_mean(sqrt_fn, a, b);
        const auto v2 = sandwiched_inverse_mean_residual(f, A, B);
        worst = std::max(worst, std::abs(v2.residual_min_eigenvalue - (r2 - l2)) / std::max({1.0, l2, r2}));
    }
    c.require(worst <= 1e-12, "1x1 reduction mismatch " + std::to_string(worst));
    c.notes.push_back("1x1 reduction max relative mismatch " + std::to_string(worst));

    // fixed m = 4 instance: a = (100, 1, 1, 1), b = 1
    std::vector<HermitianMatrix> am, bm;
    for (double x : {100.0, 1.0, 1.0, 1.0}) {
        am.push_back(HermitianMatrix::diagonal({x}));
        bm.push_back(HermitianMatrix::diagonal({1.0}));
    }
    const auto fixed = sandwiched_inverse_mean_residual(f, MatrixFamily(am), MatrixFamily(bm));
    c.require(fixed.holds, "sandwiched form fails on a = (100, 1, 1, 1), b = 1: residual " +
                               std::to_string(fixed.residual_min_eigenvalue));
    return c;
}

Check criterion_10(const Context& ctx) {
    Check c;
    const std::string args = "check --suite perspective_sum --trials 200 --seed 11 --dim 4 --m 3";
    auto first = run_cli(ctx, args, "determinism_a");
    auto second = run_cli(ctx, args, "determinism_b");
    c.require(first.report.is_object() && second.report.is_object(), "missing report");
    if (!c.ok)
        return c;
    first.report.erase("wall_time");
    second.report.erase("wall_time");
    c.require(first.report.dump() == second.report.dump(), "reports differ beyond wall_time");
    const auto third = run_cli(ctx, "check --suite perspective_sum --trials 200 --seed 12 --dim 4 --m 3", "determinism_c");
    auto third_report = third.report;
    if (third_report.is_object())
        third_report.erase("wall_time");
    c.require(third_report.is_object() && third_report.at("worst_case_seed") != first.report.at("worst_case_seed"),
              "a different seed gave the same worst case");
    c.notes.push_back("two runs identical after dropping wall_time");
    return c;
}

Check criterion_11(const Context& ctx) {
    Check c;
    const auto r = run_cli(ctx, "search --mode contractive --trials 100000 --seed 13 --dim 3 --m 2", "search");
    c.require(r.exit_code == 0, "search exit code " + std::to_string(r.exit_code));
    c.require(r.report.is_object(), "search report is not valid JSON");
    if (!r.report.is_object())
        return c;
    for (const char* key : {"suite", "config", "trials", "violations", "worst_gap", "worst_case_seed", "findings",
                            "wall_time"})
        c.require(r.report.contains(key), std::string("report lacks ") + key);
    c.require(r.report.value("trials", 0) == 100000, "trial count");
    c.require(r.report.contains("findings") && r.report.at("findings").is_array(), "findings is not an array");
    std::ostringstream os;
    os << "search: " << r.report.value("violations", -1) << " confirmed candidates, worst margin "
       << r.report.value("worst_gap", 0.0) << ", wall_time " << r.report.value("wall_time", 0.0) << " s";
    c.notes.push_back(os.str());
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria driver"};
    int criterion = 0;
    Context ctx;
    std::string workdir = ".";
    app.add_option("--criterion", criterion, "criterion number")->required()->check(CLI::Range(1, 11));
    app.add_option("--cli", ctx.cli, "path to the CLI binary")->required();
    app.add_option("--workdir", workdir, "directory for report files");
    CLI11_PARSE(app, argc, argv);
    ctx.workdir = workdir;

    using Fn = Check (*)(const Context&);
    static const Fn table[] = {criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5, criterion_6,
                               criterion_7, criterion_8, criterion_9, criterion_10, criterion_11};
    Check c;
    try {
        c = table[criterion - 1](ctx);
    } catch (const std::exception& e) {
        c.ok = false;
        c.notes.push_back(std::string("exception: ") + e.what());
    }
    for (const auto& n : c.notes)
        std::cout << "  " << n << "\n";
    std::cout << "criterion " << criterion << ": " << (c.ok ? "PASS" : "FAIL") << "\n";
    return c.ok ? 0 : 1;
}
