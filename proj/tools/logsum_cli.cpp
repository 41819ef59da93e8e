// logsum command line: check, search, eval, suites.
// Exit codes: 0 no violations, 1 violations, 2 usage or configuration error,
// 3 numeric failure.

#include "logsum/logsum.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violations = 1;
constexpr int exit_usage = 2;
constexpr int exit_numeric = 3;

void write_report(const logsum::harness::SuiteReport& rep, const std::string& path) {
    const auto text = rep.dump();
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw logsum::precondition_error("cannot write report to " + path);
    out << text;
    if (!out)
        throw logsum::precondition_error("failed writing report to " + path);
}

void summarize(const logsum::harness::SuiteReport& rep) {
    std::cerr << rep.suite << ": trials " << rep.trials_run << ", violations " << rep.violations << ", worst_gap "
              << rep.worst_gap << " (trial seed " << rep.worst_case_seed << ")";
    if (rep.generation_failures)
        std::cerr << ", regenerated " << rep.generation_failures;
    std::cerr << "\n";
}

struct Options {
    logsum::harness::TrialConfig cfg;
    std::string report;
    std::optional<std::uint64_t> replay;
    std::vector<double> spectrum;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--trials", o.cfg.trials, "number of trials")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.cfg.seed, "64-bit run seed");
    cmd->add_option("--dim", o.cfg.dim, "matrix dimension / sequence length (maximum unless --exact-sizes)")
        ->check(CLI::Range(1, 64));
    cmd->add_option("--m", o.cfg.family_size, "family size (maximum unless --exact-sizes)")->check(CLI::Range(1, 16));
    cmd->add_option("--tol", o.cfg.tolerance, "relative tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--report", o.report, "report path (stdout when omitted)");
    cmd->add_option("--replay", o.replay, "re-run only the trial with this per-trial seed");
    cmd->add_option("--spectrum", o.spectrum, "eigenvalue range lo hi for generated matrices")->expected(2);
}

void apply_spectrum(Options& o) {
    if (o.spectrum.size() == 2) {
        o.cfg.generator.spectrum_lo = o.spectrum[0];
        o.cfg.generator.spectrum_hi = o.spectrum[1];
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Generalized log-sum inequality checker"};
    app.require_subcommand(1);

    Options check_opts;
    auto* check = app.add_subcommand("check", "run a registered property suite");
    check->add_option("--suite", check_opts.cfg.suite, "suite name")->required();
    add_common(check, check_opts);
    check->add_flag("--exact-sizes", check_opts.cfg.exact_sizes, "use dim and m exactly in every trial");

    Options search_opts;
    search_opts.cfg.dim = 3;
    search_opts.cfg.family_size = 2;
    search_opts.cfg.exact_sizes = true;
    std::string mode;
    std::string function = "power(0.5)";
    bool commuting = false;
    bool draw_sizes = false;
    auto* search = app.add_subcommand("search", "counterexample search on contractive families");
    search->add_option("--mode", mode, "search mode")->required()->check(CLI::IsMember({"contractive"}));
    search->add_option("--function", function, "operator concave f, e.g. power(0.5), log, shifted_log(1)");
    search->add_flag("--commuting", commuting, "draw every family from one shared eigenbasis");
    search->add_flag("--draw-sizes", draw_sizes, "treat dim and m as maxima");
    add_common(search, search_opts);

    std::string op;
    std::string input;
    auto* eval = app.add_subcommand("eval", "evaluate one operation on a JSON input document");
    eval->add_option("--op", op, "operation name")->required();
    eval->add_option("--input", input, "input document path")->required();

    auto* suites = app.add_subcommand("suites", "list registered suites and eval operations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (*suites) {
        for (const auto& s : logsum::harness::suite_registry()) {
            std::cout << s.name;
            for (const auto& a : s.aliases)
                std::cout << " (" << a << ")";
            std::cout << "  " << s.summary << "\n";
        }
        std::cout << "\neval operations:\n";
        for (const auto& name : logsum::harness::eval_operations())
            std::cout << "  " << name << "\n";
        return exit_ok;
    }

    if (*check) {
        apply_spectrum(check_opts);
        const auto rep = check_opts.replay ? logsum::harness::replay_trial(check_opts.cfg, *check_opts.replay)
                                           : logsum::harness::run_suite(check_opts.cfg);
        write_report(rep, check_opts.report);
        summarize(rep);
        return rep.violations == 0 ? exit_ok : exit_violations;
    }

    if (*search) {
        apply_spectrum(search_opts);
        search_opts.cfg.exact_sizes = !draw_sizes;
        if (commuting)
            search_opts.cfg.generator.structure = logsum::harness::GeneratorStructure::commuting;
        const auto f = logsum::harness::parse_operator_function(function);
        const auto rep = search_opts.replay
                             ? logsum::harness::replay_search_trial(search_opts.cfg, f, *search_opts.replay)
                             : logsum::harness::counterexample_search(search_opts.cfg, f);
        write_report(rep, search_opts.report);
        summarize(rep);
        // Findings are exploratory and do not signal failure.
        return exit_ok;
    }

    const auto doc = logsum::io::load_document(input);
    const auto res = logsum::harness::evaluate(op, doc);
    std::cout << res.text;
    return res.holds.value_or(true) ? exit_ok : exit_violations;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const logsum::convergence_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return exit_numeric;
    } catch (const logsum::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return exit_numeric;
    }
}
