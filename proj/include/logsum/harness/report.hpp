#pragma once

#include "logsum/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace logsum::harness {

enum class GeneratorKind { unconstrained, expansive, contractive };
enum class GeneratorStructure { general, commuting };

inline const char* to_string(GeneratorKind k) {
    switch (k) {
    case GeneratorKind::expansive:
        return "expansive";
    case GeneratorKind::contractive:
        return "contractive";
    default:
        return "unconstrained";
    }
}

inline const char* to_string(GeneratorStructure s) { return s == GeneratorStructure::commuting ? "commuting" : "general"; }

struct GeneratorSpec {
    double spectrum_lo = 0.1;
    double spectrum_hi = 10.0;
    GeneratorKind kind = GeneratorKind::unconstrained;
    GeneratorStructure structure = GeneratorStructure::general;
};

struct TrialConfig {
    std::string suite;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    int dim = 4;          ///< largest matrix dimension (or sequence length) drawn
    int family_size = 2;  ///< largest family size m drawn
    double tolerance = 1e-9;
    GeneratorSpec generator;
    /// When set, every trial uses exactly dim and family_size instead of drawing up to them.
    bool exact_sizes = false;

    void validate() const {
        if (trials < 1)
            throw precondition_error("trials must be positive");
        if (dim < 1 || dim > 64)
            throw precondition_error("dim must lie in [1, 64]");
        if (family_size < 1 || family_size > 16)
            throw precondition_error("m must lie in [1, 16]");
        if (!(tolerance > 0.0) || !std::isfinite(tolerance))
            throw precondition_error("tolerance must be positive and finite");
        if (!(generator.spectrum_lo > 0.0) || !(generator.spectrum_hi > generator.spectrum_lo) ||
            !std::isfinite(generator.spectrum_hi))
            throw precondition_error("spectrum range must satisfy 0 < lo < hi < inf");
    }
};

struct Finding {
    std::uint64_t trial_index = 0;
    std::uint64_t trial_seed = 0;
    double margin = 0.0;
    std::map<std::string, double> values;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::string mode = "check";
    TrialConfig config;
    std::uint64_t trials_run = 0;
    std::uint64_t violations = 0;
    std::uint64_t generation_failures = 0;
    std::uint64_t oracle_mismatches = 0;
    double worst_gap = std::numeric_limits<double>::infinity();
    std::uint64_t worst_case_seed = 0;
    std::uint64_t worst_case_index = 0;
    /// Max-reduced diagnostics and summed counters.
    std::map<std::string, double> maxima;
    std::map<std::string, std::uint64_t> counters;
    std::vector<Finding> findings;
    std::uint64_t findings_dropped = 0;
    double wall_time = 0.0;

    [[nodiscard]] nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json cfg = {
            {"suite", config.suite},
            {"trials", config.trials},
            {"seed", config.seed},
            {"dim", config.dim},
            {"m", config.family_size},
            {"tol", config.tolerance},
            {"exact_sizes", config.exact_sizes},
            {"generator",
             {{"spectrum_range", {config.generator.spectrum_lo, config.generator.spectrum_hi}},
              {"kind", to_string(config.generator.kind)},
              {"structure", to_string(config.generator.structure)}}},
        };
        nlohmann::ordered_json found = nlohmann::ordered_json::array();
        for (const auto& f : findings) {
            nlohmann::ordered_json item = {{"trial_index", f.trial_index}, {"trial_seed", f.trial_seed}, {"margin", f.margin}};
            for (const auto& [k, v] : f.values)
                item[k] = v;
            if (!f.note.empty())
                item["note"] = f.note;
            found.push_back(std::move(item));
        }
        nlohmann::ordered_json diag = nlohmann::ordered_json::object();
        for (const auto& [k, v] : maxima)
            diag[k] = v;
        for (const auto& [k, v] : counters)
            diag[k] = v;
        nlohmann::ordered_json out = {
            {"suite", suite},
            {"mode", mode},
            {"config", std::move(cfg)},
            {"trials", trials_run},
            {"violations", violations},
            {"worst_gap", trials_run ? worst_gap : 0.0},
            {"worst_case_seed", worst_case_seed},
            {"worst_case_index", worst_case_index},
            {"generation_failures", generation_failures},
            {"oracle_mismatches", oracle_mismatches},
            {"diagnostics", std::move(diag)},
            {"findings", std::move(found)},
            {"findings_dropped", findings_dropped},
            {"wall_time", wall_time},
        };
        return out;
    }

    [[nodiscard]] std::string dump() const { return to_json().dump(2) + "\n"; }
};

} // namespace logsum::harness
