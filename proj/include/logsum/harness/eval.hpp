#pragma once

// One-shot evaluation of a single operation on a JSON input document.
// Matrices inside the document use the exchange format of matrix_io.hpp.

#include "logsum/deformed_log.hpp"
#include "logsum/function_spec.hpp"
#include "logsum/loewner_ineq.hpp"
#include "logsum/matfun.hpp"
#include "logsum/matrix_io.hpp"
#include "logsum/operator_function.hpp"
#include "logsum/scalar_ineq.hpp"
#include "logsum/trace_ineq.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace logsum::harness {

struct EvalResult {
    std::string text;                 ///< JSON document written to stdout
    std::optional<bool> holds;        ///< set for inequality operations
};

namespace detail {

struct ParsedName {
    std::string base;
    std::optional<double> arg;
    double offset = 0.0;
};

inline double parse_number(const std::string& s, const std::string& whole) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty())
        throw precondition_error("cannot parse number '" + s + "' in '" + whole + "'");
    return v;
}

/// name, name(arg), name+offset, name(arg)-offset
inline ParsedName parse_name(const std::string& text) {
    static const std::regex pattern(R"(^\s*([a-z_]+)\s*(?:\(\s*([^)]*?)\s*\))?\s*([+-]\s*[0-9.eE+-]+)?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern))
        throw precondition_error("cannot parse function '" + text + "'");
    ParsedName out{m[1].str(), std::nullopt, 0.0};
    if (m[2].matched)
        out.arg = parse_number(m[2].str(), text);
    if (m[3].matched) {
        std::string off = m[3].str();
        off.erase(std::remove(off.begin(), off.end(), ' '), off.end());
        out.offset = parse_number(off, text);
    }
    return out;
}

inline double need_arg(const ParsedName& p, const std::string& text) {
    if (!p.arg)
        throw precondition_error("function '" + text + "' needs a parameter");
    return *p.arg;
}

} // namespace detail

/// log, identity, exp, rational, q_log(q), power(r)
inline FunctionSpec parse_function(const std::string& text) {
    const auto p = detail::parse_name(text);
    if (p.offset != 0.0)
        throw precondition_error("scalar function '" + text + "' does not take an offset");
    if (p.base == "log")
        return FunctionSpec::log();
    if (p.base == "identity")
        return FunctionSpec::identity();
    if (p.base == "exp")
        return FunctionSpec::exp();
    if (p.base == "rational")
        return FunctionSpec::rational();
    if (p.base == "q_log")
        return FunctionSpec::q_log(detail::need_arg(p, text));
    if (p.base == "power")
        return FunctionSpec::power(detail::need_arg(p, text));
    throw precondition_error("unknown function '" + text + "'");
}

/// power(r), log, shifted_log(c), each optionally followed by +c or -c.
inline OperatorFunctionSpec parse_operator_function(const std::string& text) {
    const auto p = detail::parse_name(text);
    if (p.base == "power")
        return OperatorFunctionSpec::power(detail::need_arg(p, text), p.offset);
    if (p.base == "log")
        return OperatorFunctionSpec::log(p.offset);
    if (p.base == "shifted_log")
        return OperatorFunctionSpec::shifted_log(detail::need_arg(p, text), p.offset);
    throw precondition_error("unknown operator function '" + text + "'");
}

namespace detail {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

inline const json& field(const json& doc, const char* key) {
    if (!doc.contains(key))
        throw precondition_error(std::string("input is missing field '") + key + "'");
    return doc.at(key);
}

inline double number(const json& doc, const char* key) {
    const auto& v = field(doc, key);
    if (!v.is_number())
        throw precondition_error(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

inline double number_or(const json& doc, const char* key, double fallback) {
    return doc.contains(key) ? number(doc, key) : fallback;
}

inline std::string text(const json& doc, const char* key) {
    const auto& v = field(doc, key);
    if (!v.is_string())
        throw precondition_error(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

inline std::vector<double> numbers(const json& doc, const char* key) {
    const auto& v = field(doc, key);
    if (!v.is_array())
        throw precondition_error(std::string("field '") + key + "' must be an array");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number())
            throw precondition_error(std::string("field '") + key + "' must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

inline Matrix raw_matrix(const json& doc, const char* key) { return io::read_matrix(field(doc, key)); }
inline HermitianMatrix hermitian(const json& doc, const char* key) { return HermitianMatrix(raw_matrix(doc, key)); }

inline std::vector<Matrix> raw_family(const json& doc, const char* key) {
    const auto& v = field(doc, key);
    if (!v.is_array() || v.empty())
        throw precondition_error(std::string("field '") + key + "' must be a non-empty array of matrices");
    std::vector<Matrix> out;
    for (const auto& x : v)
        out.push_back(io::read_matrix(x));
    return out;
}

inline MatrixFamily family(const json& doc, const char* key) {
    std::vector<HermitianMatrix> members;
    for (auto& m : raw_family(doc, key))
        members.emplace_back(m);
    return MatrixFamily(std::move(members));
}

inline double tol(const json& doc) { return number_or(doc, "tol", default_tolerance); }

inline SequencePair pair(const json& doc) { return SequencePair(numbers(doc, "a"), numbers(doc, "b")); }

inline EvalResult emit(const std::string& op, ojson body, std::optional<bool> holds = std::nullopt) {
    ojson out = {{"op", op}};
    for (auto it = body.begin(); it != body.end(); ++it)
        out[it.key()] = it.value();
    return {out.dump(2) + "\n", holds};
}

inline ojson to_json(const InequalityVerdict& v) {
    return {{"lhs", v.lhs}, {"rhs", v.rhs}, {"gap", v.gap}, {"tolerance", v.tolerance}, {"holds", v.holds}};
}

inline ojson to_json(const LoewnerVerdict& v) {
    return {{"residual_min_eigenvalue", v.residual_min_eigenvalue},
            {"residual_norm", v.residual_norm},
            {"scale", v.scale},
            {"tolerance", v.tolerance},
            {"holds", v.holds}};
}

inline EvalResult emit_verdict(const std::string& op, const InequalityVerdict& v) { return emit(op, to_json(v), v.holds); }
inline EvalResult emit_verdict(const std::string& op, const LoewnerVerdict& v) { return emit(op, to_json(v), v.holds); }

inline EvalResult emit_trace(const std::string& op, const TraceVerdict& tv) {
    auto body = to_json(tv.verdict);
    if (tv.matrix_path)
        body["matrix_path"] = to_json(*tv.matrix_path);
    body["joint_eigenvalues"] = {{"a", tv.spectrum.a}, {"b", tv.spectrum.b}};
    body["paths_agree"] = tv.paths_agree();
    return emit(op, std::move(body), tv.verdict.holds && (!tv.matrix_path || tv.matrix_path->holds));
}

/// Matrices keep 17 significant digits, so matrix-valued results are written
/// as text rather than through the JSON number printer.
inline EvalResult emit_matrices(const std::string& op, const std::vector<std::pair<std::string, std::string>>& fields) {
    std::ostringstream os;
    os << "{\n  \"op\": \"" << op << "\"";
    for (const auto& [k, v] : fields)
        os << ",\n  \"" << k << "\": " << v;
    os << "\n}\n";
    return {os.str(), std::nullopt};
}

inline std::string number_list(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + io::format_double(v[i]);
    return s + "]";
}

using Handler = std::function<EvalResult(const std::string&, const json&)>;

inline const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table = {
        {"q_log",
         [](const std::string& op, const json& d) {
             return emit(op, {{"value", q_log(number(d, "x"), QLogParams{number(d, "q")})}});
         }},
        {"q_log_product",
         [](const std::string& op, const json& d) {
             const QLogParams p{number(d, "q")};
             return emit(op, {{"value", q_log_product(number(d, "x"), number(d, "y"), p)},
                              {"direct", q_log(number(d, "x") * number(d, "y"), p)}});
         }},
        {"q_log_quotient",
         [](const std::string& op, const json& d) {
             const QLogParams p{number(d, "q")};
             return emit(op, {{"value", q_log_quotient(number(d, "x"), number(d, "y"), p)},
                              {"direct", q_log(number(d, "x") / number(d, "y"), p)}});
         }},
        {"q_log_reciprocal",
         [](const std::string& op, const json& d) {
             const QLogParams p{number(d, "q")};
             return emit(op, {{"value", q_log_reciprocal(number(d, "y"), p)}, {"direct", q_log(1.0 / number(d, "y"), p)}});
         }},
        {"ratio_bounds",
         [](const std::string& op, const json& d) {
             const auto rb = ratio_bounds(parse_function(d.value("g", std::string("identity"))), pair(d));
             return emit(op, {{"lower", rb.lower}, {"upper", rb.upper}, {"degenerate", rb.degenerate()}});
         }},
        {"convexity_check",
         [](const std::string& op, const json& d) {
             const auto kind_name = text(d, "kind");
             if (kind_name != "xfx" && kind_name != "xf1overx")
                 throw precondition_error("kind must be xfx or xf1overx");
             const auto interval = numbers(d, "interval");
             if (interval.size() != 2)
                 throw precondition_error("interval must be [lo, hi]");
             const int grid = static_cast<int>(number_or(d, "grid_points", precondition_grid_points));
             const bool ok = convexity_check(kind_name == "xfx" ? CurvatureKind::xfx : CurvatureKind::xf1overx,
                                             parse_function(text(d, "f")), interval[0], interval[1], grid);
             return emit(op, {{"result", ok}});
         }},
        {"generalized_log_sum_gap",
         [](const std::string& op, const json& d) {
             return emit_verdict(op, generalized_log_sum_gap(parse_function(d.value("f", std::string("log"))),
                                                             parse_function(d.value("g", std::string("identity"))),
                                                             pair(d), tol(d)));
         }},
        {"reverse_log_sum_gap",
         [](const std::string& op, const json& d) {
             return emit_verdict(op, reverse_log_sum_gap(parse_function(d.value("f", std::string("log"))),
                                                         parse_function(d.value("g", std::string("identity"))), pair(d),
                                                         tol(d)));
         }},
        {"rational_example_gap",
         [](const std::string& op, const json& d) { return emit_verdict(op, rational_example_gap(pair(d), tol(d))); }},
        {"q_log_sum_gap",
         [](const std::string& op, const json& d) {
             return emit_verdict(op, q_log_sum_gap(pair(d), number(d, "q"), number_or(d, "r", 1.0), tol(d)));
         }},
        {"hermitize",
         [](const std::string& op, const json& d) {
             return emit_matrices(op, {{"result", io::write_matrix(HermitianMatrix(raw_matrix(d, "M")).matrix())}});
         }},
        {"spectral_decompose",
         [](const std::string& op, const json& d) {
             const auto dec = spectral_decompose(hermitian(d, "A"));
             return emit_matrices(op, {{"eigenvalues", number_list(dec.eigenvalues)}, {"unitary", io::write_matrix(dec.unitary)}});
         }},
        {"apply_function",
         [](const std::string& op, const json& d) {
             return emit_matrices(
                 op, {{"result", io::write_matrix(apply_function(parse_function(text(d, "f")), hermitian(d, "A")).matrix())}});
         }},
        {"loewner_leq",
         [](const std::string& op, const json& d) {
             return emit_verdict(op, loewner_leq(hermitian(d, "A"), hermitian(d, "B"), tol(d)));
         }},
        {"make_commuting_pair",
         [](const std::string& op, const json& d) {
             const auto la = numbers(d, "lambda_a");
             const auto lb = numbers(d, "lambda_b");
             const auto [a, b] = make_commuting_pair(raw_matrix(d, "U"), la, lb);
             return emit_matrices(op, {{"A", io::write_matrix(a.matrix())}, {"B", io::write_matrix(b.matrix())}});
         }},
        {"psd_inverse",
         [](const std::string& op, const json& d) {
             const auto a = hermitian(d, "A");
             const auto inv = d.contains("floor") ? psd_inverse(a, number(d, "floor")) : psd_inverse(a);
             return emit_matrices(op, {{"result", io::write_matrix(inv.matrix())}});
         }},
        {"psd_sqrt",
         [](const std::string& op, const json& d) {
             return emit_matrices(op, {{"result", io::write_matrix(psd_sqrt(hermitian(d, "A")).matrix())}});
         }},
        {"trace_log_sum_gap",
         [](const std::string& op, const json& d) {
             return emit_trace(op, trace_log_sum_gap(parse_function(d.value("f", std::string("log"))),
                                                     parse_function(d.value("g", std::string("identity"))),
                                                     hermitian(d, "A"), hermitian(d, "B"), tol(d)));
         }},
        {"exp_log_trace_gap",
         [](const std::string& op, const json& d) {
             const auto r = exp_log_trace_gap(hermitian(d, "A"), hermitian(d, "B"), tol(d));
             auto body = to_json(r.verdict);
             body["logdet_path_lhs"] = r.logdet_path_lhs;
             body["trace_exp_difference"] = r.trace_exp_difference;
             return emit(op, std::move(body), r.verdict.holds);
         }},
        {"quantum_relative_entropy",
         [](const std::string& op, const json& d) {
             return emit(op, {{"value", quantum_relative_entropy(DensityMatrix(hermitian(d, "rho")),
                                                                 DensityMatrix(hermitian(d, "sigma")))}});
         }},
        {"von_neumann_entropy",
         [](const std::string& op, const json& d) {
             return emit(op, {{"value", von_neumann_entropy(DensityMatrix(hermitian(d, "rho")))}});
         }},
        {"q_trace_gap",
         [](const std::string& op, const json& d) {
             return emit_trace(op, q_trace_gap(hermitian(d, "A"), hermitian(d, "B"), number(d, "q"), number_or(d, "r", 1.0),
                                               tol(d)));
         }},
        {"reverse_trace_gap",
         [](const std::string& op, const json& d) {
             return emit_trace(op, reverse_trace_gap(parse_function(d.value("f", std::string("log"))),
                                                     parse_function(d.value("g", std::string("identity"))),
                                                     hermitian(d, "A"), hermitian(d, "B"), tol(d)));
         }},
        {"hansen_jensen_residual",
         [](const std::string& op, const json& d) {
             return emit_verdict(op, hansen_jensen_residual(parse_operator_function(text(d, "f")), raw_matrix(d, "K"),
                                                            hermitian(d, "X"), tol(d)));
         }},
        {"perspective_sum_residual",
         [](const std::string& op, const json& d) {
             const auto r = perspective_sum_residual(parse_operator_function(text(d, "f")), family(d, "A_family"),
                                                     family(d, "B_family"), {tol(d), d.value("enforce_expansivity", true)});
             auto body = to_json(r.verdict);
             if (r.summed_image)
                 body["summed_image"] = to_json(*r.summed_image);
             body["identity_discrepancy"] = r.identity_discrepancy;
             return emit(op, std::move(body), r.verdict.holds && (!r.summed_image || r.summed_image->holds));
         }},
        {"operator_shannon_residual",
         [](const std::string& op, const json& d) {
             return emit_verdict(op, operator_shannon_residual(family(d, "A_family"), family(d, "B_family"),
                                                               parse_operator_function(text(d, "f")), tol(d)));
         }},
        {"quadratic_inverse_sum_residual",
         [](const std::string& op, const json& d) {
             return emit_verdict(op, quadratic_inverse_sum_residual(raw_family(d, "X_family"), family(d, "A_family"), tol(d)));
         }},
        {"inverse_mean_residual",
         [](const std::string& op, const json& d) {
             return emit_verdict(op, inverse_mean_residual(parse_operator_function(text(d, "f")), family(d, "A_family"),
                                                           family(d, "B_family"), tol(d)));
         }},
        {"sandwiched_inverse_mean_residual",
         [](const std::string& op, const json& d) {
             return emit_verdict(op, sandwiched_inverse_mean_residual(parse_operator_function(text(d, "f")),
                                                                      family(d, "A_family"), family(d, "B_family"), tol(d)));
         }},
        {"nested_inverse_mean_residual",
         [](const std::string& op, const json& d) {
             return emit_verdict(op, nested_inverse_mean_residual(parse_operator_function(text(d, "f")), hermitian(d, "A_i"),
                                                                  hermitian(d, "B_i"), hermitian(d, "A"),
                                                                  hermitian(d, "B"), tol(d)));
         }},
    };
    return table;
}

inline const std::map<std::string, std::string>& op_aliases() {
    static const std::map<std::string, std::string> aliases = {
        {"theorem6_residual", "perspective_sum_residual"},
        {"lemma9_residual", "quadratic_inverse_sum_residual"},
        {"theorem10_residual_1", "inverse_mean_residual"},
        {"theorem10_residual_2", "sandwiched_inverse_mean_residual"},
        {"intermediate_57_residual", "nested_inverse_mean_residual"},
    };
    return aliases;
}

} // namespace detail

inline std::vector<std::string> eval_operations() {
    std::vector<std::string> out;
    for (const auto& [k, _] : detail::handlers())
        out.push_back(k);
    return out;
}

inline EvalResult evaluate(const std::string& op, const nlohmann::json& doc) {
    std::string name = op;
    if (const auto it = detail::op_aliases().find(op); it != detail::op_aliases().end())
        name = it->second;
    const auto& table = detail::handlers();
    const auto it = table.find(name);
    if (it == table.end())
        throw precondition_error("unknown operation '" + op + "'");
    if (!doc.is_object())
        throw precondition_error("input document must be a JSON object");
    return it->second(name, doc);
}

} // namespace logsum::harness
