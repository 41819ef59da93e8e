#pragma once

// Text exchange format for complex matrices:
//   {"n": 2, "re": [[..], [..]], "im": [[..], [..]]}
// Values are written with 17 significant digits.

#include "logsum/errors.hpp"
#include "logsum/hermitian.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace logsum::io {

inline std::string format_double(double v) {
    if (!std::isfinite(v))
        throw domain_error("matrix exchange: non-finite value cannot be serialized");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string write_matrix(const Matrix& m) {
    if (m.rows() != m.cols())
        throw dimension_error("matrix exchange: matrix must be square");
    std::ostringstream os;
    auto part = [&](const char* key, auto get) {
        os << "\"" << key << "\": [";
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            os << (i ? ", [" : "[");
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                os << (j ? ", " : "") << format_double(get(m(i, j)));
            os << "]";
        }
        os << "]";
    };
    os << "{\"n\": " << m.rows() << ", ";
    part("re", [](const Complex& z) { return z.real(); });
    os << ", ";
    part("im", [](const Complex& z) { return z.imag(); });
    os << "}";
    return os.str();
}

inline Matrix read_matrix(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("re") || !doc.contains("im"))
        throw dimension_error("matrix exchange: expected fields n, re, im");
    const auto& n_field = doc.at("n");
    if (!n_field.is_number_integer() || n_field.get<long long>() < 1)
        throw dimension_error("matrix exchange: n must be a positive integer");
    const auto n = static_cast<Eigen::Index>(n_field.get<long long>());
    Matrix m(n, n);
    auto load = [&](const char* key, bool imag) {
        const auto& rows = doc.at(key);
        if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n)
            throw dimension_error(std::string("matrix exchange: ") + key + " must have n rows");
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto& row = rows[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
                throw dimension_error(std::string("matrix exchange: ") + key + " must have n columns");
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto& v = row[static_cast<std::size_t>(j)];
                if (!v.is_number())
                    throw domain_error(std::string("matrix exchange: non-numeric entry in ") + key);
                const double x = v.get<double>();
                if (imag)
                    m(i, j).imag(x);
                else
                    m(i, j) = Complex(x, 0.0);
            }
        }
    };
    load("re", false);
    load("im", true);
    return m;
}

inline Matrix parse_matrix(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw domain_error(std::string("matrix exchange: malformed document: ") + e.what());
    }
    return read_matrix(doc);
}

inline nlohmann::json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw precondition_error("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw domain_error("malformed document " + path + ": " + e.what());
    }
}

} // namespace logsum::io
