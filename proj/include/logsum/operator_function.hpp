#pragma once

// Catalog of functions with known operator monotonicity/concavity/convexity.
// Operator classes are never certified numerically; only catalog members can
// carry the flags.

#include "logsum/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace logsum {

enum class OperatorFamily {
    power,       ///< t^r
    log,         ///< log t
    shifted_log, ///< log(c + t), c > 0
};

struct OperatorClass {
    bool monotone = false;
    bool concave = false;
    bool convex = false;
};

class OperatorFunctionSpec {
public:
    /// t^r for r in [-1, 0) or (0, 2]; outside that range no class is known.
    static OperatorFunctionSpec power(double r, double offset = 0.0) {
        if (!std::isfinite(r) || !((r >= -1.0 && r < 0.0) || (r > 0.0 && r <= 2.0)))
            throw precondition_error("OperatorFunctionSpec::power: exponent must lie in [-1, 0) or (0, 2]");
        return OperatorFunctionSpec(OperatorFamily::power, r, offset);
    }
    static OperatorFunctionSpec log(double offset = 0.0) { return OperatorFunctionSpec(OperatorFamily::log, 0.0, offset); }
    static OperatorFunctionSpec shifted_log(double c, double offset = 0.0) {
        if (!(c > 0.0) || !std::isfinite(c))
            throw precondition_error("OperatorFunctionSpec::shifted_log: shift must be positive");
        return OperatorFunctionSpec(OperatorFamily::shifted_log, c, offset);
    }

    [[nodiscard]] OperatorFamily family() const noexcept { return family_; }
    [[nodiscard]] double parameter() const noexcept { return param_; }
    /// Constant added to the base function; it does not change the class.
    [[nodiscard]] double offset() const noexcept { return offset_; }

    [[nodiscard]] OperatorClass operator_class() const noexcept {
        switch (family_) {
        case OperatorFamily::power:
            if (param_ > 0.0 && param_ <= 1.0)
                return {true, true, param_ == 1.0};
            return {false, false, true};
        case OperatorFamily::log:
        case OperatorFamily::shifted_log:
            return {true, true, false};
        }
        return {};
    }

    [[nodiscard]] bool in_domain(double t) const noexcept {
        if (!std::isfinite(t))
            return false;
        switch (family_) {
        case OperatorFamily::power:
            return param_ > 0.0 ? t >= 0.0 : t > 0.0;
        case OperatorFamily::log:
            return t > 0.0;
        case OperatorFamily::shifted_log:
            return t > -param_;
        }
        return false;
    }

    /// Whether the function is defined on all of [0, inf).
    [[nodiscard]] bool defined_at_zero() const noexcept { return in_domain(0.0); }

    double operator()(double t) const {
        if (!in_domain(t)) {
            std::ostringstream os;
            os << name() << ": argument " << t << " outside the domain";
            throw domain_error(os.str());
        }
        switch (family_) {
        case OperatorFamily::power:
            return std::pow(t, param_) + offset_;
        case OperatorFamily::log:
            return std::log(t) + offset_;
        case OperatorFamily::shifted_log:
            return std::log(param_ + t) + offset_;
        }
        return 0.0;
    }

    [[nodiscard]] std::string name() const {
        std::ostringstream os;
        os.precision(17);
        switch (family_) {
        case OperatorFamily::power:
            os << "power(" << param_ << ")";
            break;
        case OperatorFamily::log:
            os << "log";
            break;
        case OperatorFamily::shifted_log:
            os << "shifted_log(" << param_ << ")";
            break;
        }
        if (offset_ != 0.0)
            os << (offset_ > 0 ? "+" : "") << offset_;
        return os.str();
    }

private:
    OperatorFunctionSpec(OperatorFamily family, double param, double offset)
        : family_(family), param_(param), offset_(offset) {
        if (!std::isfinite(offset))
            throw precondition_error("OperatorFunctionSpec: offset must be finite");
    }

    OperatorFamily family_;
    double param_;
    double offset_;
};

} // namespace logsum
