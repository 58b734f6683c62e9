#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace nri {

/// Tagged scalar function descriptor for functional calculus on [0, inf).
///
/// Monotonicity/convexity flags are asserted at construction, never inferred
/// numerically.  PowerR(r) carries operator_convex exactly for r in [1,2].
struct ScalarFn {
    enum class Kind { Identity, Square, PowerR, Custom };

    Kind kind = Kind::Identity;
    double r = 1.0;  // PowerR exponent
    std::function<double(double)> callable;
    std::string label = "identity";

    bool nonnegative = true;
    bool increasing = true;
    bool convex = true;
    bool operator_convex = true;
    bool requires_nonneg_domain = false;

    double operator()(double x) const {
        switch (kind) {
            case Kind::Identity: return x;
            case Kind::Square: return x * x;
            case Kind::PowerR: return std::pow(x, r);
            case Kind::Custom: return callable(x);
        }
        throw std::logic_error("ScalarFn: bad kind");
    }

    static ScalarFn identity() { return ScalarFn{}; }

    static ScalarFn square() {
        ScalarFn f;
        f.kind = Kind::Square;
        f.label = "square";
        return f;
    }

    static ScalarFn power(double r) {
        if (!(r >= 0.0)) throw std::invalid_argument("ScalarFn::power: exponent must be >= 0");
        ScalarFn f;
        f.kind = Kind::PowerR;
        f.r = r;
        f.label = "power(" + std::to_string(r) + ")";
        f.nonnegative = true;
        f.increasing = r > 0.0;
        f.convex = r >= 1.0 || r == 0.0;
        f.operator_convex = r >= 1.0 && r <= 2.0;
        f.requires_nonneg_domain = true;
        return f;
    }

    struct Flags {
        bool nonnegative = false;
        bool increasing = false;
        bool convex = false;
        bool operator_convex = false;
        bool requires_nonneg_domain = true;
    };

    static ScalarFn custom(std::string label, std::function<double(double)> fn, Flags flags) {
        ScalarFn f;
        f.kind = Kind::Custom;
        f.callable = std::move(fn);
        f.label = std::move(label);
        f.nonnegative = flags.nonnegative;
        f.increasing = flags.increasing;
        f.convex = flags.convex;
        f.operator_convex = flags.operator_convex;
        f.requires_nonneg_domain = flags.requires_nonneg_domain;
        return f;
    }
};

}  // namespace nri
