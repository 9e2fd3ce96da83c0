#ifndef CRACKPERT_QUADRATURE_HPP
#define CRACKPERT_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>

namespace crackpert::quadrature {

/// Declared behaviour of the integrand at one end of the interval.
struct Endpoint {
    enum class Kind { smooth, algebraic, logarithmic };

    Kind kind = Kind::smooth;
    double exponent = 0.0;  ///< f ~ |x - end|^exponent, only for Kind::algebraic

    // The integrand only sees x, so a singular endpoint away from 0 is resolved to
    // about eps |end|; a node that rounds onto it makes the result non-finite.

    static Endpoint smooth() { return {}; }
    static Endpoint algebraic(double exponent) { return {Kind::algebraic, exponent}; }
    static Endpoint logarithmic() { return {Kind::logarithmic, 0.0}; }
};

/// |f(x)| <= bound * exp(-rate * (x - lo)) for x >= lo.
struct Decay {
    double rate = 1.0;
    double bound = 1.0;
};

struct Request {
    std::function<double(double)> integrand;
    double lo = 0.0;
    double hi = 1.0;  ///< may be +infinity when `decay` is set
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    Endpoint lo_end;
    Endpoint hi_end;
    std::optional<double> oscillation_period;
    std::optional<Decay> decay;
    std::size_t max_panels = 10000;
};

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t panel_count = 0;
    bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration.
///
/// Algebraic endpoints are removed by the substitution x = end + L u^(1/(1+exponent)),
/// logarithmic ones by geometric bisection toward the endpoint (ratio 1/2, depth <= 52).
/// A semi-infinite range is cut where the declared decay bound drops below abs_tol/100;
/// the analytic tail bound is added to the error estimate. With an oscillation period
/// the range is pre-split at period multiples before adaptation.
///
/// Throws std::invalid_argument for malformed requests; returns converged = false
/// with the best estimate when the panel budget runs out.
Result integrate(const Request& request);

/// integrate() that throws NumericError (naming `what`) when not converged.
double integrate_checked(const Request& request, std::string_view what);

/// Convenience for smooth integrands on a bounded interval.
double integrate_smooth(const std::function<double(double)>& f, double lo, double hi,
                        std::string_view what, double abs_tol = 1e-12, double rel_tol = 1e-10);

}  // namespace crackpert::quadrature

#endif
