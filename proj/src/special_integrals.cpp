#include "crackpert/special_integrals.hpp"

#include "crackpert/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace crackpert {

namespace {

constexpr double pi = std::numbers::pi;

/// 1/sinh(x) for x > 0, overflow-free.
double csch(double x) { return -2.0 * std::exp(-x) / std::expm1(-2.0 * x); }

/// coth(x) for x > 0.
double coth(double x) { return -1.0 / std::tanh(-x); }

double e1(double x) { return -std::expint(-x); }

/// tanh(pi t) - 1 = -2q/(1+q), q = e^{-2 pi t}
double tanh_minus_one(double t)
{
    const double q = std::exp(-2.0 * pi * t);
    return -2.0 * q / (1.0 + q);
}

OracleReport run_oracle(const std::function<double(double)>& f, double beta, double truncation, double tolerance,
                        const char* name)
{
    quadrature::Request req;
    req.integrand = f;
    req.lo = 0.0;
    req.hi = truncation;
    req.abs_tol = tolerance;
    req.rel_tol = 1e-14;
    req.oscillation_period = 2.0 * pi / std::abs(beta);
    req.max_panels = 20000;
    const auto r = quadrature::integrate(req);
    if (!r.converged) {
        std::ostringstream os;
        os << name << " oracle did not converge at beta = " << beta << " (error " << r.error_estimate << ", "
           << r.panel_count << " panels)";
        throw OracleFailure(os.str());
    }
    OracleReport rep;
    rep.value = r.value;
    rep.error_estimate = r.error_estimate;
    rep.truncation = truncation;
    rep.panels = r.panel_count;
    return rep;
}

void check_args(double beta, double truncation, double tolerance)
{
    if (beta == 0.0) throw SingularArgument("oracle: beta = 0 is singular");
    if (!(truncation > 0.0) || !(tolerance > 0.0))
        throw std::invalid_argument("oracle: truncation and tolerance must be positive");
}

}  // namespace

double i1_prime(double beta)
{
    if (beta == 0.0) throw SingularArgument("I1' diverges at beta = 0");
    return -detail::sign(beta) * csch(std::abs(beta) / 2.0) / (2.0 * pi);
}

double i1_second(double beta)
{
    if (beta == 0.0) throw SingularArgument("I1'' diverges at beta = 0");
    const double x = std::abs(beta) / 2.0;
    return coth(x) * csch(x) / (4.0 * pi);
}

double i2_prime(double beta)
{
    if (beta == 0.0) throw SingularArgument("I2' diverges at beta = 0");
    return (1.0 + detail::sign(beta) * coth(std::abs(beta) / 2.0)) / (2.0 * pi);
}

double i2_second(double beta)
{
    if (beta == 0.0) throw SingularArgument("I2'' diverges at beta = 0");
    const double c = csch(std::abs(beta) / 2.0);
    return -c * c / (4.0 * pi);
}

double i3_prime(double beta)
{
    return -std::tanh(beta / 2.0) / (4.0 * pi * std::cosh(beta / 2.0));
}

double i4_prime(double beta)
{
    // (1/pi) * logistic(beta)
    return beta >= 0.0 ? 1.0 / (pi * (1.0 + std::exp(-beta))) : std::exp(beta) / (pi * (1.0 + std::exp(beta)));
}

double i4_second(double beta)
{
    const double s = pi * i4_prime(beta);
    return s * (1.0 - s) / pi;
}

OracleReport i1_oracle(double beta, double truncation, double tolerance)
{
    check_args(beta, truncation, tolerance);
    const double b = beta;
    const auto remainder = [b](double t) {
        // (tanh(pi t) - 1 + e^{-2 pi t}) / t = q (q - 1)/((1 + q) t), q = e^{-2 pi t}
        const double q = std::exp(-2.0 * pi * t);
        return q * std::expm1(-2.0 * pi * t) / ((1.0 + q) * t) * std::cos(b * t);
    };
    OracleReport rep = run_oracle(remainder, beta, truncation, tolerance, "I1");
    const double subtracted = 0.5 * std::log1p(4.0 * pi * pi / (beta * beta));
    rep.value = (subtracted + rep.value) / pi;
    rep.error_estimate /= pi;
    rep.tail_bound = std::exp(-2.0 * pi * truncation) / (2.0 * pi * truncation) / pi;
    return rep;
}

OracleReport i2_oracle(double beta, double truncation, double tolerance)
{
    check_args(beta, truncation, tolerance);
    const double sigma = beta > 0.0 ? 1.0 : -1.0;
    const double b = std::abs(beta);
    const auto remainder = [beta, sigma](double t) {
        return tanh_minus_one(t) * (0.5 * std::sin(beta * t) + sigma * t * std::cos(beta * t)) / (t * t + 0.25);
    };
    OracleReport rep = run_oracle(remainder, beta, truncation, tolerance, "I2");
    // int_0^inf ((1/2) sin(beta t) + sigma t cos(beta t))/(t^2 + 1/4) dt = sigma e^{b/2} E1(b/2)
    const double damp = std::exp(-b / 2.0);
    const double integral = sigma * e1(b / 2.0) + damp * rep.value;
    rep.value = beta * (1.0 + sigma) / (2.0 * pi) - sigma * integral / pi;
    rep.error_estimate *= damp / pi;
    rep.tail_bound = damp / pi * 2.0 * (1.0 + std::numbers::sqrt2) * std::exp(-2.0 * pi * truncation) / (2.0 * pi);
    return rep;
}

}  // namespace crackpert
