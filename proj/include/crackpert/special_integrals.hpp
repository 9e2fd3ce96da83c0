#ifndef CRACKPERT_SPECIAL_INTEGRALS_HPP
#define CRACKPERT_SPECIAL_INTEGRALS_HPP

// Inverse Mellin transforms of the Mode III kernels, as functions of
// beta = log(distance ratio):
//
//   I1(beta) = (1/2 pi i) int tan(pi s)/s e^{beta s} ds,  0 < Re s < 1/2
//   I2(beta) = (1/2 pi i) int cot(pi s)/s e^{beta s} ds,  0 < Re s < 1/2
//   I3(beta) = (1/2 pi i) int 1/cos(pi s) e^{beta s} ds,  Re s = 0
//
// The closed forms are templates on the scalar type so that the asymptotic
// regime can be checked in extended precision; production code uses double.

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace crackpert {

class SingularArgument : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {

template <class Real>
Real pi_v()
{
    using std::acos;
    return acos(Real(-1));
}

/// log(1 - exp(-x)) for x > 0 without cancellation at either end.
template <class Real>
Real log1mexp(const Real& x)
{
    using std::exp;
    using std::expm1;
    using std::log;
    using std::log1p;
    if (x < Real(0.6931471805599453))
        return log(-expm1(-x));
    return log1p(-exp(-x));
}

template <class Real>
Real sign(const Real& x)
{
    return x > Real(0) ? Real(1) : (x < Real(0) ? Real(-1) : Real(0));
}

}  // namespace detail

/// I1(beta) = (1/pi) log coth(|beta|/4). Even, positive, log-singular at 0.
template <class Real = double>
Real i1_closed(const Real& beta)
{
    using std::abs;
    using std::exp;
    using std::log1p;
    if (beta == Real(0)) throw SingularArgument("I1 diverges at beta = 0");
    const Real h = abs(beta) / 2;
    // coth(h/2) = (1 + e^-h) / (1 - e^-h)
    return (log1p(exp(-h)) - detail::log1mexp(h)) / detail::pi_v<Real>();
}

/// I2(beta) = beta/(2 pi) + (1/pi) log(2 sinh(|beta|/2)).
template <class Real = double>
Real i2_closed(const Real& beta)
{
    using std::abs;
    if (beta == Real(0)) throw SingularArgument("I2 diverges at beta = 0");
    const Real pi = detail::pi_v<Real>();
    const Real b = abs(beta);
    // log(2 sinh(b/2)) = b/2 + log(1 - e^-b)
    return (beta + b) / (2 * pi) + detail::log1mexp(b) / pi;
}

/// I3(beta) = (1/pi) sinh(beta/2)/sinh(beta), written as 1/(2 pi cosh(beta/2)).
template <class Real = double>
Real i3_closed(const Real& beta)
{
    using std::cosh;
    return Real(1) / (2 * detail::pi_v<Real>() * cosh(beta / 2));
}

/// The literal quotient form of I3; undefined at beta = 0, overflows for large |beta|.
template <class Real = double>
Real i3_quotient(const Real& beta)
{
    using std::sinh;
    return sinh(beta / 2) / (detail::pi_v<Real>() * sinh(beta));
}

/// (1/2 pi i) int e^{beta s} / (s sin(pi s)) ds on 0 < Re s < 1 equals
/// I2(2 beta) - I2(beta) = (1/pi) log(1 + e^beta). Smooth everywhere.
template <class Real = double>
Real i4_closed(const Real& beta)
{
    using std::abs;
    using std::exp;
    using std::log1p;
    const Real b = abs(beta);
    return ((beta + b) / 2 + log1p(exp(-b))) / detail::pi_v<Real>();
}

/// Derivatives with respect to beta.
double i1_prime(double beta);
double i1_second(double beta);
double i2_prime(double beta);
double i2_second(double beta);
double i3_prime(double beta);
double i4_prime(double beta);
double i4_second(double beta);

/// Leading terms of the small- and large-argument expansions.
namespace asymptotic {

template <class Real = double>
Real i1_near_zero(const Real& beta)
{
    using std::abs;
    using std::log;
    return -log(abs(beta) / 4) / detail::pi_v<Real>();
}

template <class Real = double>
Real i1_far(const Real& beta)
{
    using std::abs;
    using std::exp;
    return 2 * exp(-abs(beta) / 2) / detail::pi_v<Real>();
}

template <class Real = double>
Real i2_near_zero(const Real& beta)
{
    using std::abs;
    using std::log;
    const Real pi = detail::pi_v<Real>();
    return beta / (2 * pi) + log(abs(beta)) / pi;
}

template <class Real = double>
Real i2_far(const Real& beta)
{
    using std::abs;
    using std::exp;
    const Real pi = detail::pi_v<Real>();
    return (beta + abs(beta)) / (2 * pi) - exp(-abs(beta)) / pi;
}

}  // namespace asymptotic

/// Result of a numerical evaluation of one of the real-axis integral forms.
struct OracleReport {
    double value = 0.0;
    double error_estimate = 0.0;  ///< quadrature estimate on [0, truncation]
    double tail_bound = 0.0;      ///< analytic bound on the discarded [truncation, inf) part
    double truncation = 0.0;
    std::size_t panels = 0;
};

class OracleFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Truncation that keeps the e^{-2 pi t} tails below 1e-12 for every beta.
inline constexpr double default_oracle_truncation = 10.0;

/// Numerical I1 from (1/pi) int_0^inf tanh(pi t)/t cos(beta t) dt.
///
/// The integrand decays only like cos(beta t)/t, so it is split as
/// tanh(pi t) = (1 - e^{-2 pi t}) + (tanh(pi t) - 1 + e^{-2 pi t}); the first part has
/// the elementary transform (1/2) log(1 + 4 pi^2 / beta^2), the second decays like
/// e^{-2 pi t} and is integrated on [0, truncation] between zeros of cos(beta t).
OracleReport i1_oracle(double beta, double truncation = default_oracle_truncation, double tolerance = 1e-13);

/// Numerical I2 from its sign-split real-axis form (upper signs for beta > 0):
///   beta(1 +- 1)/(2 pi) -+ (e^{-+beta/2}/pi) int_0^inf tanh(pi t)/(t^2 + 1/4)
///                                            ((1/2) sin(beta t) +- t cos(beta t)) dt.
/// With tanh = 1 + (tanh - 1), the "1" part is e^{|beta|/2} E1(|beta|/2).
OracleReport i2_oracle(double beta, double truncation = default_oracle_truncation, double tolerance = 1e-13);

}  // namespace crackpert

#endif
