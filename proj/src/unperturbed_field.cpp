#include "crackpert/unperturbed_field.hpp"

#include "crackpert/quadrature.hpp"
#include "crackpert/special_integrals.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace crackpert {

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt_2_over_pi = std::sqrt(2.0 / pi);
const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * pi);

std::vector<UnperturbedField::Station> build_stations(const LoadDecomposition& load)
{
    std::map<double, UnperturbedField::Station> by_distance;
    for (const auto& f : load.average) {
        auto& st = by_distance[-f.position];
        st.distance = -f.position;
        st.average += f.weight;
    }
    for (const auto& f : load.jump) {
        auto& st = by_distance[-f.position];
        st.distance = -f.position;
        st.jump += f.weight;
    }
    std::vector<UnperturbedField::Station> out;
    for (const auto& [d, st] : by_distance) {
        if (!(d > 0.0)) throw DomainError("load station must lie behind the crack tip");
        out.push_back(st);
    }
    return out;
}

}  // namespace

double TipAsymptotics::traction(double r) const
{
    return (k3 / std::sqrt(r) + a3 * std::sqrt(r) + b3 * r * std::sqrt(r)) * inv_sqrt_2pi;
}

double TipAsymptotics::opening(const Bimaterial& material, double r) const
{
    const double compliance = 1.0 / material.mu_plus + 1.0 / material.mu_minus;
    const double sr = std::sqrt(r);
    return compliance * inv_sqrt_2pi * (2.0 * k3 * sr - 2.0 / 3.0 * a3 * r * sr + 2.0 / 5.0 * b3 * r * r * sr);
}

UnperturbedField::UnperturbedField(const Bimaterial& material, const LoadDecomposition& load)
    : material_(material), stations_(build_stations(load))
{
    auto errors = material.violations();
    if (!errors.empty()) throw ValidationError(std::move(errors));
}

UnperturbedField::UnperturbedField(const Bimaterial& material, const ThreePointLoad& load)
    : UnperturbedField(material, [&] {
          auto errors = load.violations();
          if (!errors.empty()) throw ValidationError(std::move(errors));
          return load.decomposition();
      }())
{
}

double UnperturbedField::k0() const
{
    const double eta = material_.eta();
    double sum = 0.0;
    for (const auto& st : stations_) sum += (st.average + 0.5 * eta * st.jump) / std::sqrt(st.distance);
    return -sqrt_2_over_pi * sum;
}

double pair_with_power(const LineData& data, double power, bool positive_side, const char* what)
{
    const auto on_side = [&](double x) { return positive_side ? x > 0.0 : x < 0.0; };
    double sum = 0.0;
    for (const auto& p : data.points) {
        if (!on_side(p.position)) {
            std::ostringstream os;
            os << what << ": point datum at x1 = " << p.position << " must lie strictly on the "
               << (positive_side ? "interface (x1 > 0)" : "crack (x1 < 0)");
            throw DomainError(os.str());
        }
        sum += p.weight * std::pow(std::abs(p.position), power);
    }
    for (const auto& seg : data.segments) {
        if (!(seg.lo < seg.hi) || !on_side(seg.lo) || !on_side(seg.hi)) {
            std::ostringstream os;
            os << what << ": support [" << seg.lo << ", " << seg.hi << "] must be a proper interval strictly on the "
               << (positive_side ? "interface (x1 > 0)" : "crack (x1 < 0)");
            throw DomainError(os.str());
        }
        const auto& density = seg.density;
        sum += quadrature::integrate_smooth(
            [&density, power](double x) { return density(x) * std::pow(std::abs(x), power); }, seg.lo, seg.hi, what);
    }
    return sum;
}

TipAsymptotics UnperturbedField::tip_asymptotics(const InterfaceDiscontinuity& disc) const
{
    const double eta = material_.eta();
    double m1 = 0.0, m3 = 0.0, m5 = 0.0;
    for (const auto& st : stations_) {
        const double w = st.average + 0.5 * eta * st.jump;
        m1 += w * std::pow(st.distance, -0.5);
        m3 += w * std::pow(st.distance, -1.5);
        m5 += w * std::pow(st.distance, -2.5);
    }
    TipAsymptotics t{-sqrt_2_over_pi * m1, sqrt_2_over_pi * m3, -sqrt_2_over_pi * m5};

    if (!disc.g1.empty()) {
        const double c = inv_sqrt_2pi * material_.reduced_modulus();
        t.k3 += c * pair_with_power(disc.g1, -1.5, true, "tip_asymptotics g1 (K)");
        t.a3 += 3.0 * c * pair_with_power(disc.g1, -2.5, true, "tip_asymptotics g1 (A)");
        t.b3 += 5.0 * c * pair_with_power(disc.g1, -3.5, true, "tip_asymptotics g1 (B)");
    }
    return t;
}

double UnperturbedField::check_face_point(Face face, double x1) const
{
    if (face == Face::interface) throw DomainError("face_displacement: use a crack face, not the interface");
    if (!(x1 < 0.0)) throw DomainError("face_displacement: x1 must be < 0 on the crack faces");
    return -x1;
}

// order 0: value, 1: d/dx1, 2: d^2/dx1^2 of
//   mu u0 = sum_j (1 -+ eta)/2 J_j I2(beta_j) -+ (S_j + eta J_j / 2) I1(beta_j)
// with beta_j = log(d_j / (-x1)), so dbeta/dx1 = -1/x1 and d^2beta/dx1^2 = 1/x1^2.
double UnperturbedField::face_sum(Face face, double x1, int order) const
{
    const double r = check_face_point(face, x1);
    const double sign = face == Face::upper ? 1.0 : -1.0;
    const double eta = material_.eta();
    double sum = 0.0;
    for (const auto& st : stations_) {
        const double w2 = 0.5 * (1.0 - sign * eta) * st.jump;
        const double w1 = -sign * (st.average + 0.5 * eta * st.jump);
        if (w1 == 0.0 && w2 == 0.0) continue;
        if (st.distance == r) {
            std::ostringstream os;
            os << "face_displacement: x1 = " << x1 << " coincides with a load station";
            throw SingularArgument(os.str());
        }
        const double beta = std::log(st.distance / r);
        switch (order) {
        case 0: sum += w2 * i2_closed(beta) + w1 * i1_closed(beta); break;
        case 1: sum += (w2 * i2_prime(beta) + w1 * i1_prime(beta)) * (-1.0 / x1); break;
        default:
            sum += (w2 * (i2_second(beta) + i2_prime(beta)) + w1 * (i1_second(beta) + i1_prime(beta))) / (x1 * x1);
            break;
        }
    }
    return sum;
}

double UnperturbedField::face_displacement(Face face, double x1) const { return face_sum(face, x1, 0); }

double UnperturbedField::face_displacement_slope(Face face, double x1) const { return face_sum(face, x1, 1); }

double UnperturbedField::face_displacement_curvature(Face face, double x1) const { return face_sum(face, x1, 2); }

// du0/dx2 (x1 > 0) = -(1/mu_pm) x1^-1 sum_j (S_j + eta J_j/2) I3(log(d_j/x1))
double UnperturbedField::interface_normal_jump(double x1) const
{
    if (!(x1 > 0.0)) throw DomainError("interface_normal_jump: x1 must be > 0");
    const double eta = material_.eta();
    const double contrast = 1.0 / material_.mu_plus - 1.0 / material_.mu_minus;
    double sum = 0.0;
    for (const auto& st : stations_) sum += (st.average + 0.5 * eta * st.jump) * i3_closed(std::log(st.distance / x1));
    return -contrast * sum / x1;
}

// u0(x1 > 0, 0) = (1/(mu+ + mu-)) sum_j J_j I4(log(d_j/x1))
double UnperturbedField::interface_displacement(double x1) const
{
    if (!(x1 > 0.0)) throw DomainError("interface_displacement: x1 must be > 0");
    double sum = 0.0;
    for (const auto& st : stations_) sum += st.jump * i4_closed(std::log(st.distance / x1));
    return sum / (material_.mu_plus + material_.mu_minus);
}

double UnperturbedField::interface_displacement_slope(double x1) const
{
    if (!(x1 > 0.0)) throw DomainError("interface_displacement: x1 must be > 0");
    double sum = 0.0;
    for (const auto& st : stations_) sum += st.jump * i4_prime(std::log(st.distance / x1));
    return -sum / (x1 * (material_.mu_plus + material_.mu_minus));
}

double UnperturbedField::interface_displacement_curvature(double x1) const
{
    if (!(x1 > 0.0)) throw DomainError("interface_displacement: x1 must be > 0");
    double sum = 0.0;
    for (const auto& st : stations_) {
        const double beta = std::log(st.distance / x1);
        sum += st.jump * (i4_second(beta) + i4_prime(beta));
    }
    return sum / (x1 * x1 * (material_.mu_plus + material_.mu_minus));
}

double k0_point_loads(const Bimaterial& material, const ThreePointLoad& load)
{
    return UnperturbedField(material, load).k0();
}

TipAsymptotics tip_asymptotics(const Bimaterial& material, const ThreePointLoad& load,
                               const InterfaceDiscontinuity& disc)
{
    return UnperturbedField(material, load).tip_asymptotics(disc);
}

double face_displacement(const Bimaterial& material, const ThreePointLoad& load, Face face, double x1)
{
    return UnperturbedField(material, load).face_displacement(face, x1);
}

double interface_normal_jump(const Bimaterial& material, const ThreePointLoad& load, double x1)
{
    return UnperturbedField(material, load).interface_normal_jump(x1);
}

MellinOracleReport mellin_inversion_oracle(const MellinTransform& transform, ContourPath path, double x,
                                           double truncation, double tolerance)
{
    if (!(x > 0.0)) throw DomainError("mellin_inversion_oracle: x must be > 0");
    if (!(truncation > 0.0)) throw std::invalid_argument("mellin_inversion_oracle: truncation must be > 0");

    const std::complex<double> start(path.offset, 0.0);
    const auto f0 = transform(start);
    if (!std::isfinite(f0.real()) || !std::isfinite(f0.imag()) || std::abs(f0) > 1e12) {
        std::ostringstream os;
        os << "mellin_inversion_oracle: contour Re s = " << path.offset << " passes through a pole";
        throw ContourError(os.str());
    }

    // With conjugate symmetry the two arms combine to (1/pi) Im int_0^T F(s) x^-s s'(t) dt.
    const double log_x = std::log(x);
    const std::complex<double> ds(-path.slope, 1.0);
    const auto integrand = [&](double t) {
        const std::complex<double> s(path.offset - path.slope * t, t);
        return (transform(s) * std::exp(-s * log_x) * ds).imag();
    };

    quadrature::Request req;
    req.integrand = integrand;
    req.lo = 0.0;
    req.hi = truncation;
    req.abs_tol = tolerance;
    req.rel_tol = 1e-13;
    req.max_panels = 40000;
    if (log_x != 0.0) req.oscillation_period = 2.0 * pi / std::abs(log_x);
    const auto r = quadrature::integrate(req);
    if (!r.converged) {
        std::ostringstream os;
        os << "mellin_inversion_oracle: quadrature did not converge (error " << r.error_estimate << ", "
           << r.panel_count << " panels)";
        throw NumericError(os.str());
    }
    MellinOracleReport rep;
    rep.value = r.value / pi;
    rep.error_estimate = r.error_estimate / pi;
    rep.integrand_at_truncation = std::abs(integrand(truncation)) / pi;
    rep.panels = r.panel_count;
    return rep;
}

}  // namespace crackpert
