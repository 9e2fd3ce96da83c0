#include "crackpert/perturbation_sif.hpp"

#include "crackpert/quadrature.hpp"
#include "crackpert/special_integrals.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace crackpert {

namespace {

constexpr double pi = std::numbers::pi;
const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * pi);

// Support endpoints closer than this to a load station get a logarithmic hint.
constexpr double near_station = 1e-3;

double integrate_support(const std::function<double(double)>& f, double lo, double hi,
                         const std::vector<UnperturbedField::Station>& stations, const char* what)
{
    quadrature::Request req;
    req.integrand = f;
    req.lo = lo;
    req.hi = hi;
    req.abs_tol = 1e-12;
    req.rel_tol = 1e-10;
    for (const auto& st : stations) {
        if (std::abs(lo + st.distance) < near_station) req.lo_end = quadrature::Endpoint::logarithmic();
        if (std::abs(hi + st.distance) < near_station) req.hi_end = quadrature::Endpoint::logarithmic();
    }
    return quadrature::integrate_checked(req, what);
}

void require_face(const BumpProfile& bump, Face face, const char* what)
{
    if (bump.face != face) {
        std::ostringstream os;
        os << what << ": expected a bump on the " << to_string(face) << ", got " << to_string(bump.face);
        throw ValidationError({os.str()});
    }
    auto errors = bump.violations();
    if (!errors.empty()) throw ValidationError(std::move(errors));
}

void require_load(const ThreePointLoad& load)
{
    auto errors = load.violations();
    if (!errors.empty()) throw ValidationError(std::move(errors));
}

/// (1 +- eta)/2 for the upper/lower face.
double face_weight(const Bimaterial& material, Face face)
{
    return face == Face::upper ? 0.5 * (1.0 + material.eta()) : 0.5 * (1.0 - material.eta());
}

double face_k1a(const UnperturbedField& field, const BumpProfile& psi)
{
    if (psi.amplitude == 0.0) return 0.0;
    const auto integrand = [&](double x) {
        const double r = -x;
        const double bracket = std::pow(r, -2.5) * (1.5 * psi.value(x) + r * psi.derivative(x));
        return field.face_displacement(psi.face, x) * bracket;
    };
    const double integral =
        integrate_support(integrand, psi.support_lo(), psi.support_hi(), field.stations(), "k1a");
    return -inv_sqrt_2pi * face_weight(field.material(), psi.face) * integral;
}

/// d/dx1 of f = psi (mu u0)', zero outside the support.
Segment face_load_derivative(const UnperturbedField& field, const BumpProfile& psi, double scale)
{
    const auto* f = &field;
    return {psi.support_lo(), psi.support_hi(), [f, psi, scale](double x) {
                return scale * (psi.derivative(x) * f->face_displacement_slope(psi.face, x) +
                                psi.value(x) * f->face_displacement_curvature(psi.face, x));
            }};
}

}  // namespace

double WeightFunctionSet::symmetric_jump(double x1) const
{
    return x1 > 0.0 ? inv_sqrt_2pi / std::sqrt(x1) : 0.0;
}

double WeightFunctionSet::skew_average(double x1) const { return 0.5 * eta * symmetric_jump(x1); }

double WeightFunctionSet::traction_average(double x1) const
{
    return x1 < 0.0 ? 0.5 * reduced_modulus * inv_sqrt_2pi * std::pow(-x1, -1.5) : 0.0;
}

double sif_from_data(const Bimaterial& material, const LineData& sigma_avg_minus, const LineData& sigma_jump_minus,
                     const LineData& u_jump_plus, const LineData& /*sigma_jump_plus*/)
{
    auto errors = material.violations();
    if (!errors.empty()) throw ValidationError(std::move(errors));
    const WeightFunctionSet w(material);

    // Each datum is paired with the weight function at the reflected point -x1.
    const auto pair = [](const LineData& data, bool positive_side, const std::function<double(double)>& kernel,
                         const char* what) {
        const auto on_side = [&](double x) { return positive_side ? x > 0.0 : x < 0.0; };
        double sum = 0.0;
        for (const auto& p : data.points) {
            if (!on_side(p.position)) {
                std::ostringstream os;
                os << what << ": point datum at x1 = " << p.position << " is on the wrong side of the tip";
                throw DomainError(os.str());
            }
            sum += p.weight * kernel(-p.position);
        }
        for (const auto& seg : data.segments) {
            if (!(seg.lo < seg.hi) || !on_side(seg.lo) || !on_side(seg.hi)) {
                std::ostringstream os;
                os << what << ": support [" << seg.lo << ", " << seg.hi << "] touches the tip or the wrong side";
                throw DomainError(os.str());
            }
            const auto& density = seg.density;
            sum += quadrature::integrate_smooth([&](double x) { return density(x) * kernel(-x); }, seg.lo, seg.hi,
                                                what);
        }
        return sum;
    };

    const auto jump_u = [&w](double x) { return w.symmetric_jump(x); };
    const auto avg_u = [&w](double x) { return w.skew_average(x); };
    const auto avg_sigma = [&w](double x) { return w.traction_average(x); };

    const double faces = pair(sigma_avg_minus, false, jump_u, "sif_from_data <sigma>-") +
                         pair(sigma_jump_minus, false, avg_u, "sif_from_data [[sigma]]-");
    const double interface = pair(u_jump_plus, true, avg_sigma, "sif_from_data [[u]]+");
    return WeightFunctionSet::phase_norm * (interface - faces);
}

EffectiveLoads effective_loads(const Scenario& scenario)
{
    const UnperturbedField field(scenario.material, scenario.load);
    EffectiveLoads out;
    const auto face_load = [&field](const BumpProfile& psi) {
        return Segment{psi.support_lo(), psi.support_hi(),
                       [field, psi](double x) { return psi.value(x) * field.face_displacement_slope(psi.face, x); }};
    };
    if (scenario.upper) out.f_plus = face_load(*scenario.upper);
    if (scenario.lower) out.f_minus = face_load(*scenario.lower);
    if (scenario.interface) {
        const BumpProfile phi = *scenario.interface;
        const double contrast = scenario.material.mu_plus - scenario.material.mu_minus;
        out.g = Segment{phi.support_lo(), phi.support_hi(),
                        [field, phi](double x) { return -phi.value(x) * field.interface_normal_jump(x); }};
        out.h = Segment{phi.support_lo(), phi.support_hi(), [field, phi, contrast](double x) {
                            return contrast * (phi.derivative(x) * field.interface_displacement_slope(x) +
                                               phi.value(x) * field.interface_displacement_curvature(x));
                        }};
    }
    return out;
}

double k1a(const Bimaterial& material, const ThreePointLoad& load, const std::optional<BumpProfile>& psi_plus,
           const std::optional<BumpProfile>& psi_minus)
{
    require_load(load);
    if (psi_plus) require_face(*psi_plus, Face::upper, "k1a");
    if (psi_minus) require_face(*psi_minus, Face::lower, "k1a");
    const UnperturbedField field(material, load);
    double k = 0.0;
    if (psi_plus) k += face_k1a(field, *psi_plus);
    if (psi_minus) k += face_k1a(field, *psi_minus);
    return k;
}

double k1a_via_sif_formula(const Bimaterial& material, const ThreePointLoad& load,
                           const std::optional<BumpProfile>& psi_plus, const std::optional<BumpProfile>& psi_minus)
{
    require_load(load);
    if (psi_plus) require_face(*psi_plus, Face::upper, "k1a_via_sif_formula");
    if (psi_minus) require_face(*psi_minus, Face::lower, "k1a_via_sif_formula");
    const UnperturbedField field(material, load);

    // <sigma> = (f+' + f-')/2, [[sigma]] = f+' - f-'
    LineData avg, jump;
    if (psi_plus && psi_plus->amplitude != 0.0) {
        avg.segments.push_back(face_load_derivative(field, *psi_plus, 0.5));
        jump.segments.push_back(face_load_derivative(field, *psi_plus, 1.0));
    }
    if (psi_minus && psi_minus->amplitude != 0.0) {
        avg.segments.push_back(face_load_derivative(field, *psi_minus, 0.5));
        jump.segments.push_back(face_load_derivative(field, *psi_minus, -1.0));
    }
    return sif_from_data(material, avg, jump, {}, {});
}

double k1b(const Bimaterial& material, const ThreePointLoad& load, const std::optional<BumpProfile>& phi)
{
    require_load(load);
    if (!phi) return 0.0;
    require_face(*phi, Face::interface, "k1b");
    if (material.eta() == 0.0 || phi->amplitude == 0.0) return 0.0;
    const UnperturbedField field(material, load);
    const auto integrand = [&](double x) { return -phi->value(x) * field.interface_normal_jump(x) * std::pow(x, -1.5); };
    const double integral =
        integrate_support(integrand, phi->support_lo(), phi->support_hi(), field.stations(), "k1b");
    return inv_sqrt_2pi * material.reduced_modulus() * integral;
}

double k1b_displayed(const Bimaterial& material, const ThreePointLoad& load, const BumpProfile& phi)
{
    require_load(load);
    require_face(phi, Face::interface, "k1b_displayed");
    const double eta = material.eta();
    const double a = load.a, b = load.b;
    const auto integrand = [&](double x) {
        const double kernel = (1.0 + eta) * i3_closed(std::log(a / x)) +
                              0.5 * (1.0 - eta) * i3_closed(std::log((a + b) / x)) +
                              0.5 * (1.0 - eta) * i3_closed(std::log((a - b) / x));
        return kernel * std::pow(x, -2.5) * phi.value(x);
    };
    const double integral = quadrature::integrate_smooth(integrand, phi.support_lo(), phi.support_hi(),
                                                         "k1b_displayed", 1e-13, 1e-12);
    return ThreePointLoad::force * eta * 0.5 * inv_sqrt_2pi * integral;
}

SifBreakdown evaluate(const Scenario& scenario, double epsilon)
{
    if (!(epsilon >= 0.0)) throw ValidationError({"epsilon must be >= 0"});
    const UnperturbedField field(scenario.material, scenario.load);
    const TipAsymptotics tip = field.tip_asymptotics();
    SifBreakdown out;
    out.k0 = tip.k3;
    out.a_coeff = tip.a3;
    out.b_coeff = tip.b3;
    out.epsilon = epsilon;
    out.k1a = k1a(scenario.material, scenario.load, scenario.upper, scenario.lower);
    out.k1b = k1b(scenario.material, scenario.load, scenario.interface);
    return out;
}

}  // namespace crackpert
