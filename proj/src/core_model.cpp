#include "crackpert/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crackpert {

namespace {

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += "; ";
        out += item;
    }
    return out;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void check_face_forces(const PointForces& forces, const char* face, std::vector<std::string>& out)
{
    for (const auto& f : forces) {
        if (!std::isfinite(f.weight) || !std::isfinite(f.position))
            out.push_back(std::string(face) + " face force is not finite");
        else if (f.position >= 0.0)
            out.push_back(std::string(face) + " face force at x1 = " + fmt(f.position) +
                          " is not on the crack (x1 < 0 required)");
    }
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::invalid_argument(join(violations)), violations_(std::move(violations))
{
}

Bimaterial Bimaterial::from_contrast(double eta)
{
    Bimaterial m{1.0 - eta, 1.0 + eta};
    if (!(eta > -1.0 && eta < 1.0))
        throw ValidationError({"contrast eta = " + fmt(eta) + " outside (-1, 1)"});
    return m;
}

std::vector<std::string> Bimaterial::violations() const
{
    std::vector<std::string> out;
    if (!(mu_plus > 0.0) || !std::isfinite(mu_plus)) out.push_back("mu_plus must be positive and finite");
    if (!(mu_minus > 0.0) || !std::isfinite(mu_minus)) out.push_back("mu_minus must be positive and finite");
    if (out.empty()) {
        const double e = eta();
        if (!(e > -1.0 && e < 1.0)) out.push_back("contrast eta = " + fmt(e) + " outside (-1, 1)");
    }
    return out;
}

PointForces canonical(PointForces forces)
{
    std::sort(forces.begin(), forces.end(),
              [](const PointForce& l, const PointForce& r) { return l.position < r.position; });
    PointForces merged;
    for (const auto& f : forces) {
        if (!merged.empty() && merged.back().position == f.position)
            merged.back().weight += f.weight;
        else
            merged.push_back(f);
    }
    std::erase_if(merged, [](const PointForce& f) { return f.weight == 0.0; });
    return merged;
}

LoadDecomposition LoadDecomposition::scaled(double factor) const
{
    LoadDecomposition out = *this;
    for (auto& f : out.average) f.weight *= factor;
    for (auto& f : out.jump) f.weight *= factor;
    return out;
}

LoadDecomposition decompose_load(const PointForces& p_plus, const PointForces& p_minus)
{
    std::vector<std::string> errors;
    check_face_forces(p_plus, "upper", errors);
    check_face_forces(p_minus, "lower", errors);
    if (!errors.empty()) throw ValidationError(std::move(errors));

    const PointForces plus = canonical(p_plus);
    const PointForces minus = canonical(p_minus);

    // Merge the two sorted position lists.
    LoadDecomposition out;
    std::size_t i = 0, j = 0;
    while (i < plus.size() || j < minus.size()) {
        double wp = 0.0, wm = 0.0, x = 0.0;
        if (j == minus.size() || (i < plus.size() && plus[i].position < minus[j].position)) {
            wp = plus[i].weight;
            x = plus[i++].position;
        } else if (i == plus.size() || minus[j].position < plus[i].position) {
            wm = minus[j].weight;
            x = minus[j++].position;
        } else {
            wp = plus[i].weight;
            wm = minus[j].weight;
            x = plus[i].position;
            ++i;
            ++j;
        }
        if (wp + wm != 0.0) out.average.push_back({(wp + wm) / 2.0, x});
        if (wp - wm != 0.0) out.jump.push_back({wp - wm, x});
    }
    return out;
}

std::pair<PointForces, PointForces> recombine_load(const LoadDecomposition& parts)
{
    PointForces plus, minus;
    for (const auto& f : parts.average) {
        plus.push_back(f);
        minus.push_back(f);
    }
    for (const auto& f : parts.jump) {
        plus.push_back({f.weight / 2.0, f.position});
        minus.push_back({-f.weight / 2.0, f.position});
    }
    return {canonical(std::move(plus)), canonical(std::move(minus))};
}

PointForces ThreePointLoad::upper_face() const { return {{force, -a}}; }

PointForces ThreePointLoad::lower_face() const
{
    return {{force / 2.0, -(a + b)}, {force / 2.0, -(a - b)}};
}

LoadDecomposition ThreePointLoad::decomposition() const
{
    return decompose_load(upper_face(), lower_face());
}

std::vector<std::string> ThreePointLoad::violations() const
{
    std::vector<std::string> out;
    if (!(a > 0.0) || !std::isfinite(a)) out.push_back("load distance a = " + fmt(a) + " must be positive");
    if (!(b >= 0.0) || !std::isfinite(b)) out.push_back("load offset b = " + fmt(b) + " must be >= 0");
    if (out.empty() && !(b < a)) out.push_back("load offset b = " + fmt(b) + " must be < a = " + fmt(a));
    return out;
}

const char* to_string(Face face) noexcept
{
    switch (face) {
    case Face::upper: return "upper";
    case Face::lower: return "lower";
    case Face::interface: return "interface";
    }
    return "?";
}

double BumpProfile::support_lo() const noexcept
{
    return face == Face::interface ? center - half_width : -center - half_width;
}

double BumpProfile::support_hi() const noexcept
{
    return face == Face::interface ? center + half_width : -center + half_width;
}

double BumpProfile::value(double x) const noexcept
{
    if (!in_support(x)) return 0.0;
    const double mid = face == Face::interface ? center : -center;
    const double d2 = half_width * half_width;
    const double t = x - mid;
    // (t + d)^2 (t - d)^2 = (t^2 - d^2)^2
    const double q = (t * t - d2);
    const double sign = face == Face::lower ? -1.0 : 1.0;
    return sign * amplitude * (q * q) / (d2 * d2);
}

double BumpProfile::derivative(double x) const noexcept
{
    if (!in_support(x)) return 0.0;
    const double mid = face == Face::interface ? center : -center;
    const double d2 = half_width * half_width;
    const double t = x - mid;
    const double sign = face == Face::lower ? -1.0 : 1.0;
    return sign * amplitude * 4.0 * t * (t * t - d2) / (d2 * d2);
}

std::vector<std::string> BumpProfile::violations() const
{
    std::vector<std::string> out;
    const std::string who = std::string(to_string(face)) + " bump";
    if (!std::isfinite(amplitude) || !std::isfinite(center) || !std::isfinite(half_width)) {
        out.push_back(who + " has non-finite parameters");
        return out;
    }
    if (!(half_width > 0.0)) out.push_back(who + ": degenerate support (half_width = " + fmt(half_width) + ")");
    if (!(center - half_width > 0.0))
        out.push_back(who + ": support touches the crack tip (c - d = " + fmt(center - half_width) + " <= 0)");
    return out;
}

std::vector<BumpProfile> Scenario::bumps() const
{
    std::vector<BumpProfile> out;
    for (const auto* b : {&upper, &lower, &interface})
        if (*b) out.push_back(**b);
    return out;
}

std::vector<std::string> scenario_violations(const Bimaterial& material, const ThreePointLoad& load,
                                             const std::vector<BumpProfile>& bumps)
{
    std::vector<std::string> out = material.violations();
    const auto load_errors = load.violations();
    out.insert(out.end(), load_errors.begin(), load_errors.end());

    bool seen[3] = {false, false, false};
    for (const auto& bump : bumps) {
        const auto idx = static_cast<int>(bump.face);
        if (seen[idx]) out.push_back(std::string("more than one ") + to_string(bump.face) + " bump");
        seen[idx] = true;

        const auto bump_errors = bump.violations();
        out.insert(out.end(), bump_errors.begin(), bump_errors.end());

        // Face supports must stay strictly behind the nearest load station.
        if (bump.face != Face::interface && load_errors.empty()) {
            const double reach = bump.center + bump.half_width;
            const double nearest = load.a - load.b;
            if (!(reach < nearest))
                out.push_back(std::string(to_string(bump.face)) + " bump overlaps the loading (c + d = " +
                              fmt(reach) + " >= a - b = " + fmt(nearest) + ")");
        }
    }
    return out;
}

Scenario validate_scenario(const Bimaterial& material, const ThreePointLoad& load,
                           const std::vector<BumpProfile>& bumps)
{
    auto errors = scenario_violations(material, load, bumps);
    if (!errors.empty()) throw ValidationError(std::move(errors));

    Scenario s{material, load, std::nullopt, std::nullopt, std::nullopt};
    for (const auto& bump : bumps) {
        switch (bump.face) {
        case Face::upper: s.upper = bump; break;
        case Face::lower: s.lower = bump; break;
        case Face::interface: s.interface = bump; break;
        }
    }
    return s;
}

}  // namespace crackpert
