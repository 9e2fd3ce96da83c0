#ifndef CRACKPERT_CORE_MODEL_HPP
#define CRACKPERT_CORE_MODEL_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crackpert {

/// Raised when a scenario or input violates a domain constraint.
/// Carries every violated constraint, not just the first.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Quadrature or oracle failed to reach its tolerance.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation point outside the domain of a field quantity.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Upper (x2 > 0) and lower (x2 < 0) half-planes joined along x1 > 0.
struct Bimaterial {
    double mu_plus = 1.0;
    double mu_minus = 1.0;

    /// (mu_minus - mu_plus) / (mu_plus + mu_minus)
    double eta() const noexcept { return (mu_minus - mu_plus) / (mu_plus + mu_minus); }

    /// mu_plus mu_minus / (mu_plus + mu_minus)
    double reduced_modulus() const noexcept { return mu_plus * mu_minus / (mu_plus + mu_minus); }

    /// Moduli normalised so that mu_plus + mu_minus = 2.
    static Bimaterial from_contrast(double eta);

    std::vector<std::string> violations() const;
};

/// Weighted Dirac mass at a signed coordinate x1.
struct PointForce {
    double weight = 0.0;
    double position = 0.0;

    friend bool operator==(const PointForce&, const PointForce&) = default;
};

using PointForces = std::vector<PointForce>;

/// Merges equal positions, drops zero weights and sorts by position.
PointForces canonical(PointForces forces);

/// Symmetric part <p> = (p+ + p-)/2 and skew part [[p]] = p+ - p- of a crack-face load.
struct LoadDecomposition {
    PointForces average;
    PointForces jump;

    LoadDecomposition scaled(double factor) const;
};

/// Throws ValidationError if any force sits at x1 >= 0 or has a non-finite weight.
LoadDecomposition decompose_load(const PointForces& p_plus, const PointForces& p_minus);

/// Inverse of decompose_load: p+ = <p> + [[p]]/2, p- = <p> - [[p]]/2.
std::pair<PointForces, PointForces> recombine_load(const LoadDecomposition& parts);

/// One force F on the upper face at distance a behind the tip and two forces F/2 on
/// the lower face at a - b and a + b. F is normalised to 1.
struct ThreePointLoad {
    static constexpr double force = 1.0;

    double a = 1.0;
    double b = 0.0;

    PointForces upper_face() const;
    PointForces lower_face() const;
    LoadDecomposition decomposition() const;

    std::vector<std::string> violations() const;
};

enum class Face { upper, lower, interface };

const char* to_string(Face face) noexcept;

/// Quartic bump with double zeros at both ends of its support.
///
/// Crack faces (x1 < 0): psi(x) = +-(A/d^4) (x + c + d)^2 (x + c - d)^2 on [-c-d, -c+d],
/// with + on the upper face and - on the lower face.
/// Interface (x1 > 0):   phi(x) = (A/d^4) (x - c + d)^2 (x - c - d)^2 on [c-d, c+d].
struct BumpProfile {
    double amplitude = 0.0;
    double center = 0.0;
    double half_width = 0.0;
    Face face = Face::upper;

    double support_lo() const noexcept;
    double support_hi() const noexcept;
    bool in_support(double x) const noexcept { return x >= support_lo() && x <= support_hi(); }

    double value(double x) const noexcept;
    double derivative(double x) const noexcept;

    std::vector<std::string> violations() const;
};

/// A density on a closed interval; zero outside it.
struct Segment {
    double lo = 0.0;
    double hi = 0.0;
    std::function<double(double)> density;
};

/// Line data (tractions or displacement jumps) as point masses plus densities.
struct LineData {
    PointForces points;
    std::vector<Segment> segments;

    bool empty() const noexcept { return points.empty() && segments.empty(); }
};

/// A validated problem instance: material, loading and up to one bump per face.
struct Scenario {
    Bimaterial material;
    ThreePointLoad load;
    std::optional<BumpProfile> upper;
    std::optional<BumpProfile> lower;
    std::optional<BumpProfile> interface;

    std::vector<BumpProfile> bumps() const;
};

/// Every violated constraint of the combination; empty when valid.
std::vector<std::string> scenario_violations(const Bimaterial& material, const ThreePointLoad& load,
                                             const std::vector<BumpProfile>& bumps);

/// Returns the assembled scenario or throws ValidationError listing all violations.
Scenario validate_scenario(const Bimaterial& material, const ThreePointLoad& load,
                           const std::vector<BumpProfile>& bumps);

/// K_III(eps) = K0 + eps (K1a + K1b), with the next two tip coefficients of the
/// unperturbed traction.
struct SifBreakdown {
    double k0 = 0.0;
    double k1a = 0.0;
    double k1b = 0.0;
    double epsilon = 0.0;
    double a_coeff = 0.0;
    double b_coeff = 0.0;

    double k1() const noexcept { return k1a + k1b; }
    double assembled() const noexcept { return k0 + epsilon * (k1a + k1b); }
};

}  // namespace crackpert

#endif
