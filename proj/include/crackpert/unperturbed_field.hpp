#ifndef CRACKPERT_UNPERTURBED_FIELD_HPP
#define CRACKPERT_UNPERTURBED_FIELD_HPP

#include "crackpert/core_model.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace crackpert {

/// Coefficients of sigma_3theta(r, 0) = (K r^-1/2 + A r^1/2 + B r^3/2) / sqrt(2 pi) + O(r^5/2).
struct TipAsymptotics {
    double k3 = 0.0;
    double a3 = 0.0;
    double b3 = 0.0;

    /// Three-term traction ahead of the tip.
    double traction(double r) const;
    /// Three-term crack opening [[u]](r) behind the tip.
    double opening(const Bimaterial& material, double r) const;
};

/// Prescribed jumps across the interface (x1 > 0): g1 of displacement, g2 of traction.
struct InterfaceDiscontinuity {
    LineData g1;
    LineData g2;
};

/// Unperturbed (eps = 0) Mode III solution for point loads on the crack faces of an
/// infinite bimaterial plane, evaluated through the I1/I2/I3 closed forms.
///
/// A load station is a distance d = -x1 > 0 carrying weights S (symmetric part <p>)
/// and J (skew part [[p]]); every field quantity below is a sum over stations of a
/// kernel evaluated at beta = log(d / |x1|).
class UnperturbedField {
public:
    struct Station {
        double distance = 0.0;
        double average = 0.0;  ///< weight of <p>
        double jump = 0.0;     ///< weight of [[p]]
    };

    UnperturbedField(const Bimaterial& material, const LoadDecomposition& load);
    UnperturbedField(const Bimaterial& material, const ThreePointLoad& load);

    const Bimaterial& material() const noexcept { return material_; }
    const std::vector<Station>& stations() const noexcept { return stations_; }

    /// K_III^0 = -sqrt(2/pi) sum (S + eta J/2) d^-1/2
    double k0() const;

    /// K, A, B with the interface displacement-jump contributions of `disc` (g2 is unused).
    TipAsymptotics tip_asymptotics(const InterfaceDiscontinuity& disc = {}) const;

    /// mu_pm u0_pm(x1) on the upper or lower crack face, x1 < 0.
    double face_displacement(Face face, double x1) const;
    /// d/dx1 of face_displacement.
    double face_displacement_slope(Face face, double x1) const;
    /// d^2/dx1^2 of face_displacement.
    double face_displacement_curvature(Face face, double x1) const;

    /// du0+/dx2 - du0-/dx2 on the interface, x1 > 0.
    double interface_normal_jump(double x1) const;

    /// u0(x1, 0) on the interface, x1 > 0 (continuous across it).
    double interface_displacement(double x1) const;
    /// d/dx1 and d^2/dx1^2 of interface_displacement.
    double interface_displacement_slope(double x1) const;
    double interface_displacement_curvature(double x1) const;

private:
    double face_sum(Face face, double x1, int order) const;
    double check_face_point(Face face, double x1) const;

    Bimaterial material_;
    std::vector<Station> stations_;
};

double k0_point_loads(const Bimaterial& material, const ThreePointLoad& load);

TipAsymptotics tip_asymptotics(const Bimaterial& material, const ThreePointLoad& load,
                               const InterfaceDiscontinuity& disc = {});

double face_displacement(const Bimaterial& material, const ThreePointLoad& load, Face face, double x1);

double interface_normal_jump(const Bimaterial& material, const ThreePointLoad& load, double x1);

/// sum of w |x|^power over point masses plus int density |x|^power over segments,
/// after checking that all data lies strictly on the requested side of the tip.
double pair_with_power(const LineData& data, double power, bool positive_side, const char* what);

// --- Mellin inversion oracle ------------------------------------------------

/// Integration path through s = offset at t = 0: s(t) = offset - slope |t| + i t.
/// slope = 0 is the vertical line Re s = offset. A positive slope bends both arms
/// into Re s < offset (use when x^-s decays there, i.e. x < 1 after scaling), a
/// negative slope into Re s > offset.
struct ContourPath {
    double offset = 0.25;
    double slope = 0.0;
};

struct MellinOracleReport {
    double value = 0.0;
    double error_estimate = 0.0;
    double integrand_at_truncation = 0.0;
    std::size_t panels = 0;
};

class ContourError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

using MellinTransform = std::function<std::complex<double>(std::complex<double>)>;

/// (1/2 pi i) int transform(s) x^{-s} ds along `path`, for transforms of real functions
/// (transform(conj s) = conj transform(s)), truncated at |Im s| = truncation.
/// Test oracle: production code never inverts numerically.
///
/// Throws ContourError when the path starts on a pole of the transform, NumericError
/// when the quadrature does not converge.
MellinOracleReport mellin_inversion_oracle(const MellinTransform& transform, ContourPath path, double x,
                                           double truncation, double tolerance = 1e-12);

}  // namespace crackpert

#endif
