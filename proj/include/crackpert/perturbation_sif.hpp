#ifndef CRACKPERT_PERTURBATION_SIF_HPP
#define CRACKPERT_PERTURBATION_SIF_HPP

#include "crackpert/core_model.hpp"
#include "crackpert/unperturbed_field.hpp"

#include <complex>
#include <optional>

namespace crackpert {

/// Mode III weight functions of the interfacial crack. Every component carries the
/// common phase (1 - i); only the real amplitudes are stored.
struct WeightFunctionSet {
    double eta = 0.0;
    double reduced_modulus = 0.0;

    explicit WeightFunctionSet(const Bimaterial& material)
        : eta(material.eta()), reduced_modulus(material.reduced_modulus())
    {
    }

    static constexpr std::complex<double> phase{1.0, -1.0};
    /// (1 + i)(1 - i): what is left of the phases after the tip limit.
    static constexpr double phase_norm = 2.0;

    /// [[U]](x1) = x1^-1/2 / sqrt(2 pi) for x1 > 0, else 0.
    double symmetric_jump(double x1) const;
    /// <U>(x1) = (eta/2) [[U]](x1).
    double skew_average(double x1) const;
    /// <Sigma>(x1) = mu+ mu- / (2 sqrt(2 pi) (mu+ + mu-)) (-x1)^-3/2 for x1 < 0, else 0.
    double traction_average(double x1) const;
};

/// K_III from the reciprocity identity for loads <sigma>-, [[sigma]]- on the crack
/// faces and jumps [[u]]+, [[sigma]]+ across the interface:
///
///   K = mu+ mu- / (sqrt(2 pi)(mu+ + mu-)) int_0^inf [[u]]+ x^-3/2
///       - sqrt(2/pi) int_-inf^0 (<sigma>- + (eta/2)[[sigma]]-) (-x)^-1/2
///
/// [[sigma]]+ pairs with <U> on x1 < 0, which vanishes, so it is never evaluated.
double sif_from_data(const Bimaterial& material, const LineData& sigma_avg_minus, const LineData& sigma_jump_minus,
                     const LineData& u_jump_plus, const LineData& sigma_jump_plus);

/// First-order boundary data carried by the unperturbed geometry.
struct EffectiveLoads {
    std::optional<Segment> f_plus;   ///< mu+ psi+ du0+/dx1
    std::optional<Segment> f_minus;  ///< mu- psi- du0-/dx1
    std::optional<Segment> g;        ///< -phi [[du0/dx2]]
    std::optional<Segment> h;        ///< (mu+ - mu-) d/dx1 (phi du0/dx1)
};

EffectiveLoads effective_loads(const Scenario& scenario);

/// First-order correction from the crack-face bumps, after two integrations by parts:
///   -(1/sqrt(2 pi)) sum (1 +- eta)/2 int mu u0 d/dx1[(-x1)^-3/2 psi] dx1.
double k1a(const Bimaterial& material, const ThreePointLoad& load, const std::optional<BumpProfile>& psi_plus,
           const std::optional<BumpProfile>& psi_minus);

/// The same quantity straight from sif_from_data with the face loads f+', f-'.
double k1a_via_sif_formula(const Bimaterial& material, const ThreePointLoad& load,
                           const std::optional<BumpProfile>& psi_plus, const std::optional<BumpProfile>& psi_minus);

/// First-order correction from the interface bump, via g = -phi [[du0/dx2]].
double k1b(const Bimaterial& material, const ThreePointLoad& load, const std::optional<BumpProfile>& phi);

/// The displayed I3 form of k1b, kept as an independent check of the factorisation.
double k1b_displayed(const Bimaterial& material, const ThreePointLoad& load, const BumpProfile& phi);

SifBreakdown evaluate(const Scenario& scenario, double epsilon = 0.0);

}  // namespace crackpert

#endif
