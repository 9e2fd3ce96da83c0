#ifndef CRACKPERT_SWEEP_HPP
#define CRACKPERT_SWEEP_HPP

#include "crackpert/core_model.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace crackpert {

enum class OutputQuantity { k1a, k1b, k1_total, k1b_over_k0 };

const char* to_string(OutputQuantity q) noexcept;
std::optional<OutputQuantity> parse_output_quantity(const std::string& name);

/// The parameter varied along a sweep. c_plus moves both face bumps (c- = c+).
enum class SweepAxis { none, b, a_plus, c_plus, d_plus, a_minus, a_interface, c_interface, d_interface };

const char* to_string(SweepAxis axis) noexcept;
std::optional<SweepAxis> parse_sweep_axis(const std::string& name);

/// Contrast values and curve colours of the figures.
inline const std::vector<double> default_eta_grid = {-0.99, -0.5, 0.0, 0.5, 0.99};

/// Relative shrink applied at each open end of a sweep range.
inline constexpr double open_end_margin = 1e-3;
inline constexpr int default_samples = 101;

struct SweepSpec {
    std::string id = "custom";
    ThreePointLoad load;
    std::optional<BumpProfile> upper;
    std::optional<BumpProfile> lower;
    std::optional<BumpProfile> interface;

    SweepAxis axis = SweepAxis::none;
    double from = 0.0;
    double to = 0.0;
    bool open_from = true;
    bool open_to = true;
    int samples = default_samples;

    std::vector<double> etas = default_eta_grid;
    OutputQuantity output = OutputQuantity::k1_total;

    /// Axis values; a single 0 when there is no axis.
    std::vector<double> sample_values() const;

    /// Material mu+ = 1 - eta, mu- = 1 + eta; the axis parameter set to `value`.
    Scenario at(double value, double eta) const;

    /// Every violation over all samples, each prefixed by its sample.
    std::vector<std::string> violations() const;
};

/// The rows of Tables 1 and 2 of the figures, table1a ... table1h, table2a ... table2d.
const std::vector<std::string>& preset_ids();
std::optional<SweepSpec> preset(const std::string& id);

struct SweepRow {
    double sweep_value = 0.0;
    double eta = 0.0;
    double k0 = 0.0;
    double k1a = 0.0;
    double k1b = 0.0;
    double output = 0.0;
};

struct SweepResult {
    std::string id;
    SweepAxis axis = SweepAxis::none;
    OutputQuantity output = OutputQuantity::k1_total;
    std::vector<double> etas;
    std::vector<SweepRow> rows;  ///< sweep value major, eta minor
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
};

/// Evaluates every (sample, eta) pair on up to `workers` threads.
/// Throws ValidationError (listing the offending samples) before any evaluation.
SweepResult run_sweep(const SweepSpec& spec, unsigned workers = 1);

/// sweep_param,eta,k0,k1a,k1b,output with one contiguous block per eta.
void emit_csv(const SweepResult& result, std::ostream& out);

/// Gnuplot script drawing one curve per eta from `csv_path`.
void emit_plot_script(const SweepResult& result, const std::string& csv_path, std::ostream& out);

std::string format_number(double v);

}  // namespace crackpert

#endif
