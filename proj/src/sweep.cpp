#include "crackpert/sweep.hpp"

#include "crackpert/perturbation_sif.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <ostream>
#include <thread>

namespace crackpert {

namespace {

struct AxisName {
    SweepAxis axis;
    const char* name;
};

constexpr AxisName axis_names[] = {
    {SweepAxis::none, "none"},       {SweepAxis::b, "b"},
    {SweepAxis::a_plus, "A_plus"},   {SweepAxis::c_plus, "c_plus"},
    {SweepAxis::d_plus, "d_plus"},   {SweepAxis::a_minus, "A_minus"},
    {SweepAxis::a_interface, "A"},   {SweepAxis::c_interface, "c"},
    {SweepAxis::d_interface, "d"},
};

struct QuantityName {
    OutputQuantity q;
    const char* name;
};

constexpr QuantityName quantity_names[] = {
    {OutputQuantity::k1a, "k1a"},
    {OutputQuantity::k1b, "k1b"},
    {OutputQuantity::k1_total, "k1_total"},
    {OutputQuantity::k1b_over_k0, "k1b_over_k0"},
};

BumpProfile bump(Face face, double amplitude, double center, double half_width)
{
    return BumpProfile{amplitude, center, half_width, face};
}

SweepSpec table1(const char* id, double b, BumpProfile upper, BumpProfile lower, SweepAxis axis, double from,
                 double to)
{
    SweepSpec s;
    s.id = id;
    s.load = ThreePointLoad{1.0, b};
    s.upper = upper;
    s.lower = lower;
    s.axis = axis;
    s.from = from;
    s.to = to;
    s.output = OutputQuantity::k1_total;
    return s;
}

SweepSpec table2(const char* id, double b, BumpProfile phi, SweepAxis axis, double from, double to,
                 OutputQuantity output)
{
    SweepSpec s;
    s.id = id;
    s.load = ThreePointLoad{1.0, b};
    s.interface = phi;
    s.axis = axis;
    s.from = from;
    s.to = to;
    s.output = output;
    return s;
}

// The swept entry of each row holds a placeholder 0; it is overwritten per sample.
std::vector<SweepSpec> make_presets()
{
    const Face up = Face::upper, lo = Face::lower, in = Face::interface;
    return {
        table1("table1a", 0.0, bump(up, 0.2, 0.4, 0.1), bump(lo, -0.2, 0.4, 0.1), SweepAxis::b, 0.0, 0.5),
        table1("table1b", 0.0, bump(up, 0.2, 0.4, 0.1), bump(lo, 0.2, 0.4, 0.1), SweepAxis::b, 0.0, 0.5),
        table1("table1c", 0.2, bump(up, 0.2, 0.5, 0.0), bump(lo, 0.0, 0.5, 0.1), SweepAxis::d_plus, 0.0, 0.3),
        table1("table1d", 0.25, bump(up, 0.0, 0.4, 0.1), bump(lo, 0.0, 0.4, 0.1), SweepAxis::a_plus, 0.0, 0.2),
        table1("table1e", 0.25, bump(up, 0.0, 0.4, 0.1), bump(lo, 0.2, 0.4, 0.1), SweepAxis::a_plus, 0.0, 0.2),
        table1("table1f", 0.25, bump(up, 0.0, 0.4, 0.1), bump(lo, 0.0, 0.4, 0.1), SweepAxis::a_minus, 0.0, 0.2),
        table1("table1g", 0.2, bump(up, 0.2, 0.0, 0.1), bump(lo, -0.2, 0.0, 0.1), SweepAxis::c_plus, 0.1, 0.7),
        table1("table1h", 0.2, bump(up, 0.2, 0.0, 0.1), bump(lo, 0.2, 0.0, 0.1), SweepAxis::c_plus, 0.1, 0.7),
        table2("table2a", 0.2, bump(in, 0.2, 0.5, 0.0), SweepAxis::d_interface, 0.0, 0.5, OutputQuantity::k1b),
        table2("table2b", 0.2, bump(in, 0.0, 0.5, 0.25), SweepAxis::a_interface, -0.2, 0.2, OutputQuantity::k1b),
        table2("table2c", 0.2, bump(in, 0.2, 0.0, 0.25), SweepAxis::c_interface, 0.25, 0.75, OutputQuantity::k1b),
        table2("table2d", 0.0, bump(in, 0.2, 0.5, 0.25), SweepAxis::b, 0.0, 1.0, OutputQuantity::k1b_over_k0),
    };
}

const std::vector<SweepSpec>& presets()
{
    static const std::vector<SweepSpec> all = make_presets();
    return all;
}

void set_axis(SweepSpec& s, double value)
{
    switch (s.axis) {
    case SweepAxis::none: break;
    case SweepAxis::b: s.load.b = value; break;
    case SweepAxis::a_plus: s.upper->amplitude = value; break;
    case SweepAxis::d_plus: s.upper->half_width = value; break;
    case SweepAxis::c_plus:
        s.upper->center = value;
        s.lower->center = value;
        break;
    case SweepAxis::a_minus: s.lower->amplitude = value; break;
    case SweepAxis::a_interface: s.interface->amplitude = value; break;
    case SweepAxis::c_interface: s.interface->center = value; break;
    case SweepAxis::d_interface: s.interface->half_width = value; break;
    }
}

bool axis_target_present(const SweepSpec& s)
{
    switch (s.axis) {
    case SweepAxis::none:
    case SweepAxis::b: return true;
    case SweepAxis::a_plus:
    case SweepAxis::d_plus: return s.upper.has_value();
    case SweepAxis::c_plus: return s.upper.has_value() && s.lower.has_value();
    case SweepAxis::a_minus: return s.lower.has_value();
    default: return s.interface.has_value();
    }
}

std::vector<BumpProfile> bumps_of(const SweepSpec& s)
{
    std::vector<BumpProfile> out;
    if (s.upper) out.push_back(*s.upper);
    if (s.lower) out.push_back(*s.lower);
    if (s.interface) out.push_back(*s.interface);
    return out;
}

double select_output(OutputQuantity q, const SifBreakdown& sif)
{
    switch (q) {
    case OutputQuantity::k1a: return sif.k1a;
    case OutputQuantity::k1b: return sif.k1b;
    case OutputQuantity::k1_total: return sif.k1();
    case OutputQuantity::k1b_over_k0:
        if (sif.k0 == 0.0) throw NumericError("k1b_over_k0: K0 vanished");
        return sif.k1b / sif.k0;
    }
    return 0.0;
}

const char* axis_label(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::none: return "sample";
    case SweepAxis::b: return "b/a";
    case SweepAxis::a_plus: return "A_+/a";
    case SweepAxis::c_plus: return "c_+/a";
    case SweepAxis::d_plus: return "d_+/a";
    case SweepAxis::a_minus: return "A_-/a";
    case SweepAxis::a_interface: return "A/a";
    case SweepAxis::c_interface: return "c/a";
    case SweepAxis::d_interface: return "d/a";
    }
    return "";
}

const char* quantity_label(OutputQuantity q)
{
    switch (q) {
    case OutputQuantity::k1a: return "K_{III}^{1(a)}";
    case OutputQuantity::k1b: return "K_{III}^{1(b)}";
    case OutputQuantity::k1_total: return "K_{III}^{1}";
    case OutputQuantity::k1b_over_k0: return "K_{III}^{1(b)}/K_{III}^{0}";
    }
    return "";
}

constexpr const char* curve_colors[] = {"green", "orange", "red", "blue", "black"};

}  // namespace

const char* to_string(OutputQuantity q) noexcept
{
    for (const auto& n : quantity_names)
        if (n.q == q) return n.name;
    return "?";
}

std::optional<OutputQuantity> parse_output_quantity(const std::string& name)
{
    for (const auto& n : quantity_names)
        if (name == n.name) return n.q;
    return std::nullopt;
}

const char* to_string(SweepAxis axis) noexcept
{
    for (const auto& n : axis_names)
        if (n.axis == axis) return n.name;
    return "?";
}

std::optional<SweepAxis> parse_sweep_axis(const std::string& name)
{
    for (const auto& n : axis_names)
        if (name == n.name) return n.axis;
    return std::nullopt;
}

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<double> SweepSpec::sample_values() const
{
    if (axis == SweepAxis::none) return {0.0};
    const double span = to - from;
    const double lo = open_from ? from + open_end_margin * span : from;
    const double hi = open_to ? to - open_end_margin * span : to;
    if (samples == 1) return {0.5 * (lo + hi)};
    std::vector<double> v(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) v[k] = lo + (hi - lo) * k / (samples - 1);
    return v;
}

Scenario SweepSpec::at(double value, double eta) const
{
    SweepSpec copy = *this;
    set_axis(copy, value);
    return validate_scenario(Bimaterial::from_contrast(eta), copy.load, bumps_of(copy));
}

std::vector<std::string> SweepSpec::violations() const
{
    std::vector<std::string> out;
    if (samples < 1) out.push_back("samples must be >= 1");
    if (axis != SweepAxis::none && !(from < to)) out.push_back("sweep range must satisfy from < to");
    if (!axis_target_present(*this))
        out.push_back(std::string("sweep axis ") + to_string(axis) + " refers to a bump that is not defined");
    if (etas.empty()) out.push_back("eta list is empty");
    for (std::size_t k = 0; k < etas.size(); ++k) {
        if (!(etas[k] > -1.0 && etas[k] < 1.0)) out.push_back("eta = " + format_number(etas[k]) + " outside (-1, 1)");
        if (std::find(etas.begin(), etas.begin() + k, etas[k]) != etas.begin() + k)
            out.push_back("eta = " + format_number(etas[k]) + " listed twice");
    }
    if (!out.empty()) return out;

    for (double v : sample_values()) {
        SweepSpec copy = *this;
        set_axis(copy, v);
        for (const auto& e : scenario_violations(Bimaterial::from_contrast(etas.front()), copy.load, bumps_of(copy)))
            out.push_back(std::string(to_string(axis)) + " = " + format_number(v) + ": " + e);
    }
    return out;
}

const std::vector<std::string>& preset_ids()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& p : presets()) v.push_back(p.id);
        return v;
    }();
    return ids;
}

std::optional<SweepSpec> preset(const std::string& id)
{
    for (const auto& p : presets())
        if (p.id == id) return p;
    return std::nullopt;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned workers)
{
    auto errors = spec.violations();
    if (!errors.empty()) throw ValidationError(std::move(errors));

    const auto values = spec.sample_values();
    const std::size_t n_eta = spec.etas.size();
    const std::size_t total = values.size() * n_eta;

    SweepResult result;
    result.id = spec.id;
    result.axis = spec.axis;
    result.output = spec.output;
    result.etas = spec.etas;
    result.rows.resize(total);

    std::vector<std::exception_ptr> failures(total);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            const double v = values[i / n_eta];
            const double eta = spec.etas[i % n_eta];
            try {
                const SifBreakdown sif = evaluate(spec.at(v, eta));
                result.rows[i] = {v, eta, sif.k0, sif.k1a, sif.k1b, select_output(spec.output, sif)};
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::max<std::size_t>(total, 1)));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);
    return result;
}

void emit_csv(const SweepResult& result, std::ostream& out)
{
    out << "sweep_param,eta,k0,k1a,k1b,output\n";
    // Rows are stored sweep-major; each eta gets one contiguous block.
    for (double eta : result.etas) {
        for (const auto& r : result.rows) {
            if (r.eta != eta) continue;
            out << format_number(r.sweep_value) << ',' << format_number(r.eta) << ',' << format_number(r.k0) << ','
                << format_number(r.k1a) << ',' << format_number(r.k1b) << ',' << format_number(r.output) << '\n';
        }
    }
    if (!out) throw std::ios_base::failure("emit_csv: write failed");
}

void emit_plot_script(const SweepResult& result, const std::string& csv_path, std::ostream& out)
{
    out << "# " << result.id << ": " << to_string(result.output) << " against " << to_string(result.axis) << "\n"
        << "# tolerances: abs " << format_number(result.abs_tol) << ", rel " << format_number(result.rel_tol) << "\n"
        << "set encoding utf8\n"
        << "set datafile separator ','\n"
        << "set key outside right\n"
        << "set xlabel '" << axis_label(result.axis) << "'\n"
        << "set ylabel '" << quantity_label(result.output) << "'\n"
        << "plot";
    for (std::size_t k = 0; k < result.etas.size(); ++k) {
        const std::string eta = format_number(result.etas[k]);
        out << (k == 0 ? " " : ", \\\n     ") << "'" << csv_path << "' every ::1 using 1:(abs($2 - (" << eta
            << ")) < 1e-9 ? $6 : 1/0) with lines lw 2 lc rgb '" << curve_colors[k % 5] << "' title '" << k + 1
            << ": η = " << eta << "'";
    }
    out << "\n";
    if (!out) throw std::ios_base::failure("emit_plot_script: write failed");
}

}  // namespace crackpert
