#include "crackpert/perturbation_sif.hpp"
#include "crackpert/scenario_io.hpp"
#include "crackpert/sweep.hpp"

#include <gtest/gtest.h>

#include <map>
#include <regex>
#include <sstream>

using namespace crackpert;

namespace {

// Table rows transcribed independently: b, (A, c, d) per bump, axis, range.
struct Row {
    const char* id;
    double b;
    double up[3];
    double lo[3];
    double in[3];
    SweepAxis axis;
    double from, to;
};

const Row table[] = {
    {"table1a", 0.0, {0.2, 0.4, 0.1}, {-0.2, 0.4, 0.1}, {}, SweepAxis::b, 0.0, 0.5},
    {"table1b", 0.0, {0.2, 0.4, 0.1}, {0.2, 0.4, 0.1}, {}, SweepAxis::b, 0.0, 0.5},
    {"table1c", 0.2, {0.2, 0.5, 0.0}, {0.0, 0.5, 0.1}, {}, SweepAxis::d_plus, 0.0, 0.3},
    {"table1d", 0.25, {0.0, 0.4, 0.1}, {0.0, 0.4, 0.1}, {}, SweepAxis::a_plus, 0.0, 0.2},
    {"table1e", 0.25, {0.0, 0.4, 0.1}, {0.2, 0.4, 0.1}, {}, SweepAxis::a_plus, 0.0, 0.2},
    {"table1f", 0.25, {0.0, 0.4, 0.1}, {0.0, 0.4, 0.1}, {}, SweepAxis::a_minus, 0.0, 0.2},
    {"table1g", 0.2, {0.2, 0.0, 0.1}, {-0.2, 0.0, 0.1}, {}, SweepAxis::c_plus, 0.1, 0.7},
    {"table1h", 0.2, {0.2, 0.0, 0.1}, {0.2, 0.0, 0.1}, {}, SweepAxis::c_plus, 0.1, 0.7},
    {"table2a", 0.2, {}, {}, {0.2, 0.5, 0.0}, SweepAxis::d_interface, 0.0, 0.5},
    {"table2b", 0.2, {}, {}, {0.0, 0.5, 0.25}, SweepAxis::a_interface, -0.2, 0.2},
    {"table2c", 0.2, {}, {}, {0.2, 0.0, 0.25}, SweepAxis::c_interface, 0.25, 0.75},
    {"table2d", 0.0, {}, {}, {0.2, 0.5, 0.25}, SweepAxis::b, 0.0, 1.0},
};

void expect_bump(const std::optional<BumpProfile>& b, const double (&v)[3], Face face, const char* id)
{
    ASSERT_TRUE(b.has_value()) << id;
    EXPECT_EQ(b->amplitude, v[0]) << id;
    EXPECT_EQ(b->center, v[1]) << id;
    EXPECT_EQ(b->half_width, v[2]) << id;
    EXPECT_EQ(b->face, face) << id;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

SweepSpec small_spec()
{
    auto s = *preset("table1d");
    s.samples = 5;
    return s;
}

}  // namespace

TEST(Presets, MatchTables)
{
    ASSERT_EQ(preset_ids().size(), std::size(table));
    for (const auto& row : table) {
        const auto p = preset(row.id);
        ASSERT_TRUE(p) << row.id;
        EXPECT_EQ(p->load.a, 1.0);
        EXPECT_EQ(p->load.b, row.b) << row.id;
        EXPECT_EQ(p->axis, row.axis) << row.id;
        EXPECT_EQ(p->from, row.from) << row.id;
        EXPECT_EQ(p->to, row.to) << row.id;
        EXPECT_EQ(p->etas, default_eta_grid);
        if (row.id[5] == '1') {
            expect_bump(p->upper, row.up, Face::upper, row.id);
            expect_bump(p->lower, row.lo, Face::lower, row.id);
            EXPECT_FALSE(p->interface);
            EXPECT_EQ(p->output, OutputQuantity::k1_total);
        } else {
            expect_bump(p->interface, row.in, Face::interface, row.id);
            EXPECT_FALSE(p->upper || p->lower);
        }
        EXPECT_TRUE(p->violations().empty()) << row.id << ": " << p->violations().front();
    }
    EXPECT_EQ(preset("table2d")->output, OutputQuantity::k1b_over_k0);
    EXPECT_EQ(preset("table2b")->output, OutputQuantity::k1b);
    EXPECT_FALSE(preset("table3a"));
}

TEST(Presets, SamplesKeepOffOpenEnds)
{
    const auto p = *preset("table1c");
    const auto v = p.sample_values();
    ASSERT_EQ(v.size(), 101u);
    EXPECT_NEAR(v.front(), 0.3e-3, 1e-15);
    EXPECT_NEAR(v.back(), 0.3 - 0.3e-3, 1e-15);
    for (std::size_t k = 1; k < v.size(); ++k) EXPECT_GT(v[k], v[k - 1]);

    auto closed = p;
    closed.open_from = closed.open_to = false;
    EXPECT_EQ(closed.sample_values().front(), 0.0);
    EXPECT_EQ(closed.sample_values().back(), 0.3);
    EXPECT_FALSE(closed.violations().empty());
}

TEST(Presets, AxisSetting)
{
    const auto g = *preset("table1g");
    const auto s = g.at(0.35, 0.5);
    EXPECT_EQ(s.upper->center, 0.35);
    EXPECT_EQ(s.lower->center, 0.35);
    EXPECT_EQ(s.material.mu_plus, 0.5);
    EXPECT_EQ(s.material.mu_minus, 1.5);
    EXPECT_EQ(preset("table2d")->at(0.4, 0.0).load.b, 0.4);
    EXPECT_EQ(preset("table2b")->at(-0.1, 0.0).interface->amplitude, -0.1);
}

TEST(Sweep, CsvLayout)
{
    const auto r = run_sweep(small_spec(), 2);
    std::ostringstream out;
    emit_csv(r, out);
    const auto rows = parse_csv(out.str());
    ASSERT_EQ(rows.size(), 1u + 5 * 5);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "sweep_param,eta,k0,k1a,k1b,output");
    for (std::size_t block = 0; block < 5; ++block) {
        for (std::size_t k = 0; k < 5; ++k) {
            const auto& cells = rows[1 + block * 5 + k];
            ASSERT_EQ(cells.size(), 6u);
            EXPECT_EQ(std::stod(cells[1]), default_eta_grid[block]);
            const double k1a = std::stod(cells[3]), k1b = std::stod(cells[4]);
            EXPECT_NEAR(std::stod(cells[5]), k1a + k1b, 1e-11);
        }
    }
    EXPECT_EQ(std::stod(rows[1][0]), small_spec().sample_values().front());
}

TEST(Sweep, RowsMatchDirectEvaluation)
{
    const auto spec = small_spec();
    const auto r = run_sweep(spec, 3);
    for (const auto& row : r.rows) {
        const auto sif = evaluate(spec.at(row.sweep_value, row.eta));
        EXPECT_EQ(row.k1a, sif.k1a);
        EXPECT_EQ(row.k0, sif.k0);
    }
}

TEST(Sweep, WorkerCountDoesNotChangeBytes)
{
    const auto spec = small_spec();
    std::ostringstream one, four;
    emit_csv(run_sweep(spec, 1), one);
    emit_csv(run_sweep(spec, 4), four);
    EXPECT_EQ(one.str(), four.str());
}

TEST(Sweep, ZeroAmplitudesGiveZeroCorrections)
{
    auto spec = *preset("table1a");
    spec.upper->amplitude = 0.0;
    spec.lower->amplitude = 0.0;
    spec.samples = 3;
    for (const auto& row : run_sweep(spec).rows) {
        EXPECT_EQ(row.k1a, 0.0);
        EXPECT_EQ(row.output, 0.0);
    }
}

TEST(Sweep, Table2dRatio)
{
    auto spec = *preset("table2d");
    spec.samples = 3;
    for (const auto& row : run_sweep(spec).rows) EXPECT_DOUBLE_EQ(row.output, row.k1b / row.k0);
}

TEST(Sweep, ValidationListsSamples)
{
    auto spec = *preset("table1a");
    spec.to = 0.7;  // the load station a - b reaches the bump
    spec.samples = 8;
    try {
        run_sweep(spec);
        FAIL() << "expected rejection";
    } catch (const ValidationError& e) {
        ASSERT_FALSE(e.violations().empty());
        EXPECT_NE(e.violations().front().find("b = "), std::string::npos) << e.violations().front();
        EXPECT_NE(std::string(e.what()).find("overlaps the loading"), std::string::npos);
    }

    auto dup = small_spec();
    dup.etas = {0.5, 0.5};
    EXPECT_FALSE(dup.violations().empty());
    auto missing = small_spec();
    missing.axis = SweepAxis::a_interface;
    EXPECT_THROW(run_sweep(missing), ValidationError);
}

TEST(PlotScript, OneCurvePerEta)
{
    const auto r = run_sweep(small_spec());
    std::ostringstream out;
    emit_plot_script(r, "out.csv", out);
    const std::string s = out.str();
    const std::regex curve("with lines");
    EXPECT_EQ(std::distance(std::sregex_iterator(s.begin(), s.end(), curve), std::sregex_iterator()), 5);
    for (double eta : default_eta_grid) EXPECT_NE(s.find("η = " + format_number(eta)), std::string::npos);
    EXPECT_NE(s.find("'out.csv'"), std::string::npos);

    auto single = small_spec();
    single.etas = {0.3};
    std::ostringstream one;
    emit_plot_script(run_sweep(single), "x.csv", one);
    const std::string t = one.str();
    EXPECT_EQ(std::distance(std::sregex_iterator(t.begin(), t.end(), curve), std::sregex_iterator()), 1);
}

TEST(PlotScript, RatioLabel)
{
    auto spec = *preset("table2d");
    spec.samples = 2;
    std::ostringstream out;
    emit_plot_script(run_sweep(spec), "r.csv", out);
    EXPECT_NE(out.str().find("K_{III}^{1(b)}/K_{III}^{0}"), std::string::npos);
}

TEST(Names, RoundTrip)
{
    for (auto q : {OutputQuantity::k1a, OutputQuantity::k1b, OutputQuantity::k1_total, OutputQuantity::k1b_over_k0})
        EXPECT_EQ(parse_output_quantity(to_string(q)), q);
    for (auto a : {SweepAxis::none, SweepAxis::b, SweepAxis::a_plus, SweepAxis::c_plus, SweepAxis::d_plus,
                   SweepAxis::a_minus, SweepAxis::a_interface, SweepAxis::c_interface, SweepAxis::d_interface})
        EXPECT_EQ(parse_sweep_axis(to_string(a)), a);
    EXPECT_FALSE(parse_sweep_axis("theta"));
    EXPECT_FALSE(parse_output_quantity("k2"));
}

TEST(ScenarioIo, RoundTripsEveryPreset)
{
    for (const auto& id : preset_ids()) {
        const auto p = *preset(id);
        std::ostringstream out;
        write_scenario(p, out);
        std::istringstream in(out.str());
        const auto q = read_scenario(in);
        std::ostringstream again;
        write_scenario(q, again);
        EXPECT_EQ(out.str(), again.str()) << id;
        EXPECT_EQ(q.sample_values(), p.sample_values()) << id;
    }
}

TEST(ScenarioIo, MaterialFixesContrast)
{
    std::istringstream in("# a comment\n[material]\nmu_plus = 1\nmu_minus = 3\n[load]\na = 1\nb = 0.2\n"
                          "[interface_bump]\namplitude = 0.1\ncenter = 0.5\nhalf_width = 0.25\n");
    const auto s = read_scenario(in);
    ASSERT_EQ(s.etas.size(), 1u);
    EXPECT_DOUBLE_EQ(s.etas[0], 0.5);
    EXPECT_EQ(s.axis, SweepAxis::none);
    EXPECT_EQ(s.sample_values(), std::vector<double>{0.0});
    const auto r = run_sweep(s);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_NE(r.rows[0].k1b, 0.0);
}

TEST(ScenarioIo, CollectsAllErrors)
{
    std::istringstream in("[material]\neta = 0.2\nmu_plus = 1\n[load]\na = one\n[upper_bump]\namplitude = 0.1\n"
                          "center = 0.4\ncolour = red\n[sweep]\naxis = theta\nsamples = 2.5\n[extra]\nk = 1\n");
    try {
        read_scenario(in, "bad.ini");
        FAIL() << "expected rejection";
    } catch (const ValidationError& e) {
        const std::string all = e.what();
        for (const char* piece : {"not both", "together", "'one' is not a number", "missing key 'half_width'",
                                  "unknown key 'colour'", "unknown axis 'theta'", "must be an integer",
                                  "unknown section"})
            EXPECT_NE(all.find(piece), std::string::npos) << piece << "\n" << all;
        EXPECT_GE(e.violations().size(), 8u);
        EXPECT_EQ(e.violations().front().rfind("bad.ini", 0), 0u);
    }
}

TEST(ScenarioIo, MissingFile)
{
    EXPECT_THROW(read_scenario_file("/nonexistent/scenario.ini"), ValidationError);
}
