#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "plasmatune/config.hpp"
#include "plasmatune/csv.hpp"
#include "plasmatune/touchstone.hpp"
#include "plasmatune/units.hpp"
#include "tempdir.hpp"

namespace pt = plasmatune;
using pt::Complex;
using pt::Dimension;

namespace {

pt::NetworkSweep random_sweep(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<pt::SMatrix2> p;
    for (std::size_t i = 0; i < n; ++i) p.push_back(fixtures::random_passive(rng));
    return {pt::FrequencyGrid::linear(3e9, 4e9, n), p};
}

void expect_same(const pt::NetworkSweep& a, const pt::NetworkSweep& b, double tol) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a.grid[i], b.grid[i], tol * a.grid[i]);
        EXPECT_TRUE(pt::near(a.params[i].s11, b.params[i].s11, tol));
        EXPECT_TRUE(pt::near(a.params[i].s12, b.params[i].s12, tol));
        EXPECT_TRUE(pt::near(a.params[i].s21, b.params[i].s21, tol));
        EXPECT_TRUE(pt::near(a.params[i].s22, b.params[i].s22, tol));
        EXPECT_EQ(a.params[i].z0, b.params[i].z0);
    }
}

std::size_t parse_error_line(std::string_view text) {
    try {
        pt::parse_touchstone(text);
    } catch (const pt::ParseError& e) {
        return e.line();
    }
    return 0;
}

const char* kMinimalConfig = R"(
z0: 50ohm
substrate: {eps_r: 3.45, tan_delta: 0.002, height: 30mil, copper_thickness: 17.5um, conductivity: 5.8e7S/m}
capacitors:
  blk: {capacitance: 7.5pF, esl: 0.07nH, esr: 0.1ohm}
inductors:
  rfc: {inductance: 15nH, c_par: 0.05pF, r_series: 0.2ohm}
cells:
  gdt: {c_off: 0.5pF, r_on: 2ohm, c_sheath: 10pF}
tuner:
  sections:
    - {width: 1.6764mm, length: 4mm}
    - {width: 1.6764mm, length: 9mm}
    - {width: 1.6764mm, length: 15mm}
  stubs:
    - {width: 1.6764mm, length: 6.5mm, cell: gdt, dc_block: blk, bias_choke: rfc, termination: short}
    - {width: 1.6764mm, length: 11mm, cell: {c_off: 0.6pF, r_on: 3ohm, c_sheath: 12pF}, termination: open}
sweep: {start: 3GHz, stop: 4GHz, count: 11}
)";

} // namespace

TEST(Units, ParsesPrefixedQuantities) {
    EXPECT_DOUBLE_EQ(pt::parse_quantity("7.5pF", Dimension::capacitance), 7.5e-12);
    EXPECT_DOUBLE_EQ(pt::parse_quantity("15nH", Dimension::inductance), 15e-9);
    EXPECT_DOUBLE_EQ(pt::parse_quantity("3.93GHz", Dimension::frequency), 3.93e9);
    EXPECT_DOUBLE_EQ(pt::parse_quantity("30mil", Dimension::length), 30 * 25.4e-6);
    EXPECT_DOUBLE_EQ(pt::parse_quantity("1.6764mm", Dimension::length), 1.6764e-3);
    EXPECT_DOUBLE_EQ(pt::parse_quantity(" 183 ns ", Dimension::time), 183e-9);
    EXPECT_DOUBLE_EQ(pt::parse_quantity("1e20/m3", Dimension::density), 1e20);
    EXPECT_DOUBLE_EQ(pt::parse_quantity("1e14/cm3", Dimension::density), 1e20);
    EXPECT_DOUBLE_EQ(pt::parse_quantity("2mm2", Dimension::area), 2e-6);
    EXPECT_DOUBLE_EQ(pt::parse_quantity("0.1ohm", Dimension::resistance), 0.1);
    EXPECT_DOUBLE_EQ(pt::parse_quantity("5.8e7S/m", Dimension::conductivity), 5.8e7);
    EXPECT_DOUBLE_EQ(pt::parse_quantity("0.05", Dimension::dimensionless), 0.05);
}

TEST(Units, RejectsMissingOrWrongUnits) {
    EXPECT_THROW(pt::parse_quantity("7.5", Dimension::capacitance), pt::ConfigError);
    EXPECT_THROW(pt::parse_quantity("7.5nH", Dimension::capacitance), pt::ConfigError);
    EXPECT_THROW(pt::parse_quantity("pF", Dimension::capacitance), pt::ConfigError);
    EXPECT_THROW(pt::parse_quantity("0.05s", Dimension::dimensionless), pt::ConfigError);
    EXPECT_THROW(pt::parse_quantity("3xHz", Dimension::frequency), pt::ConfigError);
}

TEST(Units, FormatRoundTripsExactly) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    for (int i = 0; i < 200; ++i) {
        const double v = std::pow(10.0, u(rng));
        EXPECT_EQ(pt::parse_quantity(pt::format_quantity(v, Dimension::capacitance), Dimension::capacitance), v);
    }
}

TEST(Touchstone, RoundTripAllFormats) {
    const auto sweep = random_sweep(25, 1);
    for (auto fmt : {pt::TouchstoneFormat::RI, pt::TouchstoneFormat::MA, pt::TouchstoneFormat::DB})
        for (auto unit : {pt::FrequencyUnit::Hz, pt::FrequencyUnit::GHz}) {
            const auto back = pt::parse_touchstone(pt::format_touchstone(sweep, fmt, unit));
            EXPECT_EQ(back.format, fmt);
            EXPECT_EQ(back.unit, unit);
            expect_same(sweep, back.sweep, 1e-12);
        }
}

TEST(Touchstone, ColumnOrderIsS11S21S12S22) {
    pt::SMatrix2 s{{0.1, 0.0}, {0.2, 0.0}, {0.3, 0.0}, {0.4, 0.0}, 50.0};
    const pt::NetworkSweep sweep(pt::FrequencyGrid({1e9}), {s});
    const auto text = pt::format_touchstone(sweep, pt::TouchstoneFormat::RI);
    EXPECT_NE(text.find("1000000000 0.10000000000000001 0 0.29999999999999999 0 0.20000000000000001 0 "
                        "0.40000000000000002 0\n"),
              std::string::npos)
        << text;
}

TEST(Touchstone, ReadsHandWrittenFile) {
    const char* text = "! measured\n"
                       "# GHz S MA R 50\n"
                       "3.0  0.5 90  0.8 -45  0.8 -45  0.5 90 ! first\n"
                       "3.5  0.25 180  0.9 0  0.9 0  0.25 -180\n";
    const auto f = pt::parse_touchstone(text);
    ASSERT_EQ(f.sweep.size(), 2u);
    EXPECT_EQ(f.sweep.grid[0], 3e9);
    EXPECT_EQ(f.sweep.grid[1], 3.5e9);
    EXPECT_TRUE(pt::near(f.sweep.params[0].s11, Complex(0.0, 0.5), 1e-15));
    EXPECT_TRUE(pt::near(f.sweep.params[0].s21, std::polar(0.8, -pt::kPi / 4.0), 1e-15));
    EXPECT_TRUE(pt::near(f.sweep.params[1].s22, Complex(-0.25, 0.0), 1e-15));
    ASSERT_EQ(f.comments.size(), 2u);
    EXPECT_EQ(f.comments[0], " measured");
}

TEST(Touchstone, DefaultsAndDbEquivalence) {
    // bare "#" means GHz, MA, 50 ohm
    const auto ma = pt::parse_touchstone("#\n1 0.5 30 0.1 0 0.1 0 0.5 30\n");
    EXPECT_EQ(ma.sweep.grid[0], 1e9);
    EXPECT_EQ(ma.reference_resistance, 50.0);
    const double db = 20.0 * std::log10(0.5);
    const auto d = pt::parse_touchstone("# GHz S DB R 50\n1 " + pt::format_number(db) + " 30 -20 0 -20 0 " +
                                        pt::format_number(db) + " 30\n");
    EXPECT_TRUE(pt::near(ma.sweep.params[0].s11, d.sweep.params[0].s11, 1e-15));
    EXPECT_TRUE(pt::near(ma.sweep.params[0].s21, d.sweep.params[0].s21, 1e-15));
}

TEST(Touchstone, ReferenceImpedanceCarried) {
    const auto f = pt::parse_touchstone("# Hz S RI R 75\n1e9 0 0 1 0 1 0 0 0\n");
    EXPECT_EQ(f.sweep.params[0].z0, 75.0);
}

TEST(Touchstone, ParseErrorsCarryLineNumbers) {
    EXPECT_EQ(parse_error_line("# GHz S RI R 50\n1 0 0 1 0 1 0 0\n"), 2u);       // 8 columns
    EXPECT_EQ(parse_error_line("! c\n1 0 0 1 0 1 0 0 0\n"), 2u);                 // no option line yet
    EXPECT_EQ(parse_error_line("# GHz S RI\n1 0 0 1 0 1 0 0 0\n1 0 0 1 0 1 0 0 0\n"), 3u); // not increasing
    EXPECT_EQ(parse_error_line("# GHz Y RI\n"), 1u);
    EXPECT_EQ(parse_error_line("# GHz S RI\n\n1 0 0 1 x 1 0 0 0\n"), 3u);
    EXPECT_EQ(parse_error_line("# GHz S RI\n# GHz S RI\n"), 2u);
    EXPECT_EQ(parse_error_line("# GHz S RI R -5\n"), 1u);
    EXPECT_THROW(pt::parse_touchstone("! only a comment\n"), pt::ParseError);
}

TEST(Touchstone, EmptySweepRejectedOnWrite) {
    EXPECT_THROW(pt::format_touchstone(pt::NetworkSweep{}, pt::TouchstoneFormat::RI), pt::InvalidArgument);
}

TEST(Touchstone, OutputIsDeterministic) {
    fixtures::TempDir dir;
    const auto sweep = random_sweep(40, 3);
    pt::write_touchstone(sweep, dir.file("a.s2p"));
    pt::write_touchstone(sweep, dir.file("b.s2p"));
    EXPECT_EQ(fixtures::slurp(dir.file("a.s2p")), fixtures::slurp(dir.file("b.s2p")));
    expect_same(sweep, pt::read_touchstone(dir.file("a.s2p")), 0.0);
}

TEST(Touchstone, FormatNames) {
    EXPECT_EQ(pt::parse_touchstone_format("db"), pt::TouchstoneFormat::DB);
    EXPECT_THROW(pt::parse_touchstone_format("XY"), pt::InvalidArgument);
}

TEST(Csv, WriteAndRead) {
    fixtures::TempDir dir;
    pt::CsvTable t({"frequency_hz", "state", "gain_db"});
    t.row() << 3e9 << "01" << -0.1;
    t.row() << 3.5e9 << "10" << 1.0 / 3.0;
    t.save(dir.file("t.csv"));
    EXPECT_EQ(fixtures::slurp(dir.file("t.csv")),
              "frequency_hz,state,gain_db\n3000000000,01,-0.10000000000000001\n3500000000,10,0.33333333333333331\n");
    const auto d = pt::read_csv(dir.file("t.csv"));
    ASSERT_EQ(d.rows.size(), 2u);
    EXPECT_EQ(std::stod(d.rows[1][d.column("gain_db")]), 1.0 / 3.0);
    EXPECT_THROW(d.column("nope"), pt::InvalidArgument);
}

TEST(Csv, RowWidthChecked) {
    pt::CsvTable t({"a", "b"});
    t.row() << 1.0;
    EXPECT_THROW(t.str(), pt::InvalidArgument);
}

TEST(Config, ParsesTunerWithIdsAndInlineComponents) {
    const auto cfg = pt::parse_config(kMinimalConfig);
    ASSERT_TRUE(cfg.tuner.has_value());
    const auto& t = *cfg.tuner;
    ASSERT_EQ(t.main_sections.size(), 3u);
    ASSERT_EQ(t.stubs.size(), 2u);
    EXPECT_DOUBLE_EQ(t.main_sections[1].length, 9e-3);
    EXPECT_DOUBLE_EQ(t.stubs[0].stub_line.length, 6.5e-3);
    EXPECT_DOUBLE_EQ(t.stubs[0].dc_block->capacitance, 7.5e-12);
    EXPECT_DOUBLE_EQ(t.stubs[0].bias_choke->inductance, 15e-9);
    EXPECT_DOUBLE_EQ(t.stubs[1].cell->c_off, 0.6e-12);
    EXPECT_EQ(t.stubs[1].termination, pt::Termination::open_circuit);
    EXPECT_FALSE(t.stubs[1].dc_block.has_value());
    EXPECT_DOUBLE_EQ(cfg.substrate.height, 30 * 25.4e-6);
    EXPECT_EQ(cfg.sweep->grid().size(), 11u);
    EXPECT_FALSE(cfg.transient.has_value());
}

TEST(Config, RejectsUnknownKeyWithPath) {
    const std::string bad = std::string(kMinimalConfig) + "transient: {tau: 100ns}\n";
    try {
        pt::parse_config(bad);
        FAIL();
    } catch (const pt::ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("transient"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("tau"), std::string::npos) << e.what();
    }
}

TEST(Config, RejectsDanglingIdAndMissingUnit) {
    std::string s = kMinimalConfig;
    EXPECT_THROW(pt::parse_config(std::string(s).replace(s.find("dc_block: blk"), 13, "dc_block: xyz")),
                 pt::ConfigError);
    EXPECT_THROW(pt::parse_config(std::string(s).replace(s.find("length: 4mm"), 11, "length: 4")), pt::ConfigError);
    EXPECT_THROW(pt::parse_config(std::string(s).replace(s.find("termination: open"), 17, "termination: lossy")),
                 pt::ConfigError);
    EXPECT_THROW(pt::parse_config("z0: [1, 2"), pt::ConfigError);
    EXPECT_THROW(pt::load_config("/nonexistent/config.yaml"), pt::ConfigError);
}

TEST(Config, TunerValidationSurfaced) {
    std::string s = kMinimalConfig;
    s.replace(s.find("    - {width: 1.6764mm, length: 15mm}\n"), 38, "");
    EXPECT_THROW(pt::parse_config(s), pt::ConfigError);
}

TEST(Config, EmitParseRoundTrip) {
    auto cfg = pt::parse_config(kMinimalConfig);
    cfg.transient = pt::TransientSpec{};
    cfg.fit_fixture = fixtures::line(7e-3);
    cfg.synth = pt::SynthSpec{};
    cfg.synth->seed = 77;
    cfg.synth->targets.min_high_gain_fraction = 0.65;
    cfg.synth->bounds.spacing = {2e-3, 10e-3};
    cfg.synth->tmpl.port_block = pt::LumpedCapSpec{};
    cfg.synth->tmpl.cell.plasma = pt::DrudeParams::uncalibrated_on_state();
    const std::string once = pt::emit_config(cfg);
    const auto back = pt::parse_config(once);
    EXPECT_EQ(pt::emit_config(back), once);

    // physics unchanged after the round trip
    for (double f : {3e9, 3.4e9, 3.93e9})
        for (const char* st : {"00", "01", "10", "11"}) {
            const auto a = pt::state_network(*cfg.tuner, pt::SwitchState::parse(st), f);
            const auto b = pt::state_network(*back.tuner, pt::SwitchState::parse(st), f);
            EXPECT_EQ(a.s11, b.s11);
            EXPECT_EQ(a.s21, b.s21);
        }
    EXPECT_EQ(back.synth->seed, 77u);
    EXPECT_EQ(back.synth->bounds.spacing.lo, 2e-3);
    EXPECT_EQ(back.synth->tmpl.cell.plasma->n_e, cfg.synth->tmpl.cell.plasma->n_e);
    EXPECT_EQ(back.transient->tau_on, cfg.transient->tau_on);
    EXPECT_EQ(back.fit_fixture->length, 7e-3);
}

TEST(Config, ShippedConfigsLoad) {
    for (const char* name : {"synth_2stub.yaml", "reference_tuner.yaml", "bare_line.yaml"}) {
        SCOPED_TRACE(name);
        EXPECT_NO_THROW(pt::load_config(std::string(PLASMATUNE_CONFIG_DIR) + "/" + name));
    }
}
