#include "giant_atoms/config.hpp"
#include "giant_atoms/io.hpp"
#include "giant_atoms/testing.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace giant_atoms;

namespace {

std::string error_of(const std::string& ini) {
    try {
        parse_ini(ini);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
    const auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << body;
    return p;
}

}  // namespace

TEST(Config, DefaultsRoundTrip) {
    const RunConfig c;
    EXPECT_EQ(parse_ini(to_ini(c)), c);
    EXPECT_EQ(parse_ini(""), c);
}

TEST(Config, ModifiedRoundTrip) {
    RunConfig c;
    c.layout_kind = "reference-5";
    c.gamma_mhz = 3.7;
    c.gamma_ex_mhz = 0.1 + 0.2;  // not exactly representable as typed
    c.model = "full";
    c.chi_over_g = 62.5;
    c.reltol = 1e-10;
    c.sweep_target = "ghz5";
    c.ex_points = 3;
    c.format = "json";
    c.digits = 9;
    const RunConfig back = parse_ini(to_ini(c));
    EXPECT_EQ(back, c);
    EXPECT_EQ(back.gamma_ex_mhz, 0.1 + 0.2);
}

TEST(Config, DerivedUnits) {
    RunConfig c;
    EXPECT_NEAR(c.omega0_over_g(), 500.0, 1e-12);
    EXPECT_NEAR(c.ex_over_g(), 0.01 / (2 * std::numbers::pi * 4), 1e-15);
    EXPECT_NEAR(c.phi_over_g(), 2 * c.ex_over_g(), 1e-15);
    c.chi_over_g = 25.0;
    EXPECT_NEAR(c.omega0_over_g(), 200.0, 1e-12);
    EXPECT_EQ(c.grid().size(), 25u);
}

TEST(Config, UnknownKeyNamed) {
    EXPECT_NE(error_of("[noise]\ngamma_xx_mhz = 1\n").find("noise.gamma_xx_mhz"), std::string::npos);
    EXPECT_NE(error_of("[bogus]\nx = 1\n").find("bogus"), std::string::npos);
    EXPECT_NE(error_of("stray = 1\n").find("stray"), std::string::npos);
    EXPECT_TRUE(error_of("[noise]\n").empty());
}

TEST(Config, BadValuesNamed) {
    EXPECT_NE(error_of("[units]\ngamma_mhz = four\n").find("units.gamma_mhz"), std::string::npos);
    EXPECT_NE(error_of("[units]\ngamma_mhz = -1\n").find("units.gamma_mhz"), std::string::npos);
    EXPECT_NE(error_of("[sweep]\nex_points = 0\n").find("sweep.ex_points"), std::string::npos);
    EXPECT_NE(error_of("[sweep]\ntarget = toffoli\n").find("sweep.target"), std::string::npos);
    EXPECT_NE(error_of("[output]\ndigits = 30\n").find("output.digits"), std::string::npos);
    EXPECT_NE(error_of("[layout]\nkind = file\n").find("layout.file"), std::string::npos);
}

TEST(Config, SyntaxError) {
    EXPECT_NE(error_of("[units\ngamma_mhz = 4\n").find("syntax"), std::string::npos);
    EXPECT_THROW(load_config("/nonexistent/run.ini"), ConfigError);
}

TEST(Config, LayoutFile) {
    const auto p = temp_file("ga_layout_test.txt", "# three atoms\n0 2\n1 3 5 7  # hub\n\n4 6\n");
    RunConfig c;
    c.layout_kind = "file";
    c.layout_file = p.string();
    const auto pos = read_layout_positions(c.layout_file);
    ASSERT_EQ(pos.size(), 3u);
    EXPECT_EQ(pos[1], (std::vector<double>{1, 3, 5, 7}));
    const auto layout = make_layout(c);
    EXPECT_FALSE(verify_chain_layout(layout, 1.0).first_failure());

    const auto bad = temp_file("ga_layout_bad.txt", "0 2\n1 x\n");
    EXPECT_THROW(read_layout_positions(bad.string()), ConfigError);
    const auto unsorted = temp_file("ga_layout_unsorted.txt", "2 0\n");
    c.layout_file = unsorted.string();
    EXPECT_THROW(make_layout(c), ConfigError);
    std::filesystem::remove(p);
    std::filesystem::remove(bad);
    std::filesystem::remove(unsorted);
}

TEST(Io, NumberFormatting) {
    EXPECT_EQ(io::num(0.1, 17), "0.10000000000000001");
    EXPECT_EQ(io::num(0.123456, 3), "0.123");
    EXPECT_EQ(io::rounded(0.123456, 3), 0.123);
    const double x = 1.0 / 3.0;
    EXPECT_EQ(std::stod(io::num(x)), x);
}

TEST(Io, SweepCsv) {
    SweepResult r;
    r.target = "cczs";
    r.points = {{0.0, 0.0, 1.0, 0.0}, {1e-3, 0.0, 0.99673, 0.0}};
    std::ostringstream out;
    io::write_sweep_csv(out, r, 4);
    EXPECT_EQ(out.str(), "gamma_ex_over_g,gamma_phi_over_g,fidelity\n0,0,1\n0.001,0,0.9967\n");
    const auto j = io::sweep_json(r, 4);
    EXPECT_EQ(j["points"][1]["fidelity"].get<double>(), 0.9967);
    EXPECT_EQ(j["fit"]["target"], "cczs");
}

TEST(Io, ChoiBinaryRoundTrip) {
    std::mt19937_64 rng(1);
    const auto c = choi_from_unitary(giant_atoms::testing::random_unitary(4, rng));
    std::stringstream buf;
    io::write_choi_binary(buf, c);
    const std::string bytes = buf.str();
    ASSERT_EQ(bytes.size(), 16u + 16u * 16u * 16u);
    EXPECT_EQ(bytes.substr(0, 4), "CHOI");
    EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 4u);
    const auto back = io::read_choi_binary(buf);
    EXPECT_EQ(back.d, 4);
    EXPECT_EQ(back.matrix, c.matrix);

    std::stringstream junk("CHAO");
    EXPECT_THROW(io::read_choi_binary(junk), std::runtime_error);
    std::stringstream cut(bytes.substr(0, 40));
    EXPECT_THROW(io::read_choi_binary(cut), std::runtime_error);
}

TEST(Io, ChoiCsvShape) {
    const auto c = choi_from_unitary(Eigen::MatrixXcd::Identity(2, 2));
    std::ostringstream out;
    io::write_choi_csv(out, c, 3);
    std::istringstream in(out.str());
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
    }
    EXPECT_EQ(rows, 4);
    EXPECT_EQ(out.str().substr(0, 8), "0.5,0,0,");
}
