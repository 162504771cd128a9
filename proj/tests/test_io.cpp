#include <gtest/gtest.h>

#include <sstream>

#include "semiflux/io.hpp"
#include "semiflux/stieltjes.hpp"

using namespace semiflux;

TEST(FormatReal, KeepsDecimalPoint) {
  EXPECT_EQ(io::format_real(-2.0), "-2.0");
  EXPECT_EQ(io::format_real(0.5), "0.5");
  EXPECT_EQ(io::format_real(1e-20), "9.9999999999999995e-21");
}

TEST(Digest, StableAndSensitive) {
  EXPECT_EQ(io::fnv1a_digest("abc"), io::fnv1a_digest("abc"));
  EXPECT_NE(io::fnv1a_digest("abc"), io::fnv1a_digest("abd"));
  auto r = io::result_record("pair", {{"f", "sgn_L"}}, -2.0, 1e-10);
  EXPECT_EQ(r["op"], "pair");
  EXPECT_EQ(r["value"], -2.0);
}

TEST(IntervalSetText, ParsesUnions) {
  IntervalSet s = io::parse_interval_set("(0,1] u [2,3) u [5,5]");
  EXPECT_FALSE(s.contains(0.0));
  EXPECT_TRUE(s.contains(1.0));
  EXPECT_TRUE(s.contains(2.0));
  EXPECT_FALSE(s.contains(3.0));
  EXPECT_TRUE(s.contains(5.0));
  IntervalSet inf = io::parse_interval_set("(-inf, 0]");
  EXPECT_TRUE(inf.contains(-1e300));
  EXPECT_THROW(io::parse_interval_set("(0,1"), std::invalid_argument);
}

TEST(Json, IntervalSetRoundTrip) {
  IntervalSet s = io::parse_interval_set("(-inf,0] u (1,2)");
  IntervalSet back = io::interval_set_from_json(io::to_json(s));
  for (double x : {-5.0, 0.0, 0.5, 1.0, 1.5, 2.0}) EXPECT_EQ(back.contains(x), s.contains(x));
}

TEST(Json, PiecewiseRoundTrip) {
  PiecewiseFn f = add(sgn(Orientation::Left), PiecewiseFn::smooth(SmoothFn::gaussian(0.5)));
  PiecewiseFn back = io::piecewise_from_json(io::to_json(f));
  EXPECT_TRUE(equivalent(f, back));
}

TEST(Json, DistributionRoundTrip) {
  Distribution d = add(Distribution::delta(1.0, 2.0), Distribution::delta_prime(0.0, -1.0));
  Distribution back = io::distribution_from_json(io::to_json(d));
  ASSERT_EQ(back.atoms().size(), 2u);
  EXPECT_DOUBLE_EQ(pair(back, SmoothFn::gaussian()), pair(d, SmoothFn::gaussian()));
}

TEST(NamedFunctions, Registry) {
  EXPECT_EQ(io::named_function("sgn_L")(0.0), -1.0);
  EXPECT_EQ(io::named_function("sgn_R")(0.0), 1.0);
  EXPECT_EQ(io::named_function("H_L")(0.0), 0.0);
  EXPECT_NEAR(io::test_function("hermite-gaussian-2")(0.0), SmoothFn::hermite_gaussian(2)(0.0), 1e-15);
  EXPECT_THROW(io::named_function("nope"), std::invalid_argument);
  EXPECT_THROW(io::test_function("nope"), std::invalid_argument);
}

TEST(Csv, HeaderAndRows) {
  EXPECT_EQ(io::csv({"a", "b"}, {{1.0, 0.25}}), "a,b\n1.0,0.25\n");
}

TEST(Toml, SectionsAndTypes) {
  std::istringstream in(
      "# comment\n[hamiltonian]\na = 1.5\ngrid_n = 32 # trailing\norientation = \"right\"\nkrein_override = true\n");
  auto t = io::parse_toml(in);
  EXPECT_EQ(io::toml_number(t, "hamiltonian", "a"), 1.5);
  EXPECT_EQ(io::toml_number(t, "hamiltonian", "grid_n"), 32.0);
  EXPECT_EQ(io::toml_string(t, "hamiltonian", "orientation"), "right");
  EXPECT_EQ(io::toml_bool(t, "hamiltonian", "krein_override"), true);
  EXPECT_FALSE(io::toml_number(t, "hamiltonian", "missing").has_value());
  EXPECT_THROW(io::toml_number(t, "hamiltonian", "orientation"), io::ConfigError);
}

TEST(Toml, MalformedInputThrows) {
  std::istringstream bad("[hamiltonian\na = 1\n");
  EXPECT_THROW(io::parse_toml(bad), io::ConfigError);
  std::istringstream bad2("a = \"unterminated\n");
  EXPECT_THROW(io::parse_toml(bad2), io::ConfigError);
  EXPECT_THROW(io::load_toml("/nonexistent/file.toml"), io::ConfigError);
}
