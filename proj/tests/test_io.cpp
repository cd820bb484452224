#include <gtest/gtest.h>

#include <cstring>
#include <fstream>
#include <random>

#include "support.hpp"
#include "tfgp/errors.hpp"
#include "tfgp/io.hpp"

using namespace tfgp;
using tfgp::testing::default_corrections;
using tfgp::testing::default_nu0;
using tfgp::testing::scratch_dir;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

template <class A, class B>
void expect_bitwise(const A& a, const B& b, const char* what) {
  ASSERT_EQ(a.size(), b.size()) << what;
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_TRUE(same_bits(a[i], b[i])) << what << " " << i;
}

}  // namespace

TEST(Format, ShortestRoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mant(-1, 1);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 20000; ++i) {
    const double x = std::ldexp(mant(rng), expo(rng));
    ASSERT_TRUE(same_bits(parse_double(format_double(x)), x)) << format_double(x);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-4), "-4");
  EXPECT_TRUE(std::isnan(parse_double(format_double(NAN))));
  EXPECT_THROW(parse_double("1.5x"), FormatError);
}

TEST(Hash, FnvReferenceVectors) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ULL);
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}

TEST(Table, RoundTripWithCsv) {
  const auto dir = scratch_dir("table");
  Table t;
  t.header = {{"alpha", "1"}, {"note", "two words"}};
  t.names = {"x", "y"};
  t.columns = {{0.1, 0.2, 1e-300}, {-1, 2.5, 3}};
  write_table((dir / "t.csv").string(), t, ',');
  const Table back = read_table((dir / "t.csv").string());
  EXPECT_EQ(back.header, t.header);
  EXPECT_EQ(back.names, t.names);
  EXPECT_EQ(back.columns, t.columns);
  EXPECT_EQ(back.at("note"), "two words");
  EXPECT_THROW(back.at("missing"), FormatError);
  EXPECT_THROW(back.column("z"), FormatError);
}

TEST(Table, MalformedRowRejected) {
  const auto dir = scratch_dir("bad");
  std::ofstream((dir / "bad.tsv").string()) << "# columns: a b\n1\t2\n3\n";
  EXPECT_THROW(read_table((dir / "bad.tsv").string()), FormatError);
}

TEST(Report, KeyValueRoundTrip) {
  const auto dir = scratch_dir("report");
  const Header entries = {{"d1.c_log", format_double(-2.0 / 3)}, {"dps.C", "0.18"}};
  write_report((dir / "r.txt").string(), {{"version", kVersion}}, entries);
  EXPECT_EQ(read_report((dir / "r.txt").string()), entries);
}

TEST(HastingsMcLeodFile, ReloadIsBitExact) {
  const auto dir = scratch_dir("nu0");
  const auto& nu0 = default_nu0();
  const std::string p = (dir / "nu0.tsv").string();
  save_hastings_mcleod(p, nu0);
  const HastingsMcLeod back = load_hastings_mcleod(p);
  expect_bitwise(back.grid().nodes(), nu0.grid().nodes(), "y");
  expect_bitwise(back.values(), nu0.values(), "nu0");
  expect_bitwise(back.first_derivative(), nu0.first_derivative(), "nu0'");
  expect_bitwise(back.second_derivative(), nu0.second_derivative(), "nu0''");
  expect_bitwise(back.w0().values(), nu0.w0().values(), "w0");
  EXPECT_TRUE(same_bits(back.residual_norm(), nu0.residual_norm()));
  EXPECT_TRUE(same_bits(back(0.123), nu0(0.123)));
  EXPECT_TRUE(same_bits(back(50.0), nu0(50.0)));

  save_hastings_mcleod((dir / "again.tsv").string(), back);
  EXPECT_EQ(tfgp::testing::slurp(p), tfgp::testing::slurp(dir / "again.tsv"));
}

TEST(CorrectionFile, ReloadIsBitExact) {
  const auto dir = scratch_dir("nu1");
  const auto& nu0 = default_nu0();
  for (int d = 1; d <= 3; ++d) {
    const auto& cf = default_corrections(d)[1];
    const std::string p = (dir / ("nu2_d" + std::to_string(d) + ".csv")).string();
    save_correction(p, cf, {}, ',');
    const CorrectionFunction back = load_correction(p, nu0);
    EXPECT_EQ(back.order, 2);
    EXPECT_EQ(back.dimension, d);
    expect_bitwise(back.field.values(), cf.field.values(), "nu");
    expect_bitwise(back.tail.normalized().coeffs(), cf.tail.normalized().coeffs(), "tail");
    EXPECT_TRUE(same_bits(back(45.0), cf(45.0)));
  }
}

TEST(CorrectionFile, GridMismatchDetected) {
  const auto dir = scratch_dir("mismatch");
  const std::string p = (dir / "nu1.tsv").string();
  save_correction(p, default_corrections(1)[0]);
  PainleveOptions o;
  o.window.right = 45;
  EXPECT_THROW(load_correction(p, solve_hastings_mcleod(o)), GridMismatch);
  EXPECT_THROW(load_hastings_mcleod(p), FormatError);
}
