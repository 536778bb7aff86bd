#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "brute_descent.hpp"
#include "support.hpp"
#include "twoisog/scan.hpp"

using namespace twoisog;
using namespace testsupport;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "twoisog_test_scan";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::filesystem::remove(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<ScanResult> scan(const char* family, long H, int jobs) {
  ScanOptions o;
  o.height_bound = H;
  o.jobs = jobs;
  return run_scan(find_family(family), o);
}

ScanResult fake_result(const char* t, int lo, int hi, const char* j) {
  ScanResult r;
  r.family = "rank0";
  r.t = q(t);
  r.rank = {lo, hi};
  r.j = q(j);
  return r;
}

}  // namespace

TEST(ScanParameters, ExcludesBadValuesAndOrdersByHeight) {
  FamilyScanData d = prepare_family(find_family("rank0"));
  auto ts = scan_parameters(d, 3);
  for (const auto& t : ts) {
    EXPECT_NE(t, Rational(0));
    EXPECT_NE(t, Rational(1));
  }
  // |m|, n <= 3 coprime gives 7 + 4 + 4 values; 0 and 1 are bad places.
  EXPECT_EQ(ts.size(), 13u);
  EXPECT_EQ(ts.front(), Rational(-1));
  for (std::size_t i = 1; i < ts.size(); ++i) EXPECT_LE(height(ts[i - 1]), height(ts[i]));
  EXPECT_THROW(scan_parameters(d, 0), domain_error);
}

TEST(ScanParameters, ExcludedPrimesContainTwoAndRootDifferences) {
  FamilyScanData d = prepare_family(find_family("rank4"));
  for (long p : {2, 3, 5, 7, 11, 13, 19, 37})
    EXPECT_TRUE(d.excluded.count(Integer(p))) << p;
  EXPECT_FALSE(d.infinity_bad);
  EXPECT_TRUE(prepare_family(find_family("rank1")).infinity_bad);
}

TEST(Scan, DeterministicAcrossJobCounts) {
  auto a = temp_file("a.jsonl"), b = temp_file("b.jsonl");
  emit_report(scan("rank1", 6, 1), a, 1);
  emit_report(scan("rank1", 6, 3), b, 1);
  std::string sa = slurp(a);
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, slurp(b));
}

TEST(Scan, RecordInvariants) {
  for (const char* name : {"rank2", "rank4"}) {
    const auto& rec = find_family(name);
    FamilyScanData d = prepare_family(rec);
    for (const auto& r : scan(name, 8, 2)) {
      ASSERT_FALSE(r.skipped) << r.skip_reason;
      std::string tag = std::string(name) + " t=" + r.t.str();
      EXPECT_EQ(std::find(d.bad_values.begin(), d.bad_values.end(), r.t), d.bad_values.end());
      if (r.rank.determined()) {
        EXPECT_EQ(r.selmer_phi_hat + r.selmer_phi - 2, r.rank.hi) << tag;
      }
      EXPECT_EQ(r.checks.cassels_ratio, CheckStatus::pass) << tag;
      EXPECT_EQ(r.checks.tamagawa_pattern, CheckStatus::pass) << tag;
      CurveQ Et = specialize(rec.E, r.t), Ed = dual_model(Et);
      EXPECT_EQ(r.j, j_invariant(Et));
      for (const auto& w : r.witnesses_E) EXPECT_EQ(delta_class(Et, w.point), w.cls) << tag;
      for (const auto& w : r.witnesses_E_dual) EXPECT_EQ(delta_class(Ed, w.point), w.cls) << tag;
      EXPECT_EQ(r.rank.lo + 2, int(r.witnesses_E.size() + r.witnesses_E_dual.size())) << tag;

      // The specialized generic points alone already bound the rank from below.
      ClassSpan sE, sEd;
      sE.add(delta_class(Et, torsion_point(Et)));
      sEd.add(delta_class(Ed, torsion_point(Ed)));
      for (const auto& P : rec.points_E)
        if (auto Q = detail::specialize_point(P, r.t)) sE.add(delta_class(Et, *Q));
      for (const auto& P : rec.points_E_dual)
        if (auto Q = detail::specialize_point(P, r.t)) sEd.add(delta_class(Ed, *Q));
      EXPECT_GE(r.rank.lo, sE.dim() + sEd.dim() - 2) << tag;
    }
  }
}

TEST(Scan, GoodReductionAtInfinity) {
  // rank4 has good reduction at infinity; t with a new prime in the denominator keeps it good.
  for (const auto& r : scan("rank4", 10, 2)) {
    ASSERT_TRUE(r.checks.good_at_infinity.has_value());
    EXPECT_EQ(*r.checks.good_at_infinity, CheckStatus::pass) << r.t.str();
  }
  for (const auto& r : scan("rank0", 4, 1)) EXPECT_FALSE(r.checks.good_at_infinity.has_value());
}

TEST(Scan, LocalPatternFlag) {
  // rank0 has bad places 0, 1 and infinity: look at m, m - n and n for t = m/n.
  FamilyScanData d = prepare_family(find_family("rank0"));
  EXPECT_TRUE(scan_one(d, q("-6/5"), {}).local_pattern);    // 3, 11, 5
  EXPECT_FALSE(scan_one(d, q("3/5"), {}).local_pattern);    // m - n = -2
  EXPECT_FALSE(scan_one(d, q("9/5"), {}).local_pattern);    // m = 3^2
  EXPECT_FALSE(scan_one(d, q("-15/7"), {}).local_pattern);  // m = 3 * 5
}

TEST(Scan, RankZeroFamilyHasDeterminedZeroAgainstBruteForce) {
  auto results = scan("rank0", 30, 1);
  int confirmed = 0;
  for (const auto& r : results) {
    if (r.skipped || r.rank != RankStatus{0, 0}) continue;
    // Independent upper bound from brute-force Selmer groups of the integral model.
    auto [M, U] = integral_model(specialize(find_family("rank0").E, r.t));
    if (abs(M.a().num()) > 400 || abs(M.b().num()) > 4000) continue;
    long a = M.a().num().get_si(), b = M.b().num().get_si();
    std::size_t s_phi = brute_selmer(a, b).size();
    std::size_t s_hat = brute_selmer(-2 * a, a * a - 4 * b).size();
    EXPECT_EQ(s_phi * s_hat, 4u) << r.t.str();
    EXPECT_EQ(s_phi, std::size_t{1} << r.selmer_phi) << r.t.str();
    EXPECT_EQ(s_hat, std::size_t{1} << r.selmer_phi_hat) << r.t.str();
    if (++confirmed == 5) break;
  }
  EXPECT_GE(confirmed, 1);
}

TEST(EmitReport, RejectsEmptyInput) {
  EXPECT_THROW(emit_report({}, temp_file("empty.jsonl"), 0), domain_error);
}

TEST(EmitReport, TalliesAndDistinctJ) {
  std::vector<ScanResult> rs{fake_result("2", 0, 0, "1"), fake_result("3", 0, 0, "1"),
                             fake_result("5", 0, 0, "7/2"), fake_result("7", 1, 1, "9"),
                             fake_result("9", 0, 2, "11")};
  ScanSummary s = emit_report(rs, temp_file("tally.jsonl"), 0);
  EXPECT_EQ(s.records, 5u);
  EXPECT_EQ(s.determined, 4u);
  EXPECT_EQ(s.bounded, 1u);
  EXPECT_EQ(s.distinct_j_at_target, 2u);
  auto j = to_json(s);
  EXPECT_EQ(j["bounded"], 1);
  EXPECT_EQ(j["determined"], 4);
}

TEST(EmitReport, AppendsAndTruncatesPartialLine) {
  auto p = temp_file("partial.jsonl");
  emit_report({fake_result("2", 0, 0, "1")}, p, 0);
  std::string first = slurp(p);
  {
    std::ofstream f(p, std::ios::app | std::ios::binary);
    f << "{\"family\":\"rank0\",\"t\":";  // interrupted write
  }
  emit_report({fake_result("3", 0, 0, "1")}, p, 0);
  std::string all = slurp(p);
  ASSERT_EQ(all.compare(0, first.size(), first), 0);
  std::string rest = all.substr(first.size());
  EXPECT_EQ(std::count(rest.begin(), rest.end(), '\n'), 1);
  EXPECT_NE(rest.find("\"t\":\"3/1\""), std::string::npos);
  for (std::size_t start = 0; start < all.size();) {
    auto end = all.find('\n', start);
    EXPECT_NO_THROW(nlohmann::json::parse(all.substr(start, end - start)));
    start = end + 1;
  }
}

TEST(EmitReport, RecordSchema) {
  auto rs = scan("rank4", 2, 1);
  ASSERT_FALSE(rs.empty());
  auto j = to_json(rs.front());
  for (const char* k : {"family", "t", "bad_primes", "selmer_dims", "rank", "j", "checks"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["t"], "-1/1");
  EXPECT_EQ(j["selmer_dims"].size(), 2u);
}
