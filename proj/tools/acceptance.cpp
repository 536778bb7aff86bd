#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "brute_descent.hpp"
#include "support.hpp"
#include "twoisog/twoisog.hpp"

using namespace twoisog;
using testsupport::printed_families;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool checks_pass(const ScanResult& r) {
  return r.checks.cassels_ratio == CheckStatus::pass && r.checks.tamagawa_pattern == CheckStatus::pass &&
         (!r.checks.good_at_infinity || *r.checks.good_at_infinity == CheckStatus::pass);
}

Outcome family_verification() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  std::ostringstream d;
  for (int i = 0; i < 5; ++i) {
    ConditionReport rep = verify_conditions(find_family("rank" + std::to_string(i)));
    bool ok = rep.all_pass() && rep.r && *rep.r == i;
    o.pass = o.pass && ok;
    d << rep.family << " r=" << (rep.r ? std::to_string(*rep.r) : "?") << (ok ? "" : " FAILED") << "; ";
  }
  double s = seconds_since(t0);
  if (s >= 10) o.pass = false;
  d << "time " << s << " s";
  o.detail = d.str();
  return o;
}

Outcome discriminants() {
  Outcome o;
  int matched = 0;
  for (const auto& f : printed_families()) {
    const FamilyRecord& rec = find_family(f.name);
    bool ok = model_discriminant(f.a, f.b) == f.disc && dual_model_discriminant(f.a, f.b) == f.dual_disc &&
              rec.E.discriminant() == RationalFunction(f.disc) &&
              dual_model(rec.E).discriminant() == RationalFunction(f.dual_disc);
    if (ok) ++matched;
    else o.detail += std::string(f.name) + " mismatch; ";
  }
  o.pass = matched == 5;
  o.detail += std::to_string(matched) + "/5 families match the printed discriminants";
  return o;
}

Outcome kodaira_fixtures() {
  struct Fixture {
    const char* family;
    bool dual;
    const char* place;
    const char* kodaira;  // empty: only the reduction type is stated
    int tamagawa;         // 0: not stated
    const char* reduction;
  };
  const std::vector<Fixture> fx = {
      {"rank0", false, "T-1", "I1", 0, ""},      {"rank0", false, "inf", "III*", 0, ""},
      {"rank0", true, "T", "I1", 0, ""},         {"rank0", true, "inf", "III*", 0, ""},
      {"rank1", true, "inf", "I3", 0, ""},       {"rank1", false, "T-1", "", 0, "split-multiplicative"},
      {"rank1", false, "T-4", "I1", 0, ""},      {"rank1", false, "T", "III", 0, ""},
      {"rank1", true, "T", "III", 0, ""},        {"rank2", true, "T", "I1", 0, ""},
      {"rank2", false, "T+25", "I1", 0, ""},     {"rank2", false, "T+16", "III", 0, ""},
      {"rank2", true, "T+16", "III", 0, ""},     {"rank2", false, "inf", "I0*", 4, ""},
      {"rank2", true, "inf", "I0*", 4, ""},      {"rank3", true, "T-2", "I1", 0, ""},
      {"rank3", true, "T+2", "I1", 0, ""},       {"rank3", true, "T-11", "I1", 0, ""},
      {"rank3", true, "T+11", "I1", 0, ""},      {"rank3", false, "T-3161/280", "I1", 0, ""},
      {"rank3", false, "T+3161/280", "I1", 0, ""}, {"rank3", false, "inf", "", 0, "split-multiplicative"},
      {"rank4", true, "T-11", "I1", 0, ""},      {"rank4", true, "T+11", "I1", 0, ""},
      {"rank4", false, "T-39", "I1", 0, ""},     {"rank4", false, "T+39", "I1", 0, ""},
      {"rank4", false, "T-25", "III", 0, ""},    {"rank4", false, "T+25", "III", 0, ""},
      {"rank4", true, "T-25", "III", 0, ""},     {"rank4", true, "T+25", "III", 0, ""},
  };
  Outcome o;
  int ok = 0;
  for (const auto& f : fx) {
    const CurveQT& E = find_family(f.family).E;
    LocalReduction r = tate_local(f.dual ? dual_model(E) : E, Place::parse(f.place));
    bool good = (!*f.kodaira || r.kodaira.str() == f.kodaira) && (!f.tamagawa || r.tamagawa == f.tamagawa) &&
                (!*f.reduction || to_string(r.reduction) == f.reduction);
    if (good) ++ok;
    else o.detail += std::string(f.family) + (f.dual ? " E' " : " E ") + f.place + " gave " + r.kodaira.str() + "; ";
  }
  o.pass = ok == int(fx.size());
  o.detail += std::to_string(ok) + "/" + std::to_string(fx.size()) + " stated symbols reproduced";
  return o;
}

Outcome image_dimensions() {
  const int want[5][2] = {{1, 1}, {1, 2}, {2, 2}, {3, 2}, {3, 3}};
  Outcome o;
  std::ostringstream d;
  for (int i = 0; i < 5; ++i) {
    const FamilyRecord& f = find_family("rank" + std::to_string(i));
    int sE = detail::delta_span(f.E, f.points_E).dim();
    int sEd = detail::delta_span(dual_model(f.E), f.points_E_dual).dim();
    auto sets = admissible_divisor_sets(f.E, classify_places(f.E));
    bool ok = sE == want[i][0] && sEd == want[i][1] && (std::size_t{1} << sE) == sets.F.size() &&
              (std::size_t{1} << sEd) == sets.F_prime.size();
    o.pass = o.pass && ok;
    d << f.name << " " << sE << "," << sEd << " |F|=" << sets.F.size() << " |F'|=" << sets.F_prime.size()
      << (ok ? "" : " FAILED") << "; ";
  }
  o.detail = d.str();
  return o;
}

Outcome desk_scale(const std::map<std::string, std::vector<ScanResult>>& scans, double secs) {
  Outcome o;
  std::ostringstream d;
  for (const auto& [name, results] : scans) {
    int target = find_family(name).target_rank;
    ScanSummary s = summarize(results, target);
    std::size_t pattern = 0, violations = 0;
    std::string example;
    for (const auto& r : results) {
      if (r.skipped || !r.local_pattern) continue;
      ++pattern;
      if (checks_pass(r) && r.rank.determined() && r.rank.lo != target) {
        if (violations++ == 0) example = " e.g. t=" + r.t.str() + " rank " + std::to_string(r.rank.lo);
      }
    }
    bool ok = s.distinct_j_at_target >= 10 && violations == 0;
    o.pass = o.pass && ok;
    d << name << ": distinct_j=" << s.distinct_j_at_target << " determined=" << s.determined
      << " bounded=" << s.bounded << " skipped=" << s.skipped << " pattern=" << pattern
      << " violations=" << violations << example << "; ";
  }
  if (secs > 1800) o.pass = false;
  d << "scan time " << secs << " s";
  o.detail = d.str();
  return o;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> coef(-20, 20);
  int agree = 0, cassels_pass = 0, cassels_skip = 0, done = 0;
  Outcome o;
  while (done < 30) {
    long a = coef(rng), b = coef(rng);
    if (b == 0 || a * a == 4 * b) continue;
    ++done;
    CurveQ E(a, b);
    bool ok = true;
    for (auto ctx : {SelmerContext::phi, SelmerContext::phi_hat}) {
      long aa = ctx == SelmerContext::phi ? a : -2 * a;
      long bb = ctx == SelmerContext::phi ? b : a * a - 4 * b;
      auto want = testsupport::brute_selmer(aa, bb);
      SelmerGroup sel = selmer_group(E, ctx);
      ok = ok && (std::size_t{1} << sel.dim()) == want.size();
      for (const auto& d : want) ok = ok && sel.contains(square_class(Rational(d)));
    }
    agree += ok;
    if (!ok) o.detail += "selmer mismatch a=" + std::to_string(a) + " b=" + std::to_string(b) + "; ";
    CasselsCheck c = cassels_ratio_check(E);
    if (c.status == CheckStatus::pass) ++cassels_pass;
    else if (c.status == CheckStatus::skipped) ++cassels_skip;
    else o.detail += "cassels fails a=" + std::to_string(a) + " b=" + std::to_string(b) + "; ";
  }
  o.pass = agree == 30 && cassels_pass + cassels_skip == 30;
  o.detail += std::to_string(agree) + "/30 Selmer groups agree with brute force; Cassels pass " +
              std::to_string(cassels_pass) + ", skipped " + std::to_string(cassels_skip);
  return o;
}

Outcome local_image_laws(const std::map<std::string, std::vector<ScanResult>>& scans) {
  // 40 specializations per family, the first ones in scan order.
  int curves = 0, trivial_checks = 0, unit_checks = 0, violations = 0;
  Outcome o;
  for (const auto& [name, results] : scans) {
    const FamilyRecord& rec = find_family(name);
    int taken = 0;
    for (const auto& r : results) {
      if (r.skipped || taken == 40) continue;
      ++taken;
      ++curves;
      CurveQ M = integral_model(specialize(rec.E, r.t)).first;
      CurveQ Md = dual_model(M);
      std::vector<Integer> primes;
      for (const auto& p : r.bad_primes)
        if (p != 2) primes.push_back(p);
      for (long g = 3, good = 0; good < 3; g += 2) {
        Integer p(g);
        if (!is_prime(p) || std::binary_search(r.bad_primes.begin(), r.bad_primes.end(), p)) continue;
        primes.push_back(p);
        ++good;
      }
      for (const auto& p : primes) {
        LocalReduction e = tate_local(M, p), ed = tate_local(Md, p);
        QPlace v = QPlace::prime(p);
        auto report = [&](const std::string& what) {
          if (violations++ < 3) o.detail += name + " t=" + r.t.str() + " p=" + p.get_str() + " " + what + "; ";
        };
        if (e.kodaira.is_good()) {
          for (auto ctx : {SelmerContext::phi, SelmerContext::phi_hat}) {
            ++unit_checks;
            for (const auto& c : local_image(M, ctx, v).classes)
              // Representatives are squarefree, so p | c means odd valuation.
              if (mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t())) report("non-unit class at good place");
          }
          continue;
        }
        if (!e.kodaira.is_multiplicative() || !ed.kodaira.is_multiplicative()) continue;
        int m = e.kodaira.n, md = ed.kodaira.n;
        // E is I(2n), E' is I(n): the image of delta on E' (torsors of E) is trivial.
        if (m == 2 * md && (e.reduction == ReductionType::split_multiplicative || md % 2)) {
          ++trivial_checks;
          if (local_image(M, SelmerContext::phi, v).dim != 0) report("nontrivial image of delta_E'");
        }
        if (md == 2 * m && (ed.reduction == ReductionType::split_multiplicative || m % 2)) {
          ++trivial_checks;
          if (local_image(M, SelmerContext::phi_hat, v).dim != 0) report("nontrivial image of delta_E");
        }
      }
    }
  }
  o.pass = violations == 0 && curves >= 200 && trivial_checks > 0 && unit_checks > 0;
  o.detail += std::to_string(curves) + " specializations, " + std::to_string(trivial_checks) +
              " trivial-image and " + std::to_string(unit_checks) + " unit-image checks, " +
              std::to_string(violations) + " violations";
  return o;
}

Outcome rank_formula(const std::map<std::string, std::vector<ScanResult>>& scans) {
  int checked = 0, violations = 0;
  Outcome o;
  for (const auto& [name, results] : scans) {
    const FamilyRecord& rec = find_family(name);
    for (const auto& r : results) {
      if (r.skipped || !r.rank.determined()) continue;
      ++checked;
      CurveQ Et = specialize(rec.E, r.t), Ed = dual_model(Et);
      ClassSpan sE, sEd;
      bool ok = true;
      for (const auto& w : r.witnesses_E) {
        ok = ok && Et.contains(w.point) && delta_class(Et, w.point) == w.cls;
        sE.add(w.cls);
      }
      for (const auto& w : r.witnesses_E_dual) {
        ok = ok && Ed.contains(w.point) && delta_class(Ed, w.point) == w.cls;
        sEd.add(w.cls);
      }
      int lo = sE.dim() + sEd.dim() - 2, hi = r.selmer_phi_hat + r.selmer_phi - 2;
      ok = ok && lo == r.rank.lo && hi == r.rank.lo;
      if (!ok && violations++ < 3) o.detail += name + " t=" + r.t.str() + "; ";
    }
  }
  o.pass = violations == 0 && checked > 0;
  o.detail += std::to_string(checked) + " determined records, " + std::to_string(violations) + " violations";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  int jobs = 8;
  long height = 50;
  std::string out = "acceptance";
  app.add_option("--jobs", jobs, "scan workers")->check(CLI::PositiveNumber);
  app.add_option("--height", height, "scan height bound")->check(CLI::PositiveNumber);
  app.add_option("--out", out, "directory for scan output");
  CLI11_PARSE(app, argc, argv);

  std::vector<std::pair<int, Outcome>> outcomes;
  auto run = [&](int id, auto&& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
    outcomes.emplace_back(id, o);
  };

  run(1, family_verification);
  run(2, discriminants);
  run(3, kodaira_fixtures);
  run(4, image_dimensions);

  std::map<std::string, std::vector<ScanResult>> scans;
  std::string scan_error;
  auto t0 = std::chrono::steady_clock::now();
  try {
    std::filesystem::create_directories(out);
    for (const auto& f : builtin_families()) {
      ScanOptions opts;
      opts.height_bound = height;
      opts.jobs = jobs;
      scans[f.name] = run_scan(f, opts);
      auto path = std::filesystem::path(out) / (f.name + ".jsonl");
      std::filesystem::remove(path);
      emit_report(scans[f.name], path, f.target_rank);
    }
  } catch (const std::exception& e) {
    scan_error = e.what();
  }
  double secs = seconds_since(t0);
  auto need_scans = [&](auto&& f) {
    return [&, f] { return scan_error.empty() ? f() : Outcome{false, "scan failed: " + scan_error}; };
  };

  run(5, need_scans([&] { return desk_scale(scans, secs); }));
  run(6, oracle_equivalence);
  run(7, need_scans([&] { return local_image_laws(scans); }));
  run(8, need_scans([&] { return rank_formula(scans); }));

  bool all = std::all_of(outcomes.begin(), outcomes.end(), [](const auto& p) { return p.second.pass; });
  return all ? 0 : 1;
}
