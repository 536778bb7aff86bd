#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "twoisog/twoisog.hpp"

using namespace twoisog;

namespace {

void print(const nlohmann::ordered_json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_tate(const std::string& curve, const std::string& place) {
  AnyCurve E = curve_from_json(load_json_arg(curve));
  Place v = Place::parse(place);
  LocalReduction r = std::visit([&](const auto& C) { return tate_local(C, v); }, E);
  nlohmann::ordered_json j{{"place", v.str()}};
  j.update(to_json(r));
  print(j);
  return 0;
}

int cmd_selmer(const std::string& curve) {
  CurveQ E = curve_q_from_json(load_json_arg(curve));
  DescentData phi = descent(E, SelmerContext::phi), phi_hat = descent(E, SelmerContext::phi_hat);
  print(selmer_json(E, phi, phi_hat, cassels_ratio_check(phi, phi_hat)));
  return 0;
}

int cmd_rank(const std::string& curve, const std::string& points, long bound) {
  CurveQ E = curve_q_from_json(load_json_arg(curve));
  PointLists pts;
  if (!points.empty()) pts = point_lists_from_json(load_json_arg(points));
  RankOptions opts;
  opts.search_bound = bound;
  // A flat search supplies extra points; the per-class search fills the rest.
  auto found = point_search(E, std::min(bound, 200L));
  pts.E.insert(pts.E.end(), found.begin(), found.end());
  print(to_json(E, rank_bounds(E, pts.E, pts.E_dual, opts)));
  return 0;
}

int cmd_family_list() {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& f : builtin_families())
    out.push_back({{"name", f.name},
                   {"target_rank", f.target_rank},
                   {"a", f.E.a().str()},
                   {"b", f.E.b().str()},
                   {"classification", to_json(f.expected)}});
  print(out);
  return 0;
}

int cmd_family_verify(const std::string& name) {
  ConditionReport rep = verify_conditions(find_family(name));
  print(to_json(rep));
  return rep.all_pass() ? 0 : 1;
}

int cmd_scan(const std::string& family, long height, int jobs, const std::string& out) {
  const FamilyRecord& rec = find_family(family);
  ScanOptions opts;
  opts.height_bound = height;
  opts.jobs = jobs;
  auto results = run_scan(rec, opts);
  // Each invocation writes a fresh file; emit_report itself appends.
  std::filesystem::remove(out);
  ScanSummary s = emit_report(results, out, rec.target_rank);
  nlohmann::ordered_json j{{"family", family}, {"out", out}};
  j.update(to_json(s));
  print(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Descent by 2-isogeny over Q and Q(T)"};
  app.require_subcommand(1);

  std::string curve, place, points, family, out, name;
  long bound = 60, height = 50;
  int jobs = 1;

  auto* tate = app.add_subcommand("tate", "Tate's algorithm at a place");
  tate->add_option("--curve", curve, "curve JSON or file")->required();
  tate->add_option("--place", place, "prime p, T-e or inf")->required();

  auto* selmer = app.add_subcommand("selmer", "Selmer groups of phi and its dual");
  selmer->add_option("--curve", curve, "curve JSON or file")->required();

  auto* rank = app.add_subcommand("rank", "rank bounds from descent and points");
  rank->add_option("--curve", curve, "curve JSON or file")->required();
  rank->add_option("--points", points, "points JSON or file");
  rank->add_option("--search-bound", bound, "point search bound")->check(CLI::PositiveNumber);

  auto* fam = app.add_subcommand("family", "the built-in families");
  fam->require_subcommand(1);
  auto* fam_list = fam->add_subcommand("list", "list the families");
  auto* fam_verify = fam->add_subcommand("verify", "check conditions (a)-(g)");
  fam_verify->add_option("name", name, "family name")->required();

  auto* scan = app.add_subcommand("scan", "scan specializations of a family");
  scan->add_option("--family", family, "family name")->required();
  scan->add_option("--height", height, "height bound")->check(CLI::PositiveNumber);
  scan->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  scan->add_option("--out", out, "output JSON-lines file")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*tate) return cmd_tate(curve, place);
    if (*selmer) return cmd_selmer(curve);
    if (*rank) return cmd_rank(curve, points, bound);
    if (*fam_list) return cmd_family_list();
    if (*fam_verify) return cmd_family_verify(name);
    if (*scan) return cmd_scan(family, height, jobs, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
