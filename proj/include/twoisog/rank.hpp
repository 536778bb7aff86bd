#pragma once

#include <string>
#include <vector>

#include "twoisog/points.hpp"

namespace twoisog {

/// determined(r) when the bounds meet, bounded(lo, hi) otherwise.
struct RankStatus {
  int lo = 0, hi = 0;

  bool determined() const { return lo == hi; }
  std::string str() const {
    if (determined()) return "determined(" + std::to_string(lo) + ")";
    return "bounded(" + std::to_string(lo) + ", " + std::to_string(hi) + ")";
  }
  friend bool operator==(const RankStatus&, const RankStatus&) = default;
};

struct RankOptions {
  DescentOptions descent;
  long search_bound = 60;  // M, v <= bound in the per-class search; 0 disables it
};

/// A class of delta's image together with a point realizing it.
struct ImageWitness {
  SquareClassQ cls;
  PointQ point;
};

struct RankResult {
  RankStatus status;
  DescentData phi, phi_hat;  // Sel_phi (delta on E') and Sel_phi-hat (delta on E)
  std::vector<ImageWitness> witnesses_E, witnesses_E_dual;  // bases of the delta images
  CasselsCheck cassels;

  int selmer_dim_phi() const { return phi.selmer.dim(); }
  int selmer_dim_phi_hat() const { return phi_hat.selmer.dim(); }
};

namespace detail {

/// Adds the delta classes of the points to the span, recording a witness for
/// each class that enlarged it.
inline void absorb(const CurveQ& F, const std::vector<PointQ>& pts, ClassSpan& span,
                   std::vector<ImageWitness>& wit) {
  for (const auto& P : pts) {
    SquareClassQ c = delta_class(F, P);
    if (span.add(c)) wit.push_back({c, P});
  }
}

/// Searches a point for every Selmer class outside the current span.
inline void fill_from_selmer(const CurveQ& F, const SelmerGroup& sel, long bound, ClassSpan& span,
                             std::vector<ImageWitness>& wit) {
  if (bound <= 0) return;
  for (const auto& c : sel.elements()) {
    if (span.contains(c)) continue;
    if (auto P = find_point_in_class(F, c, bound)) absorb(F, {*P}, span, wit);
  }
}

}  // namespace detail

/// Rank bounds from the two descents and from points on E and E' (the dual model
/// y^2 = x^3 - 2a x^2 + (a^2 - 4b) x).
inline RankResult rank_bounds(const CurveQ& E, const std::vector<PointQ>& points_E,
                              const std::vector<PointQ>& points_E_dual, const RankOptions& opts = {}) {
  CurveQ Ed = dual_model(E);
  for (const auto& P : points_E) E.require(P);
  for (const auto& Q : points_E_dual) Ed.require(Q);

  RankResult out;
  out.phi = descent(E, SelmerContext::phi, opts.descent);
  out.phi_hat = descent(E, SelmerContext::phi_hat, opts.descent);
  out.cassels = cassels_ratio_check(out.phi, out.phi_hat);

  ClassSpan span_E, span_Ed;
  std::vector<PointQ> seed_E{PointQ::at_infinity(), torsion_point(E)};
  std::vector<PointQ> seed_Ed{PointQ::at_infinity(), torsion_point(Ed)};
  for (const auto& P : extra_two_torsion(E)) seed_E.push_back(P);
  for (const auto& Q : extra_two_torsion(Ed)) seed_Ed.push_back(Q);
  seed_E.insert(seed_E.end(), points_E.begin(), points_E.end());
  seed_Ed.insert(seed_Ed.end(), points_E_dual.begin(), points_E_dual.end());
  detail::absorb(E, seed_E, span_E, out.witnesses_E);
  detail::absorb(Ed, seed_Ed, span_Ed, out.witnesses_E_dual);
  detail::fill_from_selmer(E, out.phi_hat.selmer, opts.search_bound, span_E, out.witnesses_E);
  detail::fill_from_selmer(Ed, out.phi.selmer, opts.search_bound, span_Ed, out.witnesses_E_dual);

  for (const auto& w : out.witnesses_E)
    if (!out.phi_hat.selmer.contains(w.cls))
      throw error("delta image class " + w.cls.str() + " is not in the phi-hat Selmer group");
  for (const auto& w : out.witnesses_E_dual)
    if (!out.phi.selmer.contains(w.cls))
      throw error("delta image class " + w.cls.str() + " is not in the phi Selmer group");

  // rank = dim delta_E(E) + dim delta_E'(E') - 2; each image contains the class of (0,0).
  out.status.lo = span_E.dim() + span_Ed.dim() - 2;
  out.status.hi = out.phi_hat.selmer.dim() + out.phi.selmer.dim() - 2;
  if (out.status.lo > out.status.hi) throw error("rank lower bound exceeds the Selmer bound");
  return out;
}

}  // namespace twoisog
