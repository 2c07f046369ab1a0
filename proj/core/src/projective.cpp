#include "bbkit/projective.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace bbkit {

ProjPoint make_proj_point(PointE homog) {
  if (homog.empty()) throw ShapeError("ProjPoint needs at least one coordinate");
  auto first = std::find_if(homog.begin(), homog.end(),
                            [](const ExactScalar& s) { return !s.is_zero(); });
  if (first == homog.end())
    throw DomainError("ProjPoint: all homogeneous coordinates vanish");
  ExactScalar inv = first->inv();
  for (auto& c : homog) c *= inv;
  return ProjPoint{std::move(homog)};
}

std::vector<FixedComponent> fixed_components(const WeightVector& w) {
  if (w.n() < 2) throw ShapeError("fixed_components: projective space needs n >= 2");
  std::map<long long, std::vector<int>> by_weight;
  for (int k = 1; k <= w.n(); ++k) by_weight[w.at(k)].push_back(k);
  std::vector<FixedComponent> out;
  out.reserve(by_weight.size());
  for (auto& [kappa, idx] : by_weight)
    out.push_back({idx, kappa, static_cast<int>(idx.size()) - 1});
  return out;
}

namespace {

// Projection of p onto the slots of the extremal weight among its nonzero
// coordinates, together with that weight's component.
std::pair<FixedComponent, ProjPoint> project_extremal(const WeightVector& w,
                                                      const ProjPoint& p,
                                                      bool minimal) {
  long long best = 0;
  bool found = false;
  for (int k = 1; k <= w.n(); ++k) {
    if (p.homog[k - 1].is_zero()) continue;
    if (!found || (minimal ? w.at(k) < best : w.at(k) > best)) best = w.at(k);
    found = true;
  }
  PointE lim(p.homog.size(), ExactScalar(0));
  for (int k = 1; k <= w.n(); ++k)
    if (!p.homog[k - 1].is_zero() && w.at(k) == best) lim[k - 1] = p.homog[k - 1];
  std::vector<int> idx;
  for (int k = 1; k <= w.n(); ++k)
    if (w.at(k) == best) idx.push_back(k);
  FixedComponent comp{idx, best, static_cast<int>(idx.size()) - 1};
  return {comp, make_proj_point(std::move(lim))};
}

}  // namespace

ProjMembership classify_proj(const WeightVector& w, const ProjPoint& p) {
  if (static_cast<int>(p.homog.size()) != w.n())
    throw ShapeError("classify_proj: point has length " + std::to_string(p.homog.size()) +
                     ", weights have length " + std::to_string(w.n()));
  auto [plus_c, plus_p] = project_extremal(w, p, /*minimal=*/true);
  auto [minus_c, minus_p] = project_extremal(w, p, /*minimal=*/false);
  ProjMembership m{plus_c, plus_p, minus_c, minus_p, /*is_fixed=*/false};
  m.is_fixed = plus_c.weight == minus_c.weight;  // all nonzero slots share one weight
  return m;
}

WeightVector tangent_weights_at_fixed(const WeightVector& w, const FixedComponent& c, int j) {
  if (!std::binary_search(c.indices.begin(), c.indices.end(), j))
    throw DomainError("tangent_weights_at_fixed: slot " + std::to_string(j) +
                      " is not in the component");
  WeightVector t;
  t.l.reserve(static_cast<std::size_t>(w.n()) - 1);
  for (int k = 1; k <= w.n(); ++k)
    if (k != j) t.l.push_back(w.at(k) - c.weight);
  return t;
}

}  // namespace bbkit
