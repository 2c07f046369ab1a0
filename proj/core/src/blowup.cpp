#include "bbkit/blowup.hpp"

#include <algorithm>

#include "bbkit/projective.hpp"

namespace bbkit {

namespace {

void require_chart(const BlowupSpace& b, int j, const char* who) {
  if (!b.in_chart_range(j))
    throw DomainError(std::string(who) + ": chart index " + std::to_string(j) +
                      " not in {" + std::to_string(b.m + 1) + ".." + std::to_string(b.n) + "}");
}

void require_len(const BlowupSpace& b, const PointE& v, const char* who) {
  if (static_cast<int>(v.size()) != b.n)
    throw ShapeError(std::string(who) + ": point has length " + std::to_string(v.size()) +
                     ", ambient dimension is " + std::to_string(b.n));
}

// Homogeneous slot x_k of a chart point: x_j = 1, x_k = w_k otherwise.
ExactScalar hom_slot(const ChartPoint& p, int k) {
  return k == p.j ? ExactScalar(1) : p.w[k - 1];
}

}  // namespace

WeightVector chart_weights(const WeightVector& l, const BlowupSpace& b, int j) {
  require_chart(b, j, "chart_weights");
  if (l.n() != b.n) throw ShapeError("chart_weights: weight length differs from n");
  WeightVector out;
  out.l.resize(static_cast<std::size_t>(b.n));
  for (int k = 1; k <= b.n; ++k) {
    if (k <= b.m || k == j)
      out.l[k - 1] = l.at(k);
    else
      out.l[k - 1] = l.at(k) - l.at(j);
  }
  return out;
}

PointE blowdown(const BlowupSpace& b, const ChartPoint& p) {
  require_chart(b, p.j, "blowdown");
  require_len(b, p.w, "blowdown");
  PointE z(p.w.size());
  for (int k = 1; k <= b.n; ++k) {
    if (k <= b.m || k == p.j)
      z[k - 1] = p.w[k - 1];
    else
      z[k - 1] = p.w[p.j - 1] * p.w[k - 1];
  }
  return z;
}

ChartPoint chart_section(const BlowupSpace& b, int j, const PointE& z) {
  require_chart(b, j, "chart_section");
  require_len(b, z, "chart_section");
  if (z[j - 1].is_zero())
    throw DomainError("chart_section: z_" + std::to_string(j) +
                      " = 0, point is outside the section domain");
  ChartPoint p{j, PointE(z.size())};
  ExactScalar inv = z[j - 1].inv();
  for (int k = 1; k <= b.n; ++k) {
    if (k <= b.m || k == j)
      p.w[k - 1] = z[k - 1];
    else
      p.w[k - 1] = z[k - 1] * inv;
  }
  return p;
}

ChartPoint chart_transition(const BlowupSpace& b, const ChartPoint& p, int j_new) {
  require_chart(b, p.j, "chart_transition");
  require_chart(b, j_new, "chart_transition");
  require_len(b, p.w, "chart_transition");
  if (j_new == p.j) return p;
  ExactScalar x = hom_slot(p, j_new);
  if (x.is_zero())
    throw DomainError("chart_transition: homogeneous slot " + std::to_string(j_new) +
                      " vanishes, point is not in that chart");
  ChartPoint q{j_new, PointE(p.w.size())};
  ExactScalar inv = x.inv();
  for (int k = 1; k <= b.n; ++k) {
    if (k <= b.m)
      q.w[k - 1] = p.w[k - 1];
    else if (k == j_new)
      q.w[k - 1] = p.w[p.j - 1] * x;  // exceptional parameter rescales
    else
      q.w[k - 1] = hom_slot(p, k) * inv;
  }
  return q;
}

std::vector<int> fixed_locus_chart(const WeightVector& l, const BlowupSpace& b, int j) {
  WeightVector cw = chart_weights(l, b, j);
  std::vector<int> out;
  for (int k = 1; k <= b.n; ++k)
    if (cw.at(k) != 0) out.push_back(k);
  return out;
}

BlowupMembership classify_blowup_point(const WeightVector& l, const BlowupSpace& b,
                                       const ChartPoint& p) {
  require_chart(b, p.j, "classify_blowup_point");
  require_len(b, p.w, "classify_blowup_point");
  StratumMembership own = classify_point(chart_weights(l, b, p.j), p.w);

  BlowupMembership out;
  out.is_fixed = own.is_fixed;
  if (own.is_fixed) {
    out.plus_limit = p;
    out.minus_limit = p;
    return out;
  }

  // Chart of the extremal-weight nonzero homogeneous slot; the projective
  // part of the limit lives there.
  auto escape_chart = [&](bool minimal) {
    int best = 0;
    for (int k = b.m + 1; k <= b.n; ++k) {
      if (hom_slot(p, k).is_zero()) continue;
      if (best == 0 || (minimal ? l.at(k) < l.at(best) : l.at(k) > l.at(best))) best = k;
    }
    return best;  // nonzero: slot j is always 1
  };

  auto resolve = [&](bool plus) -> std::optional<ChartPoint> {
    const auto& own_lim = plus ? own.plus_limit : own.minus_limit;
    if (own_lim) return ChartPoint{p.j, *own_lim};
    int j_star = escape_chart(/*minimal=*/plus);
    if (j_star == p.j) return std::nullopt;
    ChartPoint q = chart_transition(b, p, j_star);
    StratumMembership there = classify_point(chart_weights(l, b, j_star), q.w);
    const auto& lim = plus ? there.plus_limit : there.minus_limit;
    if (!lim) return std::nullopt;
    return ChartPoint{j_star, *lim};
  };

  out.plus_limit = resolve(true);
  out.minus_limit = resolve(false);
  return out;
}

std::vector<int> blowdown_fixed_index_set(const WeightVector& l, const BlowupSpace& b, int j) {
  require_chart(b, j, "blowdown_fixed_index_set");
  if (l.n() != b.n) throw ShapeError("blowdown_fixed_index_set: weight length differs from n");
  std::vector<int> out;
  for (int k = 1; k <= b.m; ++k)
    if (l.at(k) == 0) out.push_back(k);
  if (l.at(j) == 0) {
    // w_j is free on the fixed locus, so the image closure sweeps every
    // zero-weight exceptional direction visible in this chart.
    for (int k = b.m + 1; k <= b.n; ++k)
      if (l.at(k) == 0) out.push_back(k);
  }
  return out;
}

std::vector<BlowupFixedComponent> global_fixed_components(const WeightVector& l,
                                                          const BlowupSpace& b) {
  if (l.n() != b.n) throw ShapeError("global_fixed_components: weight length differs from n");
  WeightVector exc;
  for (int k = b.m + 1; k <= b.n; ++k) exc.l.push_back(l.at(k));

  std::vector<int> base0;
  for (int k = 1; k <= b.m; ++k)
    if (l.at(k) == 0) base0.push_back(k);

  std::vector<BlowupFixedComponent> out;
  if (b.trivial()) {
    // Single chart, identity map: the fixed set is the coordinate subspace J0.
    BlowupFixedComponent c;
    c.proj_indices = {b.n};
    c.weight = l.at(b.n);
    c.base_indices = base0;
    c.cone = c.weight == 0;
    c.dim = static_cast<int>(base0.size()) + (c.weight == 0 ? 1 : 0);
    out.push_back(std::move(c));
    return out;
  }

  for (const FixedComponent& pc : fixed_components(exc)) {
    BlowupFixedComponent c;
    for (int local : pc.indices) c.proj_indices.push_back(local + b.m);
    c.weight = pc.weight;
    c.base_indices = base0;
    c.cone = pc.weight == 0;
    c.dim = pc.dim + static_cast<int>(base0.size()) + (c.cone ? 1 : 0);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace bbkit
