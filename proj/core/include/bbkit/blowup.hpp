#pragma once

#include <optional>
#include <vector>

#include "bbkit/weights_core.hpp"

namespace bbkit {

// Blowup of C^n along the coordinate center Z = {z_{m+1} = ... = z_n = 0},
// presented as an atlas of n-m affine charts indexed j = m+1..n. Chart j
// carries coordinates (w_1,...,w_n) with blowdown
//   z_k = w_k          for k <= m and k = j,
//   z_k = w_j * w_k    otherwise,
// so the exceptional divisor in chart j is {w_j = 0}.
struct BlowupSpace {
  int n = 0;
  int m = 0;  // 0 <= m < n

  BlowupSpace(int n, int m) : n(n), m(m) {
    if (n < 1 || m < 0 || m >= n)
      throw ShapeError("BlowupSpace needs 0 <= m < n, n >= 1");
  }
  // n - m = 1 blows up a hypersurface center; the map is an isomorphism.
  bool trivial() const { return n - m == 1; }
  std::vector<int> charts() const {
    std::vector<int> out;
    for (int j = m + 1; j <= n; ++j) out.push_back(j);
    return out;
  }
  bool in_chart_range(int j) const { return j >= m + 1 && j <= n; }
};

// Point of the blowup in one chart.
struct ChartPoint {
  int j = 0;   // chart index, in {m+1..n}
  PointE w;    // length n
};

// Weight of w_k in chart j: l_k for k <= m, l_k - l_j for the other
// exceptional slots, l_j for k = j.
WeightVector chart_weights(const WeightVector& l, const BlowupSpace& b, int j);

PointE blowdown(const BlowupSpace& b, const ChartPoint& p);

// Partial inverse of the blowdown over {z_j != 0}: w_k = z_k for k <= m and
// k = j, w_k = z_k / z_j otherwise. Throws DomainError when z_j = 0.
ChartPoint chart_section(const BlowupSpace& b, int j, const PointE& z);

// Change of chart. The homogeneous slots of p are x_k = w_k (k != j), x_j = 1;
// requires x_{j'} != 0. Blowdown is preserved, including on the exceptional
// divisor.
ChartPoint chart_transition(const BlowupSpace& b, const ChartPoint& p, int j_new);

// Chart coordinates forced to vanish on the fixed locus: the slots whose
// chart weight is nonzero.
std::vector<int> fixed_locus_chart(const WeightVector& l, const BlowupSpace& b, int j);

// BB membership on the blowup. Limits are reported in the chart that contains
// them (the input's own chart when possible); a limit escaping every chart of
// the point means the corresponding stratum does not contain it.
struct BlowupMembership {
  std::optional<ChartPoint> plus_limit;
  std::optional<ChartPoint> minus_limit;
  bool is_fixed = false;
};

BlowupMembership classify_blowup_point(const WeightVector& l, const BlowupSpace& b,
                                       const ChartPoint& p);

// Index set of the closure of the blowdown image of chart j's fixed locus.
// The union over charts equals the zero-weight index set J0 of l.
std::vector<int> blowdown_fixed_index_set(const WeightVector& l, const BlowupSpace& b, int j);

// Global fixed component of the blowup, assembled from a fixed component of
// P(Z^perp) (slots proj_indices, common weight kappa) and the fixed part of
// the base. For kappa != 0 the affine part lies in the center; for kappa = 0
// the incidence condition frees one cone parameter along the line.
struct BlowupFixedComponent {
  std::vector<int> proj_indices;   // exceptional slots sharing weight kappa
  long long weight = 0;            // kappa
  std::vector<int> base_indices;   // k <= m with l_k = 0
  bool cone = false;               // kappa == 0: affine part sweeps the line
  int dim = 0;
};

std::vector<BlowupFixedComponent> global_fixed_components(const WeightVector& l,
                                                          const BlowupSpace& b);

}  // namespace bbkit
