#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "bbkit/weights_core.hpp"

namespace bbkit {

// Flow direction: toward_plus integrates the negative gradient (coordinates
// with positive weight decay, reaching the lambda -> 0 limit), toward_minus
// the positive gradient.
enum class FlowDirection { toward_plus, toward_minus };

struct FlowConfig {
  double dt = 1e-3;
  double t_max = 40.0;
  double tol_converge = 1e-10;  // on the gradient norm
  double tol_diverge = 1e8;     // on the point norm
  FlowDirection direction = FlowDirection::toward_plus;
};

enum class FlowVerdict { Converged, Diverged, HorizonReached };

struct FlowSample {
  double t = 0.0;
  PointC z;
  double f = 0.0;
};

struct FlowTrace {
  std::vector<FlowSample> samples;  // one per step, including the start
  FlowVerdict verdict = FlowVerdict::HorizonReached;
  PointC limit;  // final point; the detected limit when Converged
};

// f(z) = 1/2 sum l_k |z_k|^2, divided by |z|^2 in the projective variant.
// Projective with z = 0 throws DomainError.
double hamiltonian(const WeightVector& l, const PointC& z, bool projective = false);

// Action generator, radial field, and Riemannian gradient of the Hamiltonian:
// theta_k = i l_k z_k, grad_k = l_k z_k, radial = grad.
struct Fields {
  PointC theta;
  PointC radial;
  PointC grad;
};
Fields fields(const WeightVector& l, const PointC& z);

// The Hessian of f in real coordinates is diag(l) acting on each C factor:
// eigenvalue l_k with multiplicity 2. Counts are real dimensions.
struct HessianSpectrum {
  std::vector<double> eigenvalues;  // ascending, length 2n
  int morse_index = 0;              // 2 #,{l_k < 0}
  int morse_coindex = 0;            // 2 #,{l_k > 0}
  int nullity = 0;                  // 2 #,{l_k = 0}
};
HessianSpectrum hessian_spectrum(const WeightVector& l);

// Closed-form negative-gradient flow: coordinate k at time t is
// e^{-l_k t} z_k.
PointC flow_closed(const WeightVector& l, const PointC& z, double t);

// Projective variant: flow the homogeneous coordinates and renormalize to
// unit norm, largest-modulus coordinate made real positive. Keeps
// trajectories bounded without chart switching.
PointC flow_closed_proj(const WeightVector& l, const PointC& z, double t);

// Classical fourth-order one-step integration of zdot = -grad f (toward_plus)
// or +grad f. Converged when the gradient norm falls below tol_converge,
// Diverged when the point norm exceeds tol_diverge. Throws NumericalError on
// NaN or overflow, DomainError on an invalid config.
FlowTrace flow_numeric(const WeightVector& l, const PointC& z0, const FlowConfig& cfg);

// Open cone around a linear subspace P: vectors whose angle to P stays
// below theta. axis holds an orthonormal basis of P (checked to 1e-12).
struct ConeSpec {
  std::vector<std::vector<double>> axis;
  double theta = 0.0;  // in (0, pi/2]
};

struct ConeAngle {
  double tan_angle = 0.0;  // +infinity when the projection to P vanishes
  bool contains = false;   // v = 0 is contained by definition
};
ConeAngle cone_angle(const ConeSpec& c, const std::vector<double>& v);

// Random subspace Q with dim Q = dim P inside Cone_theta(P), built as the
// graph of a contraction P -> P^perp. The orthogonal projection Q -> P is
// injective; sigma_min is its smallest singular value on unit vectors.
// Identical seeds produce identical bases. Requires theta < pi/2.
struct PerturbedSubspace {
  std::vector<std::vector<double>> basis;  // orthonormal
  double sigma_min = 0.0;
};
PerturbedSubspace perturb_subspace(const ConeSpec& c, std::uint64_t seed);

}  // namespace bbkit
