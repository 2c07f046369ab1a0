#include "bbkit/flow_lab.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bbkit/rng.hpp"

namespace bbkit {

namespace {

void require_len(const WeightVector& l, const PointC& z, const char* who) {
  if (static_cast<int>(z.size()) != l.n())
    throw ShapeError(std::string(who) + ": point has length " + std::to_string(z.size()) +
                     ", weights have length " + std::to_string(l.n()));
}

double norm2(const PointC& z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return s;
}

double grad_norm(const WeightVector& l, const PointC& z) {
  double s = 0.0;
  for (int k = 1; k <= l.n(); ++k)
    s += static_cast<double>(l.at(k)) * static_cast<double>(l.at(k)) * std::norm(z[k - 1]);
  return std::sqrt(s);
}

Eigen::MatrixXd axis_matrix(const ConeSpec& c) {
  if (c.axis.empty()) throw ShapeError("ConeSpec: empty axis");
  const std::size_t d = c.axis.front().size();
  if (d == 0) throw ShapeError("ConeSpec: zero-dimensional ambient space");
  Eigen::MatrixXd B(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(c.axis.size()));
  for (std::size_t i = 0; i < c.axis.size(); ++i) {
    if (c.axis[i].size() != d) throw ShapeError("ConeSpec: ragged axis vectors");
    for (std::size_t r = 0; r < d; ++r) B(static_cast<Eigen::Index>(r),
                                          static_cast<Eigen::Index>(i)) = c.axis[i][r];
  }
  Eigen::MatrixXd gram = B.transpose() * B;
  Eigen::MatrixXd dev = gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
  if (dev.cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("ConeSpec: axis basis is not orthonormal to 1e-12");
  return B;
}

void require_theta(const ConeSpec& c, bool open_at_right_angle) {
  const double half_pi = M_PI / 2.0;
  if (!(c.theta > 0.0) || c.theta > half_pi + 1e-15)
    throw DomainError("ConeSpec: theta must lie in (0, pi/2]");
  if (open_at_right_angle && c.theta >= half_pi - 1e-15)
    throw DomainError("perturb_subspace needs theta < pi/2");
}

}  // namespace

double hamiltonian(const WeightVector& l, const PointC& z, bool projective) {
  require_len(l, z, "hamiltonian");
  double s = 0.0;
  for (int k = 1; k <= l.n(); ++k) s += static_cast<double>(l.at(k)) * std::norm(z[k - 1]);
  if (!projective) return 0.5 * s;
  double n2 = norm2(z);
  if (n2 == 0.0) throw DomainError("hamiltonian: projective form needs z != 0");
  return 0.5 * s / n2;
}

Fields fields(const WeightVector& l, const PointC& z) {
  require_len(l, z, "fields");
  Fields f;
  f.theta.resize(z.size());
  f.grad.resize(z.size());
  for (int k = 1; k <= l.n(); ++k) {
    auto lk = static_cast<double>(l.at(k));
    f.grad[k - 1] = lk * z[k - 1];
    f.theta[k - 1] = std::complex<double>(0.0, 1.0) * lk * z[k - 1];
  }
  f.radial = f.grad;
  return f;
}

HessianSpectrum hessian_spectrum(const WeightVector& l) {
  HessianSpectrum h;
  h.eigenvalues.reserve(2 * static_cast<std::size_t>(l.n()));
  for (long long v : l.l) {
    h.eigenvalues.push_back(static_cast<double>(v));
    h.eigenvalues.push_back(static_cast<double>(v));
    if (v < 0) h.morse_index += 2;
    if (v > 0) h.morse_coindex += 2;
    if (v == 0) h.nullity += 2;
  }
  std::sort(h.eigenvalues.begin(), h.eigenvalues.end());
  return h;
}

PointC flow_closed(const WeightVector& l, const PointC& z, double t) {
  require_len(l, z, "flow_closed");
  PointC out(z.size());
  for (int k = 1; k <= l.n(); ++k)
    out[k - 1] = std::exp(-static_cast<double>(l.at(k)) * t) * z[k - 1];
  return out;
}

PointC flow_closed_proj(const WeightVector& l, const PointC& z, double t) {
  require_len(l, z, "flow_closed_proj");
  // Shift exponents so the dominant surviving coordinate has factor 1;
  // projectively equivalent and immune to overflow for large t.
  double shift = 0.0;
  bool found = false;
  for (int k = 1; k <= l.n(); ++k) {
    if (z[k - 1] == std::complex<double>(0.0, 0.0)) continue;
    double a = -static_cast<double>(l.at(k)) * t;
    if (!found || a > shift) shift = a;
    found = true;
  }
  if (!found) throw DomainError("flow_closed_proj: z must be nonzero");
  PointC out(z.size());
  for (int k = 1; k <= l.n(); ++k)
    out[k - 1] = std::exp(-static_cast<double>(l.at(k)) * t - shift) * z[k - 1];
  double nrm = std::sqrt(norm2(out));
  std::size_t lead = 0;
  for (std::size_t k = 1; k < out.size(); ++k)
    if (std::abs(out[k]) > std::abs(out[lead])) lead = k;
  std::complex<double> phase = std::abs(out[lead]) / out[lead];
  for (auto& c : out) c *= phase / nrm;
  return out;
}

FlowTrace flow_numeric(const WeightVector& l, const PointC& z0, const FlowConfig& cfg) {
  require_len(l, z0, "flow_numeric");
  if (!(cfg.dt > 0.0) || !(cfg.dt < cfg.t_max))
    throw DomainError("flow_numeric: need 0 < dt < t_max");
  if (!(cfg.tol_converge > 0.0) || !(cfg.tol_diverge > 0.0))
    throw DomainError("flow_numeric: tolerances must be positive");

  const double sign = cfg.direction == FlowDirection::toward_plus ? -1.0 : 1.0;
  auto rhs = [&](const PointC& z, PointC& out) {
    for (int k = 1; k <= l.n(); ++k) out[k - 1] = sign * static_cast<double>(l.at(k)) * z[k - 1];
  };

  FlowTrace trace;
  PointC z = z0;
  double t = 0.0;
  trace.samples.push_back({t, z, hamiltonian(l, z)});

  auto finished = [&](FlowVerdict v) {
    trace.verdict = v;
    trace.limit = z;
    return trace;
  };

  if (grad_norm(l, z) < cfg.tol_converge) return finished(FlowVerdict::Converged);
  if (std::sqrt(norm2(z)) > cfg.tol_diverge) return finished(FlowVerdict::Diverged);

  PointC k1(z.size()), k2(z.size()), k3(z.size()), k4(z.size()), tmp(z.size());
  while (t < cfg.t_max) {
    double h = std::min(cfg.dt, cfg.t_max - t);
    rhs(z, k1);
    for (std::size_t i = 0; i < z.size(); ++i) tmp[i] = z[i] + 0.5 * h * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < z.size(); ++i) tmp[i] = z[i] + 0.5 * h * k2[i];
    rhs(tmp, k3);
    for (std::size_t i = 0; i < z.size(); ++i) tmp[i] = z[i] + h * k3[i];
    rhs(tmp, k4);
    for (std::size_t i = 0; i < z.size(); ++i)
      z[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t += h;

    for (const auto& c : z)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw NumericalError("flow_numeric: non-finite coordinate at t = " + std::to_string(t));

    trace.samples.push_back({t, z, hamiltonian(l, z)});
    if (grad_norm(l, z) < cfg.tol_converge) return finished(FlowVerdict::Converged);
    if (std::sqrt(norm2(z)) > cfg.tol_diverge) return finished(FlowVerdict::Diverged);
  }
  return finished(FlowVerdict::HorizonReached);
}

ConeAngle cone_angle(const ConeSpec& c, const std::vector<double>& v) {
  Eigen::MatrixXd B = axis_matrix(c);
  require_theta(c, /*open_at_right_angle=*/false);
  if (static_cast<Eigen::Index>(v.size()) != B.rows())
    throw ShapeError("cone_angle: vector length differs from ambient dimension");
  Eigen::VectorXd x(B.rows());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = v[static_cast<std::size_t>(i)];
  if (x.isZero(0.0)) return {0.0, true};
  Eigen::VectorXd proj = B * (B.transpose() * x);
  double np = proj.norm();
  double nq = (x - proj).norm();
  ConeAngle out;
  if (np == 0.0) {
    out.tan_angle = std::numeric_limits<double>::infinity();
    out.contains = false;
    return out;
  }
  out.tan_angle = nq / np;
  out.contains = out.tan_angle < std::tan(c.theta);
  return out;
}

PerturbedSubspace perturb_subspace(const ConeSpec& c, std::uint64_t seed) {
  Eigen::MatrixXd B = axis_matrix(c);
  require_theta(c, /*open_at_right_angle=*/true);
  const Eigen::Index d = B.rows(), p = B.cols();
  if (p > d) throw ShapeError("perturb_subspace: more basis vectors than ambient dimensions");

  // Orthonormal basis of P^perp from the full QR of the axis matrix.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(B);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::MatrixXd Bperp = Q.rightCols(d - p);

  Eigen::MatrixXd cols = B;
  if (d > p) {
    Rng rng(seed);
    Eigen::MatrixXd A(d - p, p);
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = rng.normal();
    double smax = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues()(0);
    if (smax > 0.0) A *= 0.5 * std::tan(c.theta) / smax;  // strict cone margin
    cols = B + Bperp * A;
  }

  // Orthonormalize the graph columns; the span is unchanged.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr2(cols);
  Eigen::MatrixXd Qon =
      qr2.householderQ() * Eigen::MatrixXd::Identity(d, p);

  Eigen::MatrixXd M = B.transpose() * Qon;
  Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues();

  PerturbedSubspace out;
  out.sigma_min = sv(sv.size() - 1);
  out.basis.resize(static_cast<std::size_t>(p), std::vector<double>(static_cast<std::size_t>(d)));
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i < d; ++i)
      out.basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = Qon(i, j);
  return out;
}

}  // namespace bbkit
