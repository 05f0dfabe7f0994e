// Copyright 2026 The kerrsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "kerrsim/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace kerrsim {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0,
                          8.0 / 9.0, 1.0, 1.0};
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0,
                 kB4 = 125.0 / 192.0, kB5 = -2187.0 / 6784.0,
                 kB6 = 11.0 / 84.0;
// b - b*, the 5th minus the embedded 4th order weights.
constexpr double kE1 = kB1 - 5179.0 / 57600.0;
constexpr double kE3 = kB3 - 7571.0 / 16695.0;
constexpr double kE4 = kB4 - 393.0 / 640.0;
constexpr double kE5 = kB5 + 92097.0 / 339200.0;
constexpr double kE6 = kB6 - 187.0 / 2100.0;
constexpr double kE7 = -1.0 / 40.0;

double round_two_digits(double x) {
  if (x <= 0.0) return x;
  const double p = std::pow(10.0, std::floor(std::log10(x)) - 1.0);
  return std::ceil(x / p) * p;
}

}  // namespace

Rk45Stepper::Rk45Stepper(DerivFn f, Rk45Options opt)
    : f_(std::move(f)), opt_(opt) {}

void Rk45Stepper::reset() {
  have_fsal_ = false;
  h_ = 0.0;
}

double Rk45Stepper::error_norm(const Eigen::VectorXcd& y,
                               const Eigen::VectorXcd& ynew,
                               const Eigen::VectorXcd& yerr) const {
  const Eigen::Index n = y.size();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sc =
        opt_.atol + opt_.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
    const double e = std::abs(yerr[i]) / sc;
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

double Rk45Stepper::initial_step(double t, double span,
                                 const Eigen::VectorXcd& y) {
  if (opt_.h_init > 0.0) return std::min(opt_.h_init, span);
  // Scale-based guess, refined immediately by the controller.
  f_(t, y, k_[0]);
  have_fsal_ = true;
  double d0 = 0.0, d1 = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double sc = opt_.atol + opt_.rtol * std::abs(y[i]);
    const double a = std::abs(y[i]) / sc;
    const double b = std::abs(k_[0][i]) / sc;
    d0 += a * a;
    d1 += b * b;
  }
  d0 = std::sqrt(d0 / static_cast<double>(y.size()));
  d1 = std::sqrt(d1 / static_cast<double>(y.size()));
  double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
  return std::min(h, span);
}

double Rk45Stepper::step(double t, double t_end, Eigen::VectorXcd& y) {
  const double span = t_end - t;
  if (span <= 0.0) return 0.0;
  const Eigen::Index n = y.size();
  for (auto& k : k_) {
    if (k.size() != n) k.resize(n);
  }
  ytmp_.resize(n);
  ynew_.resize(n);
  yerr_.resize(n);

  if (h_ <= 0.0) h_ = initial_step(t, span, y);
  if (opt_.h_max > 0.0) h_ = std::min(h_, opt_.h_max);
  const double eps = std::numeric_limits<double>::epsilon();
  const double h_floor =
      std::max(opt_.h_min, 16.0 * eps * std::max(std::abs(t), 1.0));

  if (!have_fsal_) {
    f_(t, y, k_[0]);
    have_fsal_ = true;
  }

  bool rejected_before = false;
  for (;;) {
    double h = std::min(h_, span);
    if (h < h_floor && h < span)
      throw std::runtime_error("rk45: step size underflow");

    ytmp_ = y + h * (kA21 * k_[0]);
    f_(t + kC[1] * h, ytmp_, k_[1]);
    ytmp_ = y + h * (kA31 * k_[0] + kA32 * k_[1]);
    f_(t + kC[2] * h, ytmp_, k_[2]);
    ytmp_ = y + h * (kA41 * k_[0] + kA42 * k_[1] + kA43 * k_[2]);
    f_(t + kC[3] * h, ytmp_, k_[3]);
    ytmp_ = y + h * (kA51 * k_[0] + kA52 * k_[1] + kA53 * k_[2] +
                     kA54 * k_[3]);
    f_(t + kC[4] * h, ytmp_, k_[4]);
    ytmp_ = y + h * (kA61 * k_[0] + kA62 * k_[1] + kA63 * k_[2] +
                     kA64 * k_[3] + kA65 * k_[4]);
    f_(t + h, ytmp_, k_[5]);
    ynew_ = y + h * (kB1 * k_[0] + kB3 * k_[2] + kB4 * k_[3] + kB5 * k_[4] +
                     kB6 * k_[5]);
    f_(t + h, ynew_, k_[6]);
    yerr_ = h * (kE1 * k_[0] + kE3 * k_[2] + kE4 * k_[3] + kE5 * k_[4] +
                 kE6 * k_[5] + kE7 * k_[6]);

    const double err = error_norm(y, ynew_, yerr_);
    if (err <= 1.0) {
      ++stats_.accepted;
      double factor = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
      factor = std::clamp(factor, 0.2, 5.0);
      if (rejected_before) factor = std::min(factor, 1.0);
      h_ = h * factor;
      y.swap(ynew_);
      k_[0].swap(k_[6]);  // first-same-as-last
      return h;
    }
    ++stats_.rejected;
    rejected_before = true;
    const double factor =
        std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    h_ = h * factor;
  }
}

Rk45Stats rk45_integrate(const DerivFn& f, double t0, double t1,
                         Eigen::VectorXcd& y, const Rk45Options& opt) {
  Rk45Stepper stepper(f, opt);
  double t = t0;
  const double eps = std::numeric_limits<double>::epsilon();
  while (t < t1 - 16.0 * eps * std::max(std::abs(t1), 1.0)) {
    if (opt.max_steps > 0 &&
        stepper.stats().accepted + stepper.stats().rejected >= opt.max_steps)
      throw std::runtime_error("rk45: step budget exhausted");
    t += stepper.step(t, t1, y);
  }
  return stepper.stats();
}

KrylovStepper::KrylovStepper(ApplyFn apply, Eigen::Index dim, double anorm,
                             KrylovOptions opt)
    : apply_(std::move(apply)), dim_(dim), anorm_(std::max(anorm, 1e-300)),
      opt_(opt) {
  opt_.m = static_cast<int>(std::min<Eigen::Index>(opt_.m, dim_));
  if (opt_.m < 1) opt_.m = 1;
}

double KrylovStepper::build(const Eigen::VectorXcd& v, double tau_max) {
  const int m = opt_.m;
  basis_.resize(dim_, m + 1);
  hess_.setZero(m + 2, m + 2);
  beta_ = v.norm();
  tau_ = tau_max;
  tau_next_ = tau_max;
  if (beta_ == 0.0 || tau_max <= 0.0) {
    mb_ = 1;
    k1_ = 0;
    basis_.col(0).setZero();
    tau_ = std::max(tau_max, 0.0);
    return tau_;
  }

  basis_.col(0) = v / beta_;
  Eigen::VectorXcd p(dim_);
  const double break_tol = 1e-12 * std::max(anorm_, 1.0);
  mb_ = m;
  k1_ = 2;
  for (int j = 0; j < m; ++j) {
    apply_(basis_.col(j), p);
    for (int i = 0; i <= j; ++i) {
      const std::complex<double> hij = basis_.col(i).dot(p);
      hess_(i, j) = hij;
      p -= hij * basis_.col(i);
    }
    const double s = p.norm();
    if (s < break_tol) {
      mb_ = j + 1;
      k1_ = 0;
      break;
    }
    hess_(j + 1, j) = s;
    basis_.col(j + 1) = p / s;
  }
  if (k1_ != 0) {
    apply_(basis_.col(m), p);
    avnorm_ = p.norm();
    hess_(m + 1, m) = 1.0;
  }

  if (k1_ == 0) {
    // Invariant subspace: the small exponential is exact.
    tau_ = tau_max;
    tau_next_ = tau_max;
    return tau_;
  }

  // Per-unit-time error budget, relative to the vector being propagated.
  const double budget_rate = opt_.tol * beta_;
  const double delta = 1.2;
  const double gamma = 0.9;
  const int mx = mb_ + k1_;
  for (;;) {
    const Eigen::MatrixXcd F =
        (tau_ * hess_.topLeftCorner(mx, mx)).exp();
    const double err1 = beta_ * std::abs(F(mb_, 0));
    const double err2 = beta_ * std::abs(F(mb_ + 1, 0)) * avnorm_;
    double err_loc;
    double xm = 1.0 / static_cast<double>(mb_);
    if (err1 > 10.0 * err2) {
      err_loc = err2;
    } else if (err1 > err2) {
      err_loc = (err1 * err2) / (err1 - err2);
    } else {
      err_loc = err1;
      xm = 1.0 / static_cast<double>(std::max(mb_ - 1, 1));
    }
    err_loc = std::max(err_loc, 1e-300);
    double tau_new =
        gamma * tau_ * std::pow(tau_ * budget_rate / err_loc, xm);
    tau_new = round_two_digits(tau_new);
    if (err_loc <= delta * tau_ * budget_rate) {
      tau_next_ = std::max(tau_new, 1e-300);
      return tau_;
    }
    if (tau_new >= tau_) tau_new = 0.5 * tau_;
    tau_ = tau_new;
    if (tau_ < 1e-14 * std::max(tau_max, 1.0))
      throw std::runtime_error("krylov_expv: step size underflow");
  }
}

Eigen::VectorXcd KrylovStepper::eval(double s) const {
  const int mx = mb_ + (k1_ == 0 ? 0 : 1);
  if (beta_ == 0.0) return Eigen::VectorXcd::Zero(dim_);
  const int fdim = mb_ + k1_;
  const Eigen::MatrixXcd F = (s * hess_.topLeftCorner(fdim, fdim)).exp();
  return beta_ * (basis_.leftCols(mx) * F.col(0).head(mx));
}

Eigen::VectorXcd krylov_expv(const ApplyFn& apply, double t,
                             const Eigen::VectorXcd& v, double anorm,
                             const KrylovOptions& opt) {
  if (t < 0.0) throw std::invalid_argument("krylov_expv: negative time");
  Eigen::VectorXcd w = v;
  if (t == 0.0 || v.norm() == 0.0) return w;
  // The stepper budgets error per unit time; spreading the requested
  // tolerance over the horizon keeps the accumulated error near opt.tol.
  KrylovOptions per_step = opt;
  per_step.tol = opt.tol / std::max(t, 1.0);
  KrylovStepper stepper(apply, v.size(), anorm, per_step);

  // First-step heuristic from the series truncation bound.
  const int m = std::max(1, static_cast<int>(std::min<Eigen::Index>(
                                opt.m, v.size())));
  const double mp1 = m + 1;
  const double fact =
      std::pow(mp1 / std::exp(1.0), mp1) * std::sqrt(2.0 * M_PI * mp1);
  const double a = std::max(anorm, 1e-300);
  double tau = (1.0 / a) *
               std::pow(fact * per_step.tol / (4.0 * v.norm() * a), 1.0 / m);
  tau = round_two_digits(std::min(tau, t));
  if (!(tau > 0.0)) tau = t;

  double t_now = 0.0;
  const double t_eps = 1e-12 * t;
  while (t_now < t - t_eps) {
    const double step = stepper.build(w, std::min(tau, t - t_now));
    w = stepper.eval(step);
    t_now += step;
    tau = stepper.suggested_tau();
  }
  return w;
}

}  // namespace kerrsim
