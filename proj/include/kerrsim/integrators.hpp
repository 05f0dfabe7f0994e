// Copyright 2026 The kerrsim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef KERRSIM_INTEGRATORS_HPP
#define KERRSIM_INTEGRATORS_HPP

#include <Eigen/Dense>
#include <functional>

namespace kerrsim {

// Right-hand side callback: dydt = f(t, y). The output vector is
// preallocated by the caller and must be filled completely.
using DerivFn =
    std::function<void(double, const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

struct Rk45Options {
  double rtol = 1e-8;
  double atol = 1e-12;
  double h_init = 0.0;  // 0 selects an automatic initial step
  double h_min = 0.0;   // 0 selects a machine-precision floor
  double h_max = 0.0;   // 0 leaves the step uncapped
  long long max_steps = 0;  // 0 means unlimited
};

struct Rk45Stats {
  long long accepted = 0;
  long long rejected = 0;
};

// Embedded Dormand-Prince 5(4) pair with PI-free step control and
// first-same-as-last reuse. The stepper keeps its step-size estimate and
// cached derivative between calls so a caller can advance one accepted
// step at a time (needed for locating jump times inside a step).
class Rk45Stepper {
 public:
  Rk45Stepper(DerivFn f, Rk45Options opt = {});

  // Advances y by one accepted step from t, never past t_end.
  // Returns the step actually taken (0 if t >= t_end).
  double step(double t, double t_end, Eigen::VectorXcd& y);

  // Discards the cached derivative and step-size estimate. Call after
  // modifying y externally (e.g. applying a collapse operator).
  void reset();

  const Rk45Stats& stats() const { return stats_; }

 private:
  double error_norm(const Eigen::VectorXcd& y, const Eigen::VectorXcd& ynew,
                    const Eigen::VectorXcd& yerr) const;
  double initial_step(double t, double span, const Eigen::VectorXcd& y);

  DerivFn f_;
  Rk45Options opt_;
  double h_ = 0.0;
  bool have_fsal_ = false;
  Eigen::VectorXcd k_[7];
  Eigen::VectorXcd ytmp_;
  Eigen::VectorXcd ynew_;
  Eigen::VectorXcd yerr_;
  Rk45Stats stats_;
};

// Integrates y from t0 to t1 in place.
Rk45Stats rk45_integrate(const DerivFn& f, double t0, double t1,
                         Eigen::VectorXcd& y, const Rk45Options& opt = {});

struct KrylovOptions {
  int m = 30;  // Arnoldi subspace dimension
  // Error budget per unit time, relative to the current vector norm.
  // krylov_expv spreads its tolerance over the horizon so the value it
  // receives bounds the accumulated relative error.
  double tol = 1e-8;
};

// Matrix action callback: y = A x, with y preallocated.
using ApplyFn =
    std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

// One Krylov time step w(s) = exp(s A) v built from a single Arnoldi
// factorization at v. After build() the propagated vector can be
// evaluated at any intermediate time 0 <= s <= accepted_tau() for the
// cost of a small dense exponential, which is how collapse times are
// located without rebuilding the subspace.
class KrylovStepper {
 public:
  KrylovStepper(ApplyFn apply, Eigen::Index dim, double anorm,
                KrylovOptions opt = {});

  // Runs Arnoldi from v and selects the largest accepted step <= tau_max.
  // Returns the accepted step.
  double build(const Eigen::VectorXcd& v, double tau_max);

  double accepted_tau() const { return tau_; }

  // Evaluates exp(s A) v for 0 <= s <= accepted_tau().
  Eigen::VectorXcd eval(double s) const;

  // Suggested size for the next step, from the local error model.
  double suggested_tau() const { return tau_next_; }

 private:
  ApplyFn apply_;
  Eigen::Index dim_;
  double anorm_;
  KrylovOptions opt_;

  Eigen::MatrixXcd basis_;     // dim x (mb+1) orthonormal columns
  Eigen::MatrixXcd hess_;      // (m+2) x (m+2), augmented Hessenberg
  double beta_ = 0.0;          // norm of the input vector
  double avnorm_ = 0.0;        // norm of A * (last basis vector)
  int mb_ = 0;                 // Krylov vectors actually built
  int k1_ = 2;                 // 0 after a happy breakdown
  double tau_ = 0.0;
  double tau_next_ = 0.0;
};

// Propagates w = exp(t A) v by repeated Krylov steps. anorm is an upper
// bound on a norm of A used only for step-size selection.
Eigen::VectorXcd krylov_expv(const ApplyFn& apply, double t,
                             const Eigen::VectorXcd& v, double anorm,
                             const KrylovOptions& opt = {});

}  // namespace kerrsim

#endif  // KERRSIM_INTEGRATORS_HPP
