#pragma once

#include <deque>
#include <functional>
#include <optional>

#include "emx/dynamics.hpp"
#include "emx/propagator.hpp"

namespace emx {

enum class Scheme { Etd2, LawsonRk4 };

struct StepperConfig {
  Scheme scheme = Scheme::Etd2;
  double cfl = 0.5;
  double dt_max = 0.0025;
  double t_end = 0.5;

  void validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("StepperConfig: cfl must be in (0,1]");
    if (!(dt_max > 0.0)) throw ConfigError("StepperConfig: dt_max must be positive");
    if (!(t_end > 0.0)) throw ConfigError("StepperConfig: t_end must be positive");
  }
};

/// dt = min(dt_max, cfl*dx / max(|u|_inf, |B|_inf, 1e-8)); never depends on c.
double choose_dt(const SpectralField& u, const SpectralField& B,
                 const StepperConfig& cfg);
double choose_dt(const EMState& s, const StepperConfig& cfg);
double choose_dt(const MHDState& s, const StepperConfig& cfg);

/// Time-dependent Ebar source for the auxiliary linear system, interpolated
/// from the MHD run's dense output (cubic where four samples are available).
class EbarProvider {
 public:
  virtual ~EbarProvider() = default;
  virtual SpectralField ebar_at(double t) = 0;
};

/// Ring of recent (t, Ebar) samples on a uniform grid; exact at sample times,
/// Lagrange interpolation (up to cubic) in between.
class EbarSeriesProvider final : public EbarProvider {
 public:
  void push(double t, SpectralField ebar);
  SpectralField ebar_at(double t) override;

 private:
  std::deque<std::pair<double, SpectralField>> samples_;
};

class FunctionEbarProvider final : public EbarProvider {
 public:
  explicit FunctionEbarProvider(std::function<SpectralField(double)> f)
      : f_(std::move(f)) {}
  SpectralField ebar_at(double t) override { return f_(t); }

 private:
  std::function<SpectralField(double)> f_;
};

struct EmOptions {
  bool include_nonlinear = true;  // test hook: pure damped-Maxwell evolution
  bool layer_aware = true;        // analytic treatment of the initial E layer
};

/// Euler-Maxwell stepper. The damped-Maxwell block is propagated exactly per
/// mode; only the quadratic terms are integrated by the scheme, so the step
/// size is limited by the nonlinear CFL alone, uniformly in c.
///
/// The initial electric layer ell(t) = e^{-c^2 t}(cE_0 - curlB_0 + P(u_0 x B_0))
/// is an O(c)-amplitude transient of width c^{-2}: sampling it inside the
/// Lorentz force would inject O(c dt) spurious momentum. The stepper instead
/// subtracts ell from j inside j x B and integrates the known-exponential
/// layer force with exponentially weighted quadrature (exact in the
/// exponential factor, trapezoidal in B).
class EmStepper {
 public:
  EmStepper(const EMState& init, double dt, const StepperConfig& cfg,
            EmOptions opt = {});

  EMState step(const EMState& s);
  double dt() const { return dt_; }
  const SpectralField& layer_field() const { return g0_; }
  bool layer_active() const { return layer_active_; }

 private:
  struct Forcings {
    SpectralField du, dE, layer_force;
  };
  Forcings forcings(const EMState& s) const;
  void check_state(const EMState& s);
  EMState step_etd2(const EMState& s);
  EMState step_lawson(const EMState& s);

  double dt_;
  double c_;
  double t0_;
  StepperConfig cfg_;
  EmOptions opt_;
  PropagatorTable table_, table_half_;
  SpectralField g0_;       // cE0 - Ebar-equilibrium of the initial data
  bool layer_active_ = false;
  double wq_start_ = 0, wq_end_ = 0;  // layer-impulse trapezoid weights
  SpectralField zero_;
  std::deque<std::pair<double, double>> trace_;
};

class MhdStepper {
 public:
  MhdStepper(GridSpec grid, double dt, const StepperConfig& cfg);

  MHDState step(const MHDState& s);
  double dt() const { return dt_; }

 private:
  void check_state(const MHDState& s);
  MHDState step_etd2(const MHDState& s);
  MHDState step_lawson(const MHDState& s);

  double dt_;
  StepperConfig cfg_;
  HeatTable heat_, heat_half_;
  std::deque<std::pair<double, double>> trace_;
};

class LinStepper {
 public:
  LinStepper(GridSpec grid, double c, double dt, const StepperConfig& cfg,
             EbarProvider& ebar);

  LinState step(const LinState& s);
  double dt() const { return dt_; }

 private:
  LinState step_etd2(const LinState& s);
  LinState step_lawson(const LinState& s);

  double dt_;
  double c_;
  StepperConfig cfg_;
  PropagatorTable table_, table_half_;
  EbarProvider& ebar_;
};

}  // namespace emx
