#include "emx/stepping.hpp"

#include <algorithm>
#include <cmath>

namespace emx {

namespace {

constexpr double kVelocityFloor = 1e-8;

void require_finite(const SpectralField& f, double t,
                    const std::deque<std::pair<double, double>>& trace,
                    const char* what) {
  if (!all_finite(f))
    throw BlowupError(std::string("non-finite coefficients in ") + what + " at t=" +
                          std::to_string(t),
                      t, {trace.begin(), trace.end()});
}

}  // namespace

double choose_dt(const SpectralField& u, const SpectralField& B,
                 const StepperConfig& cfg) {
  cfg.validate();
  const double speed = std::max({linf_norm(u), linf_norm(B), kVelocityFloor});
  return std::min(cfg.dt_max, cfg.cfl * u.grid.dx() / speed);
}

double choose_dt(const EMState& s, const StepperConfig& cfg) {
  return choose_dt(s.u, s.B, cfg);
}

double choose_dt(const MHDState& s, const StepperConfig& cfg) {
  return choose_dt(s.u_bar, s.B_bar, cfg);
}

void EbarSeriesProvider::push(double t, SpectralField ebar) {
  samples_.emplace_back(t, std::move(ebar));
  while (samples_.size() > 4) samples_.pop_front();
}

SpectralField EbarSeriesProvider::ebar_at(double t) {
  if (samples_.empty()) throw ConfigError("EbarSeriesProvider: no samples pushed");
  for (const auto& [ts, f] : samples_)
    if (std::abs(ts - t) < 1e-12 * std::max(1.0, std::abs(t))) return f;
  // Lagrange interpolation over whatever stencil is available (<= 4 points).
  SpectralField out(samples_.front().second.grid);
  for (std::size_t j = 0; j < samples_.size(); ++j) {
    double w = 1.0;
    for (std::size_t m = 0; m < samples_.size(); ++m) {
      if (m == j) continue;
      w *= (t - samples_[m].first) / (samples_[j].first - samples_[m].first);
    }
    field_axpy(out, w, samples_[j].second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Euler-Maxwell

EmStepper::EmStepper(const EMState& init, double dt, const StepperConfig& cfg,
                     EmOptions opt)
    : dt_(dt),
      c_(init.c),
      t0_(init.t),
      cfg_(cfg),
      opt_(opt),
      table_(PropagatorTable::build(init.u.grid, init.c, dt)),
      table_half_(PropagatorTable::build(init.u.grid, init.c, 0.5 * dt)),
      g0_(init.u.grid),
      zero_(init.u.grid) {
  if (dt <= 0.0) throw ConfigError("EmStepper: dt must be positive");
  if (opt_.layer_aware && opt_.include_nonlinear) {
    // G0 = cE_0 - (curl B_0 - P(u_0 x B_0)): the amplitude of the fast
    // component that e^{-c^2 t} relaxes away.
    g0_ = field_scaled(init.E, c_);
    field_axpy(g0_, -1.0, curl(init.B));
    field_axpy(g0_, 1.0,
               leray_project(product_fields(init.u, init.B, ProductKind::Cross)));
    layer_active_ = l2_norm(g0_) > 1e-13 * std::max(1.0, c_ * l2_norm(init.E));
  }
  // exponentially weighted trapezoid for int_0^dt e^{-c^2 s} F(s) ds with
  // F linear in s: start weight dt*phi2(-z), end weight dt*(phi1-phi2)(-z)
  const double z = -c_ * c_ * dt_;
  const PhiTriple p = phi_functions(cplx(z, 0.0));
  wq_start_ = dt_ * p.phi2.real();
  wq_end_ = dt_ * (p.phi1.real() - p.phi2.real());
}

EmStepper::Forcings EmStepper::forcings(const EMState& s) const {
  Forcings f;
  SpectralField uxB = leray_project(product_fields(s.u, s.B, ProductKind::Cross));
  SpectralField j = field_scaled(s.E, c_);
  field_axpy(j, 1.0, uxB);
  if (layer_active_) {
    const double decay = std::exp(-c_ * c_ * (s.t - t0_));
    if (decay > 0.0) field_axpy(j, -decay, g0_);
    f.layer_force = leray_project(product_fields(g0_, s.B, ProductKind::Cross));
  }
  SpectralField force = product_fields(j, s.B, ProductKind::Cross);
  field_axpy(force, -1.0, product_fields(s.u, s.u, ProductKind::Advection));
  f.du = leray_project(force);
  f.dE = field_scaled(uxB, -c_);
  return f;
}

void EmStepper::check_state(const EMState& s) {
  const double speed = std::max({linf_norm(s.u), linf_norm(s.B), kVelocityFloor});
  trace_.emplace_back(s.t, speed);
  while (trace_.size() > 8) trace_.pop_front();
  require_finite(s.u, s.t, trace_, "u");
  require_finite(s.E, s.t, trace_, "E");
  require_finite(s.B, s.t, trace_, "B");
  const double cfl_dt = cfg_.cfl * s.u.grid.dx() / speed;
  if (dt_ > 2.0 * cfl_dt)
    throw BlowupError("CFL violated by 2x at t=" + std::to_string(s.t) +
                          " (dt=" + std::to_string(dt_) + ", cfl dt=" +
                          std::to_string(cfl_dt) + ")",
                      s.t, {trace_.begin(), trace_.end()});
}

EMState EmStepper::step(const EMState& s) {
  check_state(s);
  return cfg_.scheme == Scheme::Etd2 ? step_etd2(s) : step_lawson(s);
}

EMState EmStepper::step_etd2(const EMState& s) {
  EMState out;
  out.t = s.t + dt_;
  out.c = s.c;

  if (!opt_.include_nonlinear) {
    out.u = s.u;
    out.E = s.E;
    out.B = s.B;
    table_.homogeneous(out.E, out.B);
    return out;
  }

  const Forcings f0 = forcings(s);
  const double decay0 = layer_active_ ? std::exp(-c_ * c_ * (s.t - t0_)) : 0.0;

  // predictor
  EMState mid;
  mid.t = out.t;
  mid.c = s.c;
  mid.u = s.u;
  field_axpy(mid.u, dt_, f0.du);
  if (layer_active_) field_axpy(mid.u, decay0 * (wq_start_ + wq_end_), f0.layer_force);
  mid.E = s.E;
  mid.B = s.B;
  table_.homogeneous(mid.E, mid.B);
  table_.add_phi_forcing(1, f0.dE, zero_, mid.E, mid.B, 1.0);

  // corrector
  const Forcings f1 = forcings(mid);
  out.u = mid.u;
  field_axpy(out.u, 0.5 * dt_, f1.du);
  field_axpy(out.u, -0.5 * dt_, f0.du);
  if (layer_active_) {
    // replace the frozen-B layer impulse with the exponentially weighted
    // trapezoid  wq_start*F(B_n) + wq_end*F(B_pred)
    field_axpy(out.u, -decay0 * wq_end_, f0.layer_force);
    field_axpy(out.u, decay0 * wq_end_, f1.layer_force);
  }
  out.E = mid.E;
  out.B = mid.B;
  SpectralField dE_diff = field_sub(f1.dE, f0.dE);
  table_.add_phi_forcing(2, dE_diff, zero_, out.E, out.B, 1.0);
  return out;
}

EMState EmStepper::step_lawson(const EMState& s) {
  EMState out;
  out.t = s.t + dt_;
  out.c = s.c;
  if (!opt_.include_nonlinear) {
    out.u = s.u;
    out.E = s.E;
    out.B = s.B;
    table_.homogeneous(out.E, out.B);
    return out;
  }

  auto stage = [&](const SpectralField& u, const SpectralField& E,
                   const SpectralField& B, double t) {
    EMState st;
    st.t = t;
    st.c = s.c;
    st.u = u;
    st.E = E;
    st.B = B;
    return forcings(st);
  };

  const double th = s.t + 0.5 * dt_;
  const Forcings k1 = stage(s.u, s.E, s.B, s.t);

  // y2 = E_half y + dt/2 E_half k1
  EMState y2;
  y2.u = s.u;
  field_axpy(y2.u, 0.5 * dt_, k1.du);
  y2.E = s.E;
  y2.B = s.B;
  table_half_.homogeneous(y2.E, y2.B);
  {
    SpectralField fe = k1.dE, fb = zero_;
    table_half_.homogeneous(fe, fb);
    field_axpy(y2.E, 0.5 * dt_, fe);
    field_axpy(y2.B, 0.5 * dt_, fb);
  }
  const Forcings k2 = stage(y2.u, y2.E, y2.B, th);

  // y3 = E_half y + dt/2 k2
  EMState y3;
  y3.u = s.u;
  field_axpy(y3.u, 0.5 * dt_, k2.du);
  y3.E = s.E;
  y3.B = s.B;
  table_half_.homogeneous(y3.E, y3.B);
  field_axpy(y3.E, 0.5 * dt_, k2.dE);
  const Forcings k3 = stage(y3.u, y3.E, y3.B, th);

  // y4 = E_full y + dt E_half k3
  EMState y4;
  y4.u = s.u;
  field_axpy(y4.u, dt_, k3.du);
  y4.E = s.E;
  y4.B = s.B;
  table_.homogeneous(y4.E, y4.B);
  {
    SpectralField fe = k3.dE, fb = zero_;
    table_half_.homogeneous(fe, fb);
    field_axpy(y4.E, dt_, fe);
    field_axpy(y4.B, dt_, fb);
  }
  const Forcings k4 = stage(y4.u, y4.E, y4.B, out.t);

  out.u = s.u;
  field_axpy(out.u, dt_ / 6.0, k1.du);
  field_axpy(out.u, dt_ / 3.0, k2.du);
  field_axpy(out.u, dt_ / 3.0, k3.du);
  field_axpy(out.u, dt_ / 6.0, k4.du);

  out.E = s.E;
  out.B = s.B;
  table_.homogeneous(out.E, out.B);
  {
    SpectralField fe = k1.dE, fb = zero_;
    table_.homogeneous(fe, fb);
    field_axpy(out.E, dt_ / 6.0, fe);
    field_axpy(out.B, dt_ / 6.0, fb);
  }
  {
    SpectralField fe = field_add(k2.dE, k3.dE), fb = zero_;
    table_half_.homogeneous(fe, fb);
    field_axpy(out.E, dt_ / 3.0, fe);
    field_axpy(out.B, dt_ / 3.0, fb);
  }
  field_axpy(out.E, dt_ / 6.0, k4.dE);

  if (layer_active_) {
    // the layer force was excluded from the stages (j is layer-subtracted);
    // append its exponentially weighted impulse, trapezoidal in B
    const double decay0 = std::exp(-c_ * c_ * (s.t - t0_));
    field_axpy(out.u, decay0 * wq_start_, k1.layer_force);
    field_axpy(out.u, decay0 * wq_end_, k4.layer_force);
  }
  return out;
}

// ---------------------------------------------------------------------------
// MHD

MhdStepper::MhdStepper(GridSpec grid, double dt, const StepperConfig& cfg)
    : dt_(dt),
      cfg_(cfg),
      heat_(HeatTable::build(grid, dt)),
      heat_half_(HeatTable::build(grid, 0.5 * dt)) {
  if (dt <= 0.0) throw ConfigError("MhdStepper: dt must be positive");
}

void MhdStepper::check_state(const MHDState& s) {
  const double speed =
      std::max({linf_norm(s.u_bar), linf_norm(s.B_bar), kVelocityFloor});
  trace_.emplace_back(s.t, speed);
  while (trace_.size() > 8) trace_.pop_front();
  require_finite(s.u_bar, s.t, trace_, "u_bar");
  require_finite(s.B_bar, s.t, trace_, "B_bar");
  const double cfl_dt = cfg_.cfl * s.u_bar.grid.dx() / speed;
  if (dt_ > 2.0 * cfl_dt)
    throw BlowupError("CFL violated by 2x at t=" + std::to_string(s.t), s.t,
                      {trace_.begin(), trace_.end()});
}

MHDState MhdStepper::step(const MHDState& s) {
  check_state(s);
  return cfg_.scheme == Scheme::Etd2 ? step_etd2(s) : step_lawson(s);
}

MHDState MhdStepper::step_etd2(const MHDState& s) {
  const MHDTendency f0 = mhd_rhs(s);

  MHDState mid;
  mid.t = s.t + dt_;
  mid.u_bar = s.u_bar;
  field_axpy(mid.u_bar, dt_, f0.du_bar);
  mid.B_bar = s.B_bar;
  heat_.homogeneous(mid.B_bar);
  heat_.add_phi_forcing(1, f0.dB_bar_forcing, mid.B_bar, 1.0);

  const MHDTendency f1 = mhd_rhs(mid);
  MHDState out;
  out.t = mid.t;
  out.u_bar = mid.u_bar;
  field_axpy(out.u_bar, 0.5 * dt_, f1.du_bar);
  field_axpy(out.u_bar, -0.5 * dt_, f0.du_bar);
  out.B_bar = mid.B_bar;
  SpectralField diff = field_sub(f1.dB_bar_forcing, f0.dB_bar_forcing);
  heat_.add_phi_forcing(2, diff, out.B_bar, 1.0);
  return out;
}

MHDState MhdStepper::step_lawson(const MHDState& s) {
  auto rhs_at = [&](const SpectralField& u, const SpectralField& B) {
    MHDState st;
    st.u_bar = u;
    st.B_bar = B;
    return mhd_rhs(st);
  };

  const MHDTendency k1 = rhs_at(s.u_bar, s.B_bar);

  SpectralField u2 = s.u_bar;
  field_axpy(u2, 0.5 * dt_, k1.du_bar);
  SpectralField B2 = s.B_bar;
  heat_half_.homogeneous(B2);
  {
    SpectralField f = k1.dB_bar_forcing;
    heat_half_.homogeneous(f);
    field_axpy(B2, 0.5 * dt_, f);
  }
  const MHDTendency k2 = rhs_at(u2, B2);

  SpectralField u3 = s.u_bar;
  field_axpy(u3, 0.5 * dt_, k2.du_bar);
  SpectralField B3 = s.B_bar;
  heat_half_.homogeneous(B3);
  field_axpy(B3, 0.5 * dt_, k2.dB_bar_forcing);
  const MHDTendency k3 = rhs_at(u3, B3);

  SpectralField u4 = s.u_bar;
  field_axpy(u4, dt_, k3.du_bar);
  SpectralField B4 = s.B_bar;
  heat_.homogeneous(B4);
  {
    SpectralField f = k3.dB_bar_forcing;
    heat_half_.homogeneous(f);
    field_axpy(B4, dt_, f);
  }
  const MHDTendency k4 = rhs_at(u4, B4);

  MHDState out;
  out.t = s.t + dt_;
  out.u_bar = s.u_bar;
  field_axpy(out.u_bar, dt_ / 6.0, k1.du_bar);
  field_axpy(out.u_bar, dt_ / 3.0, k2.du_bar);
  field_axpy(out.u_bar, dt_ / 3.0, k3.du_bar);
  field_axpy(out.u_bar, dt_ / 6.0, k4.du_bar);

  out.B_bar = s.B_bar;
  heat_.homogeneous(out.B_bar);
  {
    SpectralField f = k1.dB_bar_forcing;
    heat_.homogeneous(f);
    field_axpy(out.B_bar, dt_ / 6.0, f);
  }
  {
    SpectralField f = field_add(k2.dB_bar_forcing, k3.dB_bar_forcing);
    heat_half_.homogeneous(f);
    field_axpy(out.B_bar, dt_ / 3.0, f);
  }
  field_axpy(out.B_bar, dt_ / 6.0, k4.dB_bar_forcing);
  return out;
}

// ---------------------------------------------------------------------------
// Auxiliary linear system

LinStepper::LinStepper(GridSpec grid, double c, double dt, const StepperConfig& cfg,
                       EbarProvider& ebar)
    : dt_(dt),
      c_(c),
      cfg_(cfg),
      table_(PropagatorTable::build(grid, c, dt)),
      table_half_(PropagatorTable::build(grid, c, 0.5 * dt)),
      ebar_(ebar) {
  if (dt <= 0.0) throw ConfigError("LinStepper: dt must be positive");
}

LinState LinStepper::step(const LinState& s) {
  if (!all_finite(s.E_L) || !all_finite(s.B_L))
    throw BlowupError("non-finite coefficients in linear system at t=" +
                          std::to_string(s.t),
                      s.t, {});
  return cfg_.scheme == Scheme::Etd2 ? step_etd2(s) : step_lawson(s);
}

LinState LinStepper::step_etd2(const LinState& s) {
  const LinTendency f0 = lin_rhs(s, ebar_.ebar_at(s.t));

  LinState out;
  out.t = s.t + dt_;
  out.c = s.c;
  out.E_L = s.E_L;
  out.B_L = s.B_L;
  table_.homogeneous(out.E_L, out.B_L);
  table_.add_phi_forcing(1, f0.dE_forcing, f0.dB_forcing, out.E_L, out.B_L, 1.0);

  LinState probe = out;
  const LinTendency f1 = lin_rhs(probe, ebar_.ebar_at(out.t));
  SpectralField de = field_sub(f1.dE_forcing, f0.dE_forcing);
  SpectralField db = field_sub(f1.dB_forcing, f0.dB_forcing);
  table_.add_phi_forcing(2, de, db, out.E_L, out.B_L, 1.0);
  return out;
}

LinState LinStepper::step_lawson(const LinState& s) {
  const double th = s.t + 0.5 * dt_;
  LinState dummy;
  dummy.c = s.c;
  auto forcing_at = [&](double t) { return lin_rhs(dummy, ebar_.ebar_at(t)); };

  const LinTendency k1 = forcing_at(s.t);
  const LinTendency k23 = forcing_at(th);
  const LinTendency k4 = forcing_at(s.t + dt_);

  LinState out;
  out.t = s.t + dt_;
  out.c = s.c;
  out.E_L = s.E_L;
  out.B_L = s.B_L;
  table_.homogeneous(out.E_L, out.B_L);
  {
    SpectralField fe = k1.dE_forcing, fb = k1.dB_forcing;
    table_.homogeneous(fe, fb);
    field_axpy(out.E_L, dt_ / 6.0, fe);
    field_axpy(out.B_L, dt_ / 6.0, fb);
  }
  {
    SpectralField fe = k23.dE_forcing, fb = k23.dB_forcing;
    table_half_.homogeneous(fe, fb);
    field_axpy(out.E_L, 2.0 * dt_ / 3.0, fe);
    field_axpy(out.B_L, 2.0 * dt_ / 3.0, fb);
  }
  field_axpy(out.E_L, dt_ / 6.0, k4.dE_forcing);
  field_axpy(out.B_L, dt_ / 6.0, k4.dB_forcing);
  return out;
}

}  // namespace emx
