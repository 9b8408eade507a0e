#include "emx/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace emx {

double lp_time_norm(const NormSeries& s, double p) {
  if (s.values.empty()) throw ConfigError("lp_time_norm: empty series");
  if (std::isinf(p)) return *std::max_element(s.values.begin(), s.values.end());
  if (p < 1.0) throw ConfigError("lp_time_norm: p must be >= 1 or inf");
  if (s.values.size() == 1) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < s.values.size(); ++i) {
    const double h = s.times[i + 1] - s.times[i];
    acc += 0.5 * h * (std::pow(s.values[i], p) + std::pow(s.values[i + 1], p));
  }
  return std::pow(acc, 1.0 / p);
}

double boundary_layer_norm(double c, double a, double p, double T) {
  if (a < 0.0) throw ConfigError("boundary_layer_norm: a must be >= 0");
  if (std::isinf(p)) return a;
  if (p < 1.0) throw ConfigError("boundary_layer_norm: p must be >= 1 or inf");
  const double pc2 = p * c * c;
  return a * std::pow(-std::expm1(-pc2 * T) / pc2, 1.0 / p);
}

double EnergyLedger::relative_residual(std::size_t i) const {
  const double total0 = kinetic.at(0) + electric.at(0) + magnetic.at(0);
  return std::abs(residual.at(i)) / std::max(total0, 1e-300);
}

namespace {

EnergyLedger audit_impl(const std::vector<double>& times,
                        const std::vector<double>& k2, const std::vector<double>& e2,
                        const std::vector<double>& b2,
                        const std::vector<double>& diss_rate) {
  const std::size_t n = times.size();
  if (n == 0 || k2.size() != n || b2.size() != n || diss_rate.size() != n ||
      (!e2.empty() && e2.size() != n))
    throw ConfigError("energy_audit: missing or mismatched samples");
  EnergyLedger led;
  led.times = times;
  led.kinetic.resize(n);
  led.electric.resize(n);
  led.magnetic.resize(n);
  led.dissipation.resize(n);
  led.residual.resize(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    led.kinetic[i] = 0.5 * k2[i] * k2[i];
    led.electric[i] = e2.empty() ? 0.0 : 0.5 * e2[i] * e2[i];
    led.magnetic[i] = 0.5 * b2[i] * b2[i];
    if (i > 0)
      acc += 0.5 * (times[i] - times[i - 1]) *
             (diss_rate[i - 1] * diss_rate[i - 1] + diss_rate[i] * diss_rate[i]);
    led.dissipation[i] = acc;
  }
  const double total0 = led.kinetic[0] + led.electric[0] + led.magnetic[0];
  for (std::size_t i = 0; i < n; ++i)
    led.residual[i] =
        led.kinetic[i] + led.electric[i] + led.magnetic[i] + led.dissipation[i] - total0;
  return led;
}

}  // namespace

EnergyLedger energy_audit(const EmRunRecord& run) {
  return audit_impl(run.times, run.u_l2, run.e_l2, run.b_l2, run.j_l2);
}

EnergyLedger energy_audit_mhd(const MhdRunRecord& run) {
  return audit_impl(run.times, run.u_l2, {}, run.b_l2, run.gradb_l2);
}

InitialGap epsilon0(const EMState& init_em, const MHDState& init_mhd, double c) {
  require_same_grid(init_em.u.grid, init_mhd.u_bar.grid, "epsilon0");
  InitialGap g;
  g.du0 = l2_norm(field_sub(init_em.u, init_mhd.u_bar));
  g.dB0 = l2_norm(field_sub(init_em.B, init_mhd.B_bar));
  SpectralField gap = field_scaled(init_em.E, c);
  field_axpy(gap, -1.0, compute_ebar(init_mhd));
  g.dE0_H1 = sobolev_norm(gap, 1.0);
  g.epsilon0 = g.du0 + g.dB0 + (g.dE0_H1 + 1.0) / (c * c);
  return g;
}

ErrorParts error_decompose(const EMState& em, const MHDState& mhd, const LinState& lin,
                           double dt) {
  require_same_grid(em.u.grid, mhd.u_bar.grid, "error_decompose");
  require_same_grid(em.u.grid, lin.E_L.grid, "error_decompose");
  if (std::abs(em.t - mhd.t) > 0.5 * dt || std::abs(em.t - lin.t) > 0.5 * dt)
    throw ConfigError("error_decompose: states are not at matching times");
  ErrorParts p;
  p.u_tilde = field_sub(em.u, mhd.u_bar);
  p.E_tilde = field_sub(em.E, lin.E_L);
  p.B_tilde = field_sub(em.B, mhd.B_bar);
  field_axpy(p.B_tilde, -1.0, lin.B_L);
  return p;
}

std::pair<double, double> dt_ebar_norms(const std::vector<SpectralField>& ebar,
                                        double dt) {
  DtEbarAccumulator acc(dt);
  for (const auto& f : ebar) acc.push(f);
  acc.finish();
  return {acc.linf_l2(), acc.l2_h1()};
}

void DtEbarAccumulator::emit(const SpectralField& d, double t) {
  linf_l2_ = std::max(linf_l2_, l2_norm(d));
  l2_series_.push(t, l2_norm(d));
  h1_series_.push(t, sobolev_norm(d, 1.0));
}

void DtEbarAccumulator::push(const SpectralField& ebar) {
  window_.push_back(ebar);
  ++count_;
  if (window_.size() > 3) window_.erase(window_.begin());
  if (window_.size() == 3) {
    if (count_ == 3) {
      // one-sided second order at the left endpoint: (-3f0 + 4f1 - f2)/(2dt)
      SpectralField d = field_scaled(window_[0], -3.0);
      field_axpy(d, 4.0, window_[1]);
      field_axpy(d, -1.0, window_[2]);
      field_scale(d, 1.0 / (2.0 * dt_));
      emit(d, 0.0);
    }
    SpectralField d = field_sub(window_[2], window_[0]);
    field_scale(d, 1.0 / (2.0 * dt_));
    emit(d, double(count_ - 2) * dt_);
  }
}

void DtEbarAccumulator::finish() {
  if (finished_) return;
  finished_ = true;
  if (count_ < 3) throw ConfigError("dt_ebar: need at least 3 samples");
  // right endpoint: (3f2 - 4f1 + f0)/(2dt)
  SpectralField d = field_scaled(window_[2], 3.0);
  field_axpy(d, -4.0, window_[1]);
  field_axpy(d, 1.0, window_[0]);
  field_scale(d, 1.0 / (2.0 * dt_));
  emit(d, double(count_ - 1) * dt_);
}

double DtEbarAccumulator::l2_h1() const {
  if (!finished_) throw ConfigError("dt_ebar: finish() before reading norms");
  return lp_time_norm(h1_series_, 2.0);
}

std::pair<double, double> diagnostic_XA(const EMState& s, int m_index) {
  if (m_index < 3) throw ConfigError("diagnostic_XA: m must be >= 3");
  const double m = double(m_index);
  const double xu = sobolev_norm(s.u, m), xe = sobolev_norm(s.E, m),
               xb = sobolev_norm(s.B, m);
  const double X = xu * xu + xe * xe + xb * xb;
  const double lu = linf_norm(s.u), lb = linf_norm(s.B);
  const double lj = linf_norm(ohm_current(s));
  const double A = grad_linf_norm(s.u) + lu * lu + lb * lb + lj;
  return {X, A};
}

}  // namespace emx
