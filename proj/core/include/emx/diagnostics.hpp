#pragma once

#include <string>
#include <vector>

#include "emx/dynamics.hpp"

namespace emx {

/// Uniformly sampled scalar norm values ||f(t_i)||, trapezoid-quadrature
/// ready. times start at the run origin and share one fixed dt.
struct NormSeries {
  std::string label;
  std::vector<double> times;
  std::vector<double> values;

  void push(double t, double v) {
    times.push_back(t);
    values.push_back(v);
  }
  std::size_t size() const { return times.size(); }
};

/// ||s||_{L^p(0,T)} of a sampled series: composite trapezoid of values^p then
/// the 1/p root; p = inf (pass infinity()) returns the max.
double lp_time_norm(const NormSeries& s, double p);

/// Exact || a e^{-c^2 t} ||_{L^p(0,T)} = a ((1 - e^{-p c^2 T})/(p c^2))^{1/p};
/// the boundary-layer comparison terms are always evaluated through this
/// closed form, never by sampling e^{-c^2 t} (the layer width c^-2 drops
/// below dt for large c).
double boundary_layer_norm(double c, double a, double p, double T);

/// Per-time energy bookkeeping for the Euler-Maxwell energy identity.
struct EnergyLedger {
  std::vector<double> times;
  std::vector<double> kinetic, electric, magnetic;  // 1/2 ||.||^2
  std::vector<double> dissipation;                  // int_0^t ||j||^2 (trapezoid)
  std::vector<double> residual;  // total(t) + dissipation(t) - total(0)

  double relative_residual(std::size_t i) const;
  double final_relative_residual() const { return relative_residual(times.size() - 1); }
};

/// Raw per-step samples an EM run records for the audit.
struct EmRunRecord {
  std::vector<double> times;
  std::vector<double> u_l2, e_l2, b_l2, j_l2;
};

EnergyLedger energy_audit(const EmRunRecord& run);

/// MHD analogue: 1/2 d/dt(||u||^2 + ||B||^2) + ||grad B||^2 = 0.
struct MhdRunRecord {
  std::vector<double> times;
  std::vector<double> u_l2, b_l2, gradb_l2;
};

EnergyLedger energy_audit_mhd(const MhdRunRecord& run);

/// The initial-gap functional controlling every difference estimate:
/// eps0 = ||u0c - u0|| + ||B0c - B0|| + (||c E0c - Ebar(0)||_H1 + 1)/c^2.
struct InitialGap {
  double du0 = 0;
  double dB0 = 0;
  double dE0_H1 = 0;
  double epsilon0 = 0;
};

InitialGap epsilon0(const EMState& init_em, const MHDState& init_mhd, double c);

/// Error part u~ = uc - ubar, E~ = Ec - E_L, B~ = Bc - Bbar - B_L.
struct ErrorParts {
  SpectralField u_tilde, E_tilde, B_tilde;
};

ErrorParts error_decompose(const EMState& em, const MHDState& mhd, const LinState& lin,
                           double dt);

/// Finite-difference d/dt of a densely sampled Ebar series; returns
/// (||dt Ebar||_{Linf(0,T;L2)}, ||dt Ebar||_{L2(0,T;H1)}). Centered interior
/// differences, one-sided second order at the endpoints.
std::pair<double, double> dt_ebar_norms(const std::vector<SpectralField>& ebar,
                                        double dt);

/// Streaming version for long runs: feed Ebar(t_i) in order, read the two
/// norms at the end. Keeps only a three-sample window.
class DtEbarAccumulator {
 public:
  explicit DtEbarAccumulator(double dt) : dt_(dt) {}
  void push(const SpectralField& ebar);
  void finish();
  double linf_l2() const { return linf_l2_; }
  double l2_h1() const;
  NormSeries l2_series() const { return l2_series_; }
  NormSeries h1_series() const { return h1_series_; }

 private:
  void emit(const SpectralField& d, double t);
  double dt_;
  std::vector<SpectralField> window_;
  std::size_t count_ = 0;
  bool finished_ = false;
  double linf_l2_ = 0.0;
  NormSeries l2_series_{"dt_ebar_L2", {}, {}};
  NormSeries h1_series_{"dt_ebar_H1", {}, {}};
};

/// Lemma-2.2-style monitors: X = ||u||_Hm^2 + ||E||_Hm^2 + ||B||_Hm^2 and
/// A = ||grad u||_Linf + ||u||_Linf^2 + ||B||_Linf^2 + ||j||_Linf.
std::pair<double, double> diagnostic_XA(const EMState& s, int m_index);

}  // namespace emx
