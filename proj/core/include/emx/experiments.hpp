#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "emx/diagnostics.hpp"
#include "emx/stepping.hpp"

namespace emx {

enum class FamilyKind { F1FixedE, F2DecayingE, F3WellPrepared, F4PerturbedFluid };

std::string family_name(FamilyKind k);
FamilyKind family_from_name(const std::string& s);

/// Initial-data family for the c-sweeps. The fluid pair (u0, B0) is shared
/// with the limit system; the families differ in how E0^c (and for F4, u0^c)
/// depends on c:
///   F1: E0^c = e0 fixed                  (gap ~ c, eps0 ~ 1/c)
///   F2: E0^c = c^{beta-1} e0             (gap ~ c^beta)
///   F3: E0^c = Ebar(0)/c                 (gap = 0, eps0 = 1/c^2)
///   F4: E0^c = Ebar(0)/c, u0^c = u0 + c^{-alpha} du
struct Family {
  FamilyKind kind = FamilyKind::F1FixedE;
  double beta = 0.5;   // F2 only, in [0,1)
  double alpha = 1.0;  // F4 only, > 0
  std::uint64_t seed = 1;
  double amplitude = 0.22;
  double e_amplitude = 0.4;
  double decay = 6.0;

  void validate() const;
  std::string label() const;  // "F1", "F2(beta=0.5)", ...
  /// Predicted exponent g of the layer amplitude ||cE0^c - Ebar(0)|| ~ c^g;
  /// returns false when the layer vanishes identically (F3/F4).
  bool layer_exponent(double& g) const;
  /// Predicted exponent of eps0.
  double eps0_exponent() const;
};

struct FamilyData {
  SpectralField u0, B0;  // limit data
  SpectralField e0;      // electric profile (F1/F2)
  SpectralField du;      // velocity perturbation (F4)
};

FamilyData build_family_data(const Family& fam, GridSpec grid);
MHDState mhd_initial(const FamilyData& d);
EMState em_initial(const Family& fam, const FamilyData& d, double c);
LinState lin_initial(const Family& fam, const FamilyData& d, double c);

struct SweepPlan {
  Family family;
  std::vector<double> c_values = {4, 8, 16, 32};
  std::vector<double> p_values = {1, 2, 4, std::numeric_limits<double>::infinity()};
  int n = 32;
  double T = 0.5;
  std::vector<double> s_values = {0, 1};
  StepperConfig stepper;
  double t_star = 0.25;
  double c0 = 1.0;

  void validate() const;
};

/// One (family, c) triplet run: MHD, the auxiliary linear system at c, and
/// Euler-Maxwell at c advanced in lockstep on one shared uniform time grid.
/// The MHD trajectory depends on neither c nor the family's E data, so
/// re-running it per c reproduces bit-identical series.
struct RunResult {
  double c = 0;
  double dt = 0;
  std::map<std::string, NormSeries> series;

  double a_layer = 0;     // ||c E0^c - Ebar(0)||_L2
  double e0_l2 = 0;       // ||E0^c||_L2
  InitialGap gap;
  std::pair<double, double> dt_ebar{0, 0};  // (Linf L2, L2 H1)
  double em_seconds_per_step = 0;

  EmRunRecord em_record;
  MhdRunRecord mhd_record;

  /// Layer-aware cumulative dissipation int_0^{t_i} ||j^c||^2 and the MHD
  /// counterpart int ||jbar||^2 (trapezoid; smooth integrand).
  std::vector<double> jc_int, jbar_int;

  double value_at(const std::string& label, double t) const;
  double integral_at(const std::vector<double>& cumulative, double t) const;
};

RunResult run_triplet(const SweepPlan& plan, double c);

/// All runs of a plan, ascending in c. jobs > 1 executes runs concurrently;
/// the result order is deterministic either way.
struct SweepResult {
  SweepPlan plan;
  std::vector<RunResult> runs;
};

SweepResult run_sweep(const SweepPlan& plan, int jobs = 1);

/// Log-log least squares over (c, value) pairs.
struct RateFit {
  std::string quantity;
  double p = 0;  // NaN when the quantity has no p parameter
  std::vector<std::pair<double, double>> points;
  double slope = 0, intercept = 0, stderr_slope = 0, r2 = 0;
  std::vector<std::string> warnings;
};

RateFit fit_rate(std::vector<std::pair<double, double>> points);

/// Aggregated scalar per (quantity, p, c), the rows of sweep.csv.
struct AggregateRow {
  std::string family;
  double c = 0;
  double p = 0;  // NaN for p-less quantities
  std::string quantity;
  double value = 0;
};

std::vector<AggregateRow> aggregate_sweep(const SweepResult& sweep);

enum class Verdict { Converge, Plateau, Diverge };
std::string verdict_name(Verdict v);
Verdict verdict_of_slope(double slope, double threshold = 0.15);

struct ThresholdRow {
  std::string family;
  std::string quantity;  // "cE" or "j"
  double p = 0;
  double predicted_slope = 0;
  Verdict predicted = Verdict::Plateau;
  double measured_slope = 0;
  Verdict measured = Verdict::Plateau;
  bool match = false;
};

/// Measured-vs-predicted convergence table for cE^c and j^c over the plan's
/// p values (threshold 0.15 on log-log slopes).
std::vector<ThresholdRow> classify_thresholds(const SweepResult& sweep);

/// Predicted slope of the cE/j threshold quantity for a family at given p.
double predicted_threshold_slope(const Family& fam, double p);

struct EnergyFlowRow {
  double c = 0;
  double e2_tstar = 0;    // ||E^c(t*)||^2
  double jump_err = 0;    // |int_0^{t*}||j^c||^2 - 1/2||E0^c||^2 - int||jbar||^2|
};

struct EnergyFlowReport {
  double t_star = 0;
  std::vector<EnergyFlowRow> rows;
  bool e2_decreasing = false;
  bool jump_decreasing = false;
};

EnergyFlowReport energy_flow_check(const SweepResult& sweep, double t_star);

struct SharpnessRow {
  std::string quantity;
  double p = 0;
  double measured_slope = 0;
  double predicted_slope = 0;  // 1 - 2/p for cE_L; NaN for the B_L bracket
};

/// Slopes of the linear system alone: ||cE_L - Ebar||_{L^p L^2} for the
/// plan's p values plus the combined sup||B_L|| + ||grad B_L||_{L^2 L^2}.
std::vector<SharpnessRow> linear_sharpness(const SweepResult& sweep);

/// Fits for every aggregated quantity, keyed "quantity|p".
std::map<std::string, RateFit> fit_all(const std::vector<AggregateRow>& rows);

}  // namespace emx
