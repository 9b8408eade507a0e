#pragma once

#include <cstdint>

#include "emx/dft.hpp"
#include "emx/field.hpp"

namespace emx {

enum class ProductKind { Cross, Advection };

/// (curl f)^(k) = i k x fhat(k). Result is divergence-free to round-off.
SpectralField curl(const SpectralField& f);

/// (div f)^(k) = i k . fhat(k).
SpectralScalar divergence(const SpectralField& f);

/// (grad s)^(k) = i k shat(k).
SpectralField gradient(const SpectralScalar& s);

/// Leray projection onto divergence-free fields,
/// (Pf)^(k) = fhat - k (k.fhat)/|k|^2. Requires a zero mean mode; the
/// projection is undefined at k = 0 on the torus.
SpectralField leray_project(const SpectralField& f);

/// 2/3-rule truncation: zero every mode with max_i |k_i| > dealias_cutoff.
SpectralField dealias(const SpectralField& f);
void dealias_inplace(SpectralField& f);

/// Inhomogeneous Sobolev norm ((2pi)^3 sum_k (1+|k|^2)^s |fhat|^2)^{1/2};
/// s = 0 is the L^2 norm consistent with physical-space quadrature.
double sobolev_norm(const SpectralField& f, double s);
double l2_norm(const SpectralField& f);

/// L^2 inner product int a.b dx of two real fields.
double l2_inner(const SpectralField& a, const SpectralField& b);

/// Homogeneous counterpart with multiplier |k|^{2s}; s = 1 gives ||grad f||_L2
/// for divergence-free fields.
double sobolev_seminorm(const SpectralField& f, double s);

/// Max over collocation points of the pointwise Euclidean magnitude.
double linf_norm(const SpectralField& f);

/// Max over collocation points of the Frobenius norm of grad f.
double grad_linf_norm(const SpectralField& f);

/// Pseudo-spectral quadratic product: a x b (Cross) or (a.grad)b (Advection),
/// evaluated pointwise in physical space, transformed back, dealiased, and
/// with the mean mode pinned to zero.
SpectralField product_fields(const SpectralField& a, const SpectralField& b,
                             ProductKind kind);

/// Smooth divergence-free random field: per-component modulus
/// amplitude*(1+|k|^2)^{-decay/2} with phases keyed on (seed, k), band-limited
/// to the dealias cutoff, Leray-projected, zero mean. Deterministic in seed;
/// coefficients at shared modes agree across grid sizes. Requires decay > 7/2.
SpectralField random_divfree_field(GridSpec grid, std::uint64_t seed,
                                   double amplitude, double decay);

// Contract checks used by tests and state validation.
double max_divergence_ratio(const SpectralField& f);   // max |k.fhat| / (|k||fhat|)
double hermitian_defect(const SpectralField& f);       // max |fhat(-k) - conj fhat(k)|
double max_abs_coeff(const SpectralField& f);
bool all_finite(const SpectralField& f);

}  // namespace emx
