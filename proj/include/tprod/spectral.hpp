#pragma once

#include <cstdint>
#include <vector>

#include "tprod/tensor.hpp"

namespace tprod {

// Frequency-domain representation: the p diagonal blocks of
// (F_p (x) I_m) bcirc(C) (F_p^H (x) I_m) with unitary F_p.  Realized as the
// unnormalized DFT of the slice sequence along tubes (the 1/sqrt(p) factors
// cancel in the similarity): slice_hat[i] = sum_k w^{i k} C^{(k+1)},
// w = exp(-2 pi sqrt(-1) / p).
struct FrequencySlices {
  int m = 0, n = 0, p = 0;
  std::vector<Mat> slices;
};

FrequencySlices to_frequency(const Tensor3& t);
Tensor3 from_frequency(const FrequencySlices& f);

struct SpectrumEntry {
  double value;
  int slice;  // frequency slice, 0-based
  int index;  // position in that slice's nonincreasing list, 0-based
};

// Globally nonincreasing; ties broken by slice index, then within-slice index.
using SpectrumVec = std::vector<SpectrumEntry>;

std::vector<double> values_of(const SpectrumVec& s);

// Per-frequency Hermitian eigendecomposition of a symmetric tensor.
struct TEigenDecomposition {
  int m = 0, p = 0;
  std::vector<std::vector<double>> values;  // values[i] nonincreasing, size m
  std::vector<Mat> vectors;                 // unitary, column j <-> values[i][j]
};

// Contract error if any frequency slice deviates from Hermitian by more than
// herm_tol relative to its magnitude.
TEigenDecomposition t_eigen(const Tensor3& t, double herm_tol = 1e-8);

SpectrumVec t_eigenvalues(const Tensor3& t);
SpectrumVec t_singular_values(const Tensor3& t);

// Scalar functions applied to the spectrum of a symmetric tensor.
struct SpectralFunction {
  enum class Kind { exp_fn, log_fn, power_fn, poly_fn };
  Kind kind = Kind::exp_fn;
  double alpha = 1.0;           // exponent for power_fn
  std::vector<double> coeff;    // a0..a_d for poly_fn
  double s = 1.0;               // outer exponent for poly_fn

  static SpectralFunction make_exp();
  static SpectralFunction make_log();
  static SpectralFunction power(double alpha);
  static SpectralFunction polynomial(std::vector<double> coeff, double s);

  double eval(double x) const;  // real scalar evaluation (poly/power/exp/log)
};

// Result's frequency slices are fn(z * slice_hat[i]), computed by applying fn
// to the eigenvalues of each Hermitian slice.  z must keep z*slice Hermitian
// viewed through the eigenbasis (fn of complex eigenvalues z*lambda is taken
// pointwise); for log/power the spectrum of t must be positive.
Tensor3 apply_spectral_function(const Tensor3& t, const SpectralFunction& fn,
                                cplx z = cplx(1.0, 0.0));

bool is_tpd(const Tensor3& t, double tol = 1e-10);
bool is_tpsd(const Tensor3& t, double tol = 1e-10);

// |t| = sqrt(t^H * t): per-frequency polar magnitude via SVD.
Tensor3 t_abs(const Tensor3& t);

double ky_fan_norm(const Tensor3& t, int k);
double schatten_norm(const Tensor3& t, double q);
double spectral_norm(const Tensor3& t);

// Product of all T-eigenvalues.
double determinant(const Tensor3& t);

// Sum of all T-eigenvalues = trace of bcirc(t) = p * trace of the first slice.
double spectral_trace(const Tensor3& t);

// <X, t*X> / <X, X> for X of shape m x 1 x p.
double rayleigh_quotient(const Tensor3& t, const Tensor3& x);

// ks[i] is 1-based within slice i.  Returns min_i values[i][ks[i]-1], after
// checking feasibility: the result must be >= the next eigenvalue down in
// every slice.  Infeasible selections are a contract error.
double courant_fischer_probe(const Tensor3& t, const std::vector<int>& ks);

// Orthogonal tensor built from random per-frequency unitaries with the
// conjugate symmetry needed for a real result.
Tensor3 random_orthogonal(int m, int p, std::uint64_t seed);

}  // namespace tprod
