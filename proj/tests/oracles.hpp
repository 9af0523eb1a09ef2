#pragma once

// Independent reference implementations used only by the test suite.  These
// deliberately avoid the library's own solvers: eigensystems and SVDs come
// from Eigen's built-in decompositions, matrix exponentials from plain
// scaling-and-squaring, and frequency blocks from an explicit unitary DFT
// similarity on the block-circulant form.

#include <functional>
#include <utility>
#include <vector>

#include "tprod/expander.hpp"
#include "tprod/mat.hpp"
#include "tprod/tensor.hpp"

namespace oracles {

using tprod::cplx;
using tprod::Mat;
using tprod::Tensor3;

// Unambiguous alias: the product function shares its name with the library
// namespace, which trips unqualified lookup in test code.
inline Tensor3 tmul(const Tensor3& a, const Tensor3& b) { return tprod::tprod(a, b); }

// Hermitian eigenvalues, sorted nonincreasing (Eigen::SelfAdjointEigenSolver).
std::vector<double> eigen_sym(const Mat& a);

// Full Hermitian eigensystem; columns of .second match .first's order.
std::pair<std::vector<double>, Mat> eigen_sym_full(const Mat& a);

// Singular values, sorted nonincreasing (Eigen::JacobiSVD).
std::vector<double> singular_values(const Mat& a);

double spectral_norm(const Mat& a);
double ky_fan_norm(const Mat& a, int k);
double schatten_norm(const Mat& a, double q);

// Matrix exponential by scaling and squaring with a Taylor core; valid for
// any square complex matrix.
Mat expm(const Mat& a);

// Principal logarithm of a Hermitian positive definite matrix.
Mat logm_pd(const Mat& a);

// f applied to a Hermitian matrix through its eigensystem.
Mat apply_sym(const Mat& a, const std::function<double(double)>& f);

// Frequency blocks of a tensor extracted by conjugating bcirc with the
// unitary DFT matrix (block i of (F (x) I) bcirc (F^H (x) I)).
std::vector<Mat> dft_blocks(const Tensor3& t);

// All length-kappa vertex tuples with positive stationary-walk probability.
std::vector<std::pair<std::vector<int>, double>> enumerate_walks(
    const tprod::RegularGraph& g, int kappa);

}  // namespace oracles
