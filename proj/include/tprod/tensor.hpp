#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tprod/mat.hpp"

namespace tprod {

// Order-3 tensor of shape m x n x p: p frontal slices, each an m x n matrix.
// Storage is slice-major with row-major slices.  Values are immutable after
// construction except through the mutable accessor, which invalidates the
// cached realness flag.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int m, int n, int p);

  int m() const { return m_; }
  int n() const { return n_; }
  int p() const { return p_; }
  bool square() const { return m_ == n_; }

  cplx& at(int i, int j, int k) {
    real_known_ = false;
    return a_[idx(i, j, k)];
  }
  const cplx& at(int i, int j, int k) const { return a_[idx(i, j, k)]; }
  cplx& operator()(int i, int j, int k) { return at(i, j, k); }
  const cplx& operator()(int i, int j, int k) const { return at(i, j, k); }

  const std::vector<cplx>& data() const { return a_; }
  std::vector<cplx>& mutable_data() {
    real_known_ = false;
    return a_;
  }

  Mat slice(int k) const;                // frontal slice C^{(k)}, 0-based k
  void set_slice(int k, const Mat& s);

  // True when every entry's imaginary part is at most 1e-12 in magnitude.
  bool is_real() const;

  static constexpr double real_tol = 1e-12;

 private:
  std::size_t idx(int i, int j, int k) const;

  int m_ = 0, n_ = 0, p_ = 0;
  std::vector<cplx> a_;
  mutable bool real_known_ = false;
  mutable bool real_ = true;
};

Tensor3 zero_tensor(int m, int n, int p);
Tensor3 identity_tensor(int m, int p);
Tensor3 random_tensor(int m, int n, int p, std::uint64_t seed);
// Random real tensor with C = transpose(C); built as (G + G^T)/2.
Tensor3 random_symmetric(int m, int p, std::uint64_t seed);

// Stacks the frontal slices vertically into an (m*p) x n matrix.
Mat unfold(const Tensor3& t);
Tensor3 fold(const Mat& a, int m, int n, int p);

// Block-circulant matrix whose first block column is C^{(1)}..C^{(p)}:
// block (i, j) = C^{(1 + ((i - j) mod p))}.
Mat bcirc(const Tensor3& t);
Tensor3 bcirc_inv(const Mat& a, int m, int n, int p);

Tensor3 tprod(const Tensor3& a, const Tensor3& b);

// Satisfies bcirc(transpose(C)) = bcirc(C)^T: slice 1 transposed in place,
// slice k (k >= 2) takes the transpose of slice p + 2 - k.
Tensor3 transpose(const Tensor3& t);
Tensor3 hermitian_transpose(const Tensor3& t);

// Sum of the diagonal entries of every frontal slice.
cplx trace(const Tensor3& t);

// Entrywise sum of conj(a) * b.
cplx inner_product(const Tensor3& a, const Tensor3& b);

Tensor3 add(const Tensor3& a, const Tensor3& b);
Tensor3 sub(const Tensor3& a, const Tensor3& b);
Tensor3 scale(const Tensor3& t, cplx c);
Tensor3 negate(const Tensor3& t);

Tensor3 operator+(const Tensor3& a, const Tensor3& b);
Tensor3 operator-(const Tensor3& a, const Tensor3& b);
Tensor3 operator*(cplx c, const Tensor3& t);
Tensor3 operator-(const Tensor3& t);

double max_abs(const Tensor3& t);
bool approx_equal(const Tensor3& a, const Tensor3& b, double atol = 1e-10,
                  double rtol = 1e-8);

// Plain-text format: header "m n p", then p slices, each m lines of n
// complex entries written as re+imj (e.g. 1.5-0.25j).
void write_tensor(std::ostream& os, const Tensor3& t);
Tensor3 read_tensor(std::istream& is);
std::string to_text(const Tensor3& t);
Tensor3 tensor_from_text(const std::string& text);

// JSON form { "m":, "n":, "p":, "re": [...], "im": [...] }, slice-major.
std::string to_json(const Tensor3& t);
Tensor3 tensor_from_json(const std::string& text);

}  // namespace tprod
