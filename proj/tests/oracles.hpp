#pragma once

// Dense reference computations. These build the full operators of the
// Hilbert-space formulation and solve with general-purpose dense linear
// algebra; nothing here reuses the library's diagonal shortcuts.

#include <algorithm>
#include <complex>
#include <vector>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// K x N block row [I I ... I].
inline Matrix dsamp(Index n, Index k) {
  Matrix d = Matrix::Zero(k, n);
  for (Index l = 0; l < n / k; ++l) d.block(0, l * k, k, k).setIdentity();
  return d;
}

inline Matrix spectral_operator(const Matrix& u, const Vector& f) { return u * f.asDiagonal() * u.transpose(); }

inline Matrix pinv(const Matrix& m) { return Eigen::CompleteOrthogonalDecomposition<Matrix>(m).pseudoInverse(); }

inline Matrix inv(const Matrix& m) { return m.fullPivLu().inverse(); }

// Sampling operator S* (K x N) and synthesis operators U diag(f) D^T (N x K).
inline Matrix sampling_op(const Matrix& u, const Vector& s, Index k) {
  return dsamp(u.rows(), k) * s.asDiagonal() * u.transpose();
}
inline Matrix synthesis_op(const Matrix& u, const Vector& f, Index k) {
  return u * f.asDiagonal() * dsamp(u.rows(), k).transpose();
}

// Reconstruction operators (N x N), one per row of the graph column of Table I.
inline Matrix subspace_unconstrained_ds(const Matrix& u, const Vector& s, const Vector& a, Index k) {
  const Matrix S = sampling_op(u, s, k), A = synthesis_op(u, a, k);
  return A * inv(S * A) * S;
}
inline Matrix subspace_unconstrained_ls(const Matrix& u, const Vector& s, const Vector& a, Index k) {
  const Matrix S = sampling_op(u, s, k), A = synthesis_op(u, a, k);
  return A * pinv(S * A) * S;
}
inline Matrix subspace_predefined_ds(const Matrix& u, const Vector& s, const Vector& a, const Vector& w, Index k) {
  const Matrix S = sampling_op(u, s, k), A = synthesis_op(u, a, k), W = synthesis_op(u, w, k);
  return W * inv(W.transpose() * W) * W.transpose() * A * inv(S * A) * S;
}
inline Matrix subspace_predefined_ls(const Matrix& u, const Vector& s, const Vector& w, Index k) {
  const Matrix S = sampling_op(u, s, k), W = synthesis_op(u, w, k);
  return W * pinv(S * W) * S;
}
// W~ = (V* V)^{-1} S with the smoothness operator V = U diag(v) U^T.
inline Matrix smoothness_wtilde(const Matrix& u, const Vector& s, const Vector& v, Index k) {
  const Matrix V = spectral_operator(u, v);
  return inv(V.transpose() * V) * synthesis_op(u, s, k);
}
inline Matrix smoothness_unconstrained(const Matrix& u, const Vector& s, const Vector& v, Index k) {
  const Matrix S = sampling_op(u, s, k), Wt = smoothness_wtilde(u, s, v, k);
  return Wt * inv(S * Wt) * S;
}
inline Matrix smoothness_predefined_mx(const Matrix& u, const Vector& s, const Vector& v, const Vector& w, Index k) {
  const Matrix S = sampling_op(u, s, k), Wt = smoothness_wtilde(u, s, v, k), W = synthesis_op(u, w, k);
  return W * inv(W.transpose() * W) * W.transpose() * Wt * inv(S * Wt) * S;
}

// Schur complement eliminating the vertices not in `keep`, with a full inverse.
inline Matrix schur(const Matrix& m, const std::vector<Index>& keep) {
  std::vector<Index> drop;
  for (Index i = 0; i < m.rows(); ++i)
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) drop.push_back(i);
  auto block = [&](const std::vector<Index>& r, const std::vector<Index>& c) {
    Matrix b(static_cast<Index>(r.size()), static_cast<Index>(c.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) b(static_cast<Index>(i), static_cast<Index>(j)) = m(r[i], c[j]);
    return b;
  };
  if (drop.empty()) return block(keep, keep);
  return block(keep, keep) - block(keep, drop) * inv(block(drop, drop)) * block(drop, keep);
}

// Naive unitary DFT: X[i] = sum_n x[n] exp(-2 pi j i n / N) / sqrt(N).
inline Eigen::VectorXcd dft(const Vector& x) {
  const Index n = x.size();
  Eigen::VectorXcd out(n);
  for (Index i = 0; i < n; ++i) {
    std::complex<double> acc = 0.0;
    for (Index m = 0; m < n; ++m)
      acc += x[m] * std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * double(i * m % n) / double(n)));
    out[i] = acc / std::sqrt(double(n));
  }
  return out;
}

inline Vector random_vector(std::mt19937_64& rng, Index n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

}  // namespace oracle
