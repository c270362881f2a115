#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "errors.hpp"

namespace nhbloch::eig {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

struct EigenPairs {
  std::vector<cplx> values;
  ComplexMatrix vectors;          // unit-norm right eigenvectors, one per column
  std::vector<double> residuals;  // |A v - l v| / (|A| |v|)
  double max_overlap = 0.0;       // largest |<v_i, v_j>| among coalescing eigenvalues
  int numerical_rank = 0;         // independent eigenvectors found
  bool residual_flag = false;     // some pair misses the 1e-8 residual bound
  bool defective = false;         // coalescing eigenvalues share one eigenvector
};

inline constexpr double residual_bound = 1e-8;
// eigenvalues closer than this (relative to |A|) are treated as coalescing
inline constexpr double cluster_tol = 1e-6;
// unit eigenvectors with |<v_i, v_j>| above 1 - parallel_tol count as one
inline constexpr double parallel_tol = 1e-6;

namespace detail {

template <typename Matrix>
void require_finite(Matrix const& a, char const* who) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw domain_error(std::string(who) + ": matrix must be square and non-empty");
  if (!a.allFinite()) throw domain_error(std::string(who) + ": non-finite matrix entry");
}

inline void check_info(lapack_int info, char const* who, Eigen::Index n) {
  if (info < 0) throw numerical_error(std::string(who) + ": illegal LAPACK argument " + std::to_string(-info));
  if (info > 0)
    throw numerical_error(std::string(who) + ": QR iteration failed to converge (" +
                          std::to_string(info) + " of " + std::to_string(n) +
                          " eigenvalues unresolved)");
}

inline double one_norm(ComplexMatrix const& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

inline void finish_pairs(ComplexMatrix const& a, EigenPairs& out) {
  Eigen::Index const n = a.rows();
  double const anorm = std::max(one_norm(a), 1e-300);
  out.residuals.resize(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    auto v = out.vectors.col(j);
    double const vn = v.norm();
    if (vn > 0.0) v /= vn;
  }
  ComplexMatrix const av = a * out.vectors;
  for (Eigen::Index j = 0; j < n; ++j) {
    double const r = (av.col(j) - out.values[std::size_t(j)] * out.vectors.col(j)).norm() / anorm;
    out.residuals[std::size_t(j)] = r;
    if (r > residual_bound) out.residual_flag = true;
  }
  std::vector<bool> dependent(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(out.values[std::size_t(i)] - out.values[std::size_t(j)]) > cluster_tol * anorm)
        continue;
      double const ov = std::abs(out.vectors.col(i).dot(out.vectors.col(j)));
      out.max_overlap = std::max(out.max_overlap, ov);
      if (ov > 1.0 - parallel_tol) dependent[std::size_t(j)] = true;
    }
  }
  out.numerical_rank = int(std::count(dependent.begin(), dependent.end(), false));
  out.defective = out.numerical_rank < n;
}

} // namespace detail

// All eigenvalues of a general complex matrix (balanced Hessenberg-QR).
inline std::vector<cplx> eigenvalues(ComplexMatrix a) {
  detail::require_finite(a, "eigenvalues");
  lapack_int const n = lapack_int(a.rows());
  auto const un = static_cast<std::size_t>(n);
  std::vector<cplx> w(un);
  lapack_int ilo = 0, ihi = 0;
  std::vector<double> scale(un), rconde(un), rcondv(un);
  double abnrm = 0.0;
  lapack_int const info = LAPACKE_zgeevx(LAPACK_COL_MAJOR, 'B', 'N', 'N', 'N', n, a.data(), n,
                                         w.data(), nullptr, 1, nullptr, 1, &ilo, &ihi,
                                         scale.data(), &abnrm, rconde.data(), rcondv.data());
  detail::check_info(info, "eigenvalues", n);
  return w;
}

inline std::vector<cplx> eigenvalues(RealMatrix a) {
  detail::require_finite(a, "eigenvalues");
  lapack_int const n = lapack_int(a.rows());
  auto const un = static_cast<std::size_t>(n);
  std::vector<double> wr(un), wi(un);
  lapack_int ilo = 0, ihi = 0;
  std::vector<double> scale(un), rconde(un), rcondv(un);
  double abnrm = 0.0;
  lapack_int const info = LAPACKE_dgeevx(LAPACK_COL_MAJOR, 'B', 'N', 'N', 'N', n, a.data(), n,
                                         wr.data(), wi.data(), nullptr, 1, nullptr, 1, &ilo, &ihi,
                                         scale.data(), &abnrm, rconde.data(), rcondv.data());
  detail::check_info(info, "eigenvalues", n);
  std::vector<cplx> w(un);
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = {wr[j], wi[j]};
  return w;
}

// Eigenvalues with right eigenvectors; residuals and eigenvector-rank are reported.
inline EigenPairs eigenpairs(ComplexMatrix const& a) {
  detail::require_finite(a, "eigenpairs");
  ComplexMatrix work = a;
  lapack_int const n = lapack_int(a.rows());
  auto const un = static_cast<std::size_t>(n);
  EigenPairs out;
  out.values.resize(un);
  out.vectors.resize(n, n);
  lapack_int ilo = 0, ihi = 0;
  std::vector<double> scale(un), rconde(un), rcondv(un);
  double abnrm = 0.0;
  lapack_int const info = LAPACKE_zgeevx(LAPACK_COL_MAJOR, 'B', 'N', 'V', 'N', n, work.data(), n,
                                         out.values.data(), nullptr, 1, out.vectors.data(), n,
                                         &ilo, &ihi, scale.data(), &abnrm, rconde.data(),
                                         rcondv.data());
  detail::check_info(info, "eigenpairs", n);
  detail::finish_pairs(a, out);
  return out;
}

inline EigenPairs eigenpairs(RealMatrix const& a) {
  detail::require_finite(a, "eigenpairs");
  RealMatrix work = a;
  lapack_int const n = lapack_int(a.rows());
  auto const un = static_cast<std::size_t>(n);
  std::vector<double> wr(un), wi(un);
  RealMatrix vr(n, n);
  lapack_int ilo = 0, ihi = 0;
  std::vector<double> scale(un), rconde(un), rcondv(un);
  double abnrm = 0.0;
  lapack_int const info = LAPACKE_dgeevx(LAPACK_COL_MAJOR, 'B', 'N', 'V', 'N', n, work.data(), n,
                                         wr.data(), wi.data(), nullptr, 1, vr.data(), n, &ilo,
                                         &ihi, scale.data(), &abnrm, rconde.data(), rcondv.data());
  detail::check_info(info, "eigenpairs", n);

  EigenPairs out;
  out.values.resize(un);
  out.vectors.resize(n, n);
  // complex pairs come packed as (re, im) column pairs
  for (lapack_int j = 0; j < n; ++j) {
    out.values[std::size_t(j)] = {wr[std::size_t(j)], wi[std::size_t(j)]};
    if (wi[std::size_t(j)] == 0.0) {
      out.vectors.col(j) = vr.col(j).cast<cplx>();
    } else if (j + 1 < n) {
      for (lapack_int i = 0; i < n; ++i) {
        out.vectors(i, j) = {vr(i, j), vr(i, j + 1)};
        out.vectors(i, j + 1) = {vr(i, j), -vr(i, j + 1)};
      }
      out.values[std::size_t(j + 1)] = {wr[std::size_t(j + 1)], wi[std::size_t(j + 1)]};
      ++j;
    }
  }
  detail::finish_pairs(a.cast<cplx>(), out);
  return out;
}

// Eigenvalues of a Hermitian matrix, ascending. Only the lower triangle is read.
inline std::vector<double> hermitian_eigenvalues(ComplexMatrix a) {
  detail::require_finite(a, "hermitian_eigenvalues");
  lapack_int const n = lapack_int(a.rows());
  auto const un = static_cast<std::size_t>(n);
  std::vector<double> w(un);
  lapack_int const info = LAPACKE_zheev(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
  detail::check_info(info, "hermitian_eigenvalues", n);
  return w;
}

} // namespace nhbloch::eig
