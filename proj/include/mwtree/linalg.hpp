#pragma once

// Dense real kernels used throughout the library. Factorizations are
// delegated to Eigen; this header pins down the tolerances and error
// behavior the rest of mwtree relies on.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mwtree/error.hpp"
#include "mwtree/random.hpp"

namespace mwtree {

using Index = Eigen::Index;
using DenseMatrix = Eigen::MatrixXd;

/// Relative singular-value cutoff used by every rank decision unless a
/// caller overrides it.
inline constexpr double kDefaultRankTolerance = 1e-9;
/// Symmetry check: max |a - a^T| entry must be below this times ||a||_F.
inline constexpr double kSymmetryTolerance = 1e-9;
/// spd_inverse_sqrt rejects w when lambda_min <= this times lambda_max.
inline constexpr double kSpdEigenFloor = 1e-12;

inline bool all_finite(const DenseMatrix& a) { return a.allFinite(); }

/// Builds a matrix from row-major nested rows, rejecting ragged or
/// non-finite input.
inline DenseMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  const auto r = static_cast<Index>(rows.size());
  const auto c = r == 0 ? Index{0} : static_cast<Index>(rows.front().size());
  DenseMatrix out(r, c);
  for (Index i = 0; i < r; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Index>(row.size()) != c) {
      throw std::invalid_argument("from_rows: ragged rows");
    }
    for (Index j = 0; j < c; ++j) {
      const double v = row[static_cast<std::size_t>(j)];
      if (!std::isfinite(v)) {
        throw std::invalid_argument("from_rows: non-finite entry");
      }
      out(i, j) = v;
    }
  }
  return out;
}

inline DenseMatrix from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> tmp;
  tmp.reserve(rows.size());
  for (const auto& row : rows) tmp.emplace_back(row);
  return from_rows(tmp);
}

inline std::vector<std::vector<double>> to_rows(const DenseMatrix& a) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(a.rows()));
  for (Index i = 0; i < a.rows(); ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(a.cols()));
    for (Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
  }
  return rows;
}

/// A matrix addressed as a grid of s x s blocks. block(i, j) is 0-based and
/// views the submatrix at offset (i*s, j*s).
class BlockMatrix {
 public:
  BlockMatrix(Index block_rows, Index block_cols, Index block_size)
      : inner_(DenseMatrix::Zero(block_rows * block_size,
                                 block_cols * block_size)),
        block_size_(block_size) {
    if (block_size < 1) throw std::invalid_argument("block size must be >= 1");
  }

  BlockMatrix(DenseMatrix inner, Index block_size)
      : inner_(std::move(inner)), block_size_(block_size) {
    if (block_size < 1 || inner_.rows() % block_size != 0 ||
        inner_.cols() % block_size != 0) {
      throw std::invalid_argument(
          "BlockMatrix: dimensions not divisible by block size");
    }
  }

  Index block_size() const { return block_size_; }
  Index block_rows() const { return inner_.rows() / block_size_; }
  Index block_cols() const { return inner_.cols() / block_size_; }

  const DenseMatrix& dense() const& { return inner_; }
  DenseMatrix& dense() & { return inner_; }
  DenseMatrix dense() && { return std::move(inner_); }

  auto block(Index i, Index j) {
    return inner_.block(i * block_size_, j * block_size_, block_size_,
                        block_size_);
  }
  auto block(Index i, Index j) const {
    return inner_.block(i * block_size_, j * block_size_, block_size_,
                        block_size_);
  }

 private:
  DenseMatrix inner_;
  Index block_size_;
};

struct Inertia {
  Index positive = 0;
  Index negative = 0;
  Index zero = 0;

  Index order() const { return positive + negative + zero; }
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Eigenvalues sorted non-increasing.
struct Spectrum {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
};

inline void require_square(const DenseMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square");
  }
}

inline DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Inverse via LU with partial pivoting. Throws SingularMatrix when a pivot
/// is at or below rel_tol times the largest entry of `a`.
inline DenseMatrix inverse(const DenseMatrix& a,
                           double rel_tol = kDefaultRankTolerance) {
  require_square(a, "inverse");
  if (a.size() == 0) return a;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw Error(ErrorCode::SingularMatrix, "zero matrix");
  Eigen::PartialPivLU<DenseMatrix> lu(a);
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (pivots.minCoeff() <= rel_tol * scale) {
    throw Error(ErrorCode::SingularMatrix,
                "pivot " + std::to_string(pivots.minCoeff()) +
                    " below tolerance");
  }
  return lu.inverse();
}

/// LU determinant; the sign of the row permutation is carried by Eigen.
inline double determinant(const DenseMatrix& a) {
  require_square(a, "determinant");
  if (a.size() == 0) return 1.0;
  return Eigen::PartialPivLU<DenseMatrix>(a).determinant();
}

struct SignedLogDet {
  int sign = 0;  // -1, 0, +1
  double log_abs = -std::numeric_limits<double>::infinity();
};

/// sign(det a) and log|det a| from the LU diagonal, immune to overflow.
inline SignedLogDet log_determinant(const DenseMatrix& a) {
  require_square(a, "log_determinant");
  if (a.size() == 0) return {1, 0.0};
  Eigen::PartialPivLU<DenseMatrix> lu(a);
  SignedLogDet out{static_cast<int>(lu.permutationP().determinant()), 0.0};
  const auto diag = lu.matrixLU().diagonal();
  for (Index i = 0; i < diag.size(); ++i) {
    if (diag(i) == 0.0) return {};
    if (diag(i) < 0.0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(diag(i)));
  }
  return out;
}

inline bool is_symmetric(const DenseMatrix& a,
                         double rel_tol = kSymmetryTolerance) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  return asym <= rel_tol * a.norm();
}

inline Spectrum symmetric_eigenvalues(const DenseMatrix& a) {
  require_square(a, "symmetric_eigenvalues");
  if (!is_symmetric(a)) {
    throw Error(ErrorCode::NotSymmetric, "matrix fails the symmetry check");
  }
  Spectrum out;
  if (a.size() == 0) return out;
  // Tridiagonalization followed by implicit QL/QR; ascending order.
  const DenseMatrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(sym, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  std::reverse(out.values.begin(), out.values.end());
  return out;
}

/// Singular values, non-increasing.
inline Eigen::VectorXd singular_values(const DenseMatrix& a) {
  if (a.size() == 0) return Eigen::VectorXd();
  return Eigen::JacobiSVD<DenseMatrix>(a).singularValues();
}

inline Index numerical_rank(const DenseMatrix& a,
                            double rel_tol = kDefaultRankTolerance) {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
  const auto sv = singular_values(a);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = rel_tol * sv(0);
  return static_cast<Index>((sv.array() > cutoff).count());
}

inline bool is_full_rank(const DenseMatrix& a,
                         double rel_tol = kDefaultRankTolerance) {
  return a.rows() == a.cols() && numerical_rank(a, rel_tol) == a.rows();
}

/// 2-norm condition number; infinity when numerically singular.
inline double condition_number(const DenseMatrix& a) {
  const auto sv = singular_values(a);
  if (sv.size() == 0) return 1.0;
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

/// Moore-Penrose inverse via SVD, dropping singular values at or below the
/// numerical_rank cutoff.
inline DenseMatrix pseudo_inverse(const DenseMatrix& a,
                                  double rel_tol = kDefaultRankTolerance) {
  if (a.size() == 0) return DenseMatrix(a.cols(), a.rows());
  Eigen::JacobiSVD<DenseMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::VectorXd inv_sv = Eigen::VectorXd::Zero(sv.size());
  const double cutoff = rel_tol * (sv.size() > 0 ? sv(0) : 0.0);
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) inv_sv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
}

inline DenseMatrix random_uniform_matrix(Index rows, Index cols, Rng& rng,
                                         double lo = -1.0, double hi = 1.0) {
  DenseMatrix out(rows, cols);
  // Row-major fill order is part of the determinism contract.
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) out(i, j) = rng.uniform(lo, hi);
  }
  return out;
}

/// A g-inverse H of `a` (a H a = a) drawn from the family
///   H = A+ + (I - A+ A) U + V (I - A A+)
/// with U, V uniform(-1, 1) from the seeded generator.
inline DenseMatrix random_g_inverse(const DenseMatrix& a, std::uint64_t seed,
                                    double rel_tol = kDefaultRankTolerance) {
  const DenseMatrix pinv = pseudo_inverse(a, rel_tol);
  Rng rng(seed);
  const DenseMatrix u = random_uniform_matrix(a.cols(), a.rows(), rng);
  const DenseMatrix v = random_uniform_matrix(a.cols(), a.rows(), rng);
  const DenseMatrix right_null =
      DenseMatrix::Identity(a.cols(), a.cols()) - pinv * a;
  const DenseMatrix left_null =
      DenseMatrix::Identity(a.rows(), a.rows()) - a * pinv;
  return pinv + right_null * u + v * left_null;
}

inline bool is_spd(const DenseMatrix& w) {
  if (w.rows() != w.cols() || w.size() == 0 || !is_symmetric(w)) return false;
  const auto ev = symmetric_eigenvalues(w).values;
  return ev.front() > 0.0 && ev.back() > kSpdEigenFloor * ev.front();
}

/// The symmetric m with m * m = w^{-1}, from w = V diag(l) V^T.
inline DenseMatrix spd_inverse_sqrt(const DenseMatrix& w) {
  if (w.rows() != w.cols() || w.size() == 0 || !is_symmetric(w)) {
    throw Error(ErrorCode::NotSPD, "weight is not symmetric");
  }
  const DenseMatrix sym = 0.5 * (w + w.transpose());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(sym);
  const auto& ev = solver.eigenvalues();
  const double lmax = ev(ev.size() - 1);
  if (!(lmax > 0.0) || !(ev(0) > kSpdEigenFloor * lmax)) {
    throw Error(ErrorCode::NotSPD, "weight is not positive definite");
  }
  const Eigen::VectorXd scale = ev.array().rsqrt();
  const DenseMatrix m = solver.eigenvectors() * scale.asDiagonal() *
                        solver.eigenvectors().transpose();
  return 0.5 * (m + m.transpose());
}

}  // namespace mwtree
