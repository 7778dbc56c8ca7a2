#include "mincorr/corr_matrix.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "mincorr/errors.hpp"

namespace mincorr {
namespace {

constexpr double kSymmetryTol = 1e-12;

Eigen::MatrixXd to_eigen(const CorrMatrix& m) {
  const auto d = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXd out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::ostringstream out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out << "; ";
    out << items[i];
  }
  return out.str();
}

}  // namespace

std::vector<std::string> corr_matrix_diagnostics(
    const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> issues;
  const std::size_t d = rows.size();
  if (d < 2) issues.emplace_back("correlation matrix must be at least 2x2");
  for (std::size_t i = 0; i < d; ++i) {
    if (rows[i].size() != d) {
      std::ostringstream msg;
      msg << "row " << i << " has " << rows[i].size() << " entries, expected "
          << d << " (matrix must be square)";
      issues.push_back(msg.str());
    }
  }
  if (!issues.empty()) return issues;

  bool diagonal_ok = true;
  bool symmetric = true;
  bool in_range = true;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double v = rows[i][j];
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "entry (" << i << "," << j << ") is not finite";
        issues.push_back(msg.str());
        continue;
      }
      if (i == j) {
        if (v != 1.0) diagonal_ok = false;
      } else {
        if (std::abs(v - rows[j][i]) > kSymmetryTol) symmetric = false;
        if (!(std::abs(v) < 1.0)) in_range = false;
      }
    }
  }
  if (!diagonal_ok) issues.emplace_back("unit diagonal required");
  if (!symmetric) issues.emplace_back("matrix must be symmetric");
  if (!in_range) issues.emplace_back("off-diagonal entries must lie in (-1, 1)");
  return issues;
}

CorrMatrix::CorrMatrix(const std::vector<std::vector<double>>& rows)
    : dim_(rows.size()) {
  const auto issues = corr_matrix_diagnostics(rows);
  if (!issues.empty()) throw ParameterError("invalid correlation matrix: " + join(issues));
  entries_.resize(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      // store the upper triangle mirrored so the matrix is exactly symmetric
      entries_[i * dim_ + j] = i <= j ? rows[i][j] : rows[j][i];
    }
  }
}

CorrMatrix CorrMatrix::from_pairs(double r12, double r13, double r23) {
  return CorrMatrix({{1.0, r12, r13}, {r12, 1.0, r23}, {r13, r23, 1.0}});
}

CorrMatrix CorrMatrix::compound_symmetry(std::size_t dim, double r) {
  std::vector<std::vector<double>> rows(dim, std::vector<double>(dim, r));
  for (std::size_t i = 0; i < dim; ++i) rows[i][i] = 1.0;
  return CorrMatrix(rows);
}

std::vector<std::vector<double>> CorrMatrix::rows() const {
  std::vector<std::vector<double>> out(dim_, std::vector<double>(dim_));
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

double min_eigenvalue(const CorrMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(m),
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_positive_semidefinite(const CorrMatrix& m, double tol) {
  return min_eigenvalue(m) >= -tol;
}

std::vector<double> leading_principal_minors(const CorrMatrix& m) {
  const Eigen::MatrixXd a = to_eigen(m);
  std::vector<double> minors;
  for (Eigen::Index k = 1; k <= a.rows(); ++k) {
    minors.push_back(a.topLeftCorner(k, k).determinant());
  }
  return minors;
}

bool is_positive_semidefinite_sylvester(const CorrMatrix& m, double tol) {
  const std::size_t d = m.dim();
  if (d > 3) {
    throw ParameterError("is_positive_semidefinite_sylvester: dim must be <= 3");
  }
  // Diagonal minors are 1. Each 2x2 principal minor is 1 - r^2.
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (1.0 - m(i, j) * m(i, j) < -tol) return false;
    }
  }
  if (d == 3) {
    const double p = m(0, 1);
    const double q = m(0, 2);
    const double r = m(1, 2);
    const double det = 1.0 - p * p - q * q - r * r + 2.0 * p * q * r;
    if (det < -tol) return false;
  }
  return true;
}

}  // namespace mincorr
