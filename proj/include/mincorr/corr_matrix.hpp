#ifndef MINCORR_CORR_MATRIX_HPP
#define MINCORR_CORR_MATRIX_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace mincorr {

/// Symmetric, unit-diagonal target correlation matrix with off-diagonal
/// entries in (-1, 1). Positive semidefiniteness is not required here; see
/// is_positive_semidefinite.
class CorrMatrix {
 public:
  /// Throws ParameterError listing every violated constraint.
  explicit CorrMatrix(const std::vector<std::vector<double>>& rows);

  /// 3x3 matrix from (rho_12, rho_13, rho_23).
  static CorrMatrix from_pairs(double r12, double r13, double r23);
  static CorrMatrix compound_symmetry(std::size_t dim, double r);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * dim_ + j];
  }
  std::vector<std::vector<double>> rows() const;

 private:
  std::size_t dim_;
  std::vector<double> entries_;
};

/// Every constraint `rows` violates as a human-readable diagnostic; empty
/// when the rows form a valid CorrMatrix.
std::vector<std::string> corr_matrix_diagnostics(
    const std::vector<std::vector<double>>& rows);

double min_eigenvalue(const CorrMatrix& m);

/// Smallest eigenvalue >= -tol. Matrices on the boundary (det = 0) pass.
bool is_positive_semidefinite(const CorrMatrix& m, double tol = 1e-10);

/// Determinants of the k x k leading blocks, k = 1..dim.
std::vector<double> leading_principal_minors(const CorrMatrix& m);

/// Principal-minor (Sylvester-type) PSD test: every principal minor >= -tol.
/// Independent of the eigenvalue route; restricted to dim <= 3.
bool is_positive_semidefinite_sylvester(const CorrMatrix& m, double tol = 1e-10);

}  // namespace mincorr

#endif  // MINCORR_CORR_MATRIX_HPP
