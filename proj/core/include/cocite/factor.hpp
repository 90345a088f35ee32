#pragma once

// Principal-component factor analysis with varimax rotation.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cocite/matrix.hpp"

namespace cocite {

enum class Rotation { None, Varimax };

std::string_view to_string(Rotation r) noexcept;

struct LoadingsMatrix {
  Labels variable_labels;
  Eigen::MatrixXd loadings;               // p x m
  Eigen::VectorXd eigenvalues;            // all p, descending
  std::vector<double> explained_variance_pct;  // per retained factor
  Rotation rotation = Rotation::None;
  int rotation_iterations = 0;
  /// m x m orthogonal rotation applied to the unrotated loadings (identity
  /// when unrotated).
  Eigen::MatrixXd rotation_matrix;
  /// Varimax criterion after each sweep, starting with the unrotated value.
  std::vector<double> criterion_history;

  Eigen::Index n_variables() const noexcept { return loadings.rows(); }
  Eigen::Index n_factors() const noexcept { return loadings.cols(); }
  Eigen::VectorXd communalities() const { return loadings.rowwise().squaredNorm(); }
};

/// Unrotated principal-component loadings of a correlation matrix. With no
/// factor count the Kaiser rule (eigenvalue > 1, at least one) is used.
LoadingsMatrix pca_from_correlation(const ProximityMatrix& correlation, std::optional<int> n_factors = std::nullopt);

/// Pearson correlation of the occurrence columns followed by
/// pca_from_correlation. Propagates Error(ZeroVarianceColumn).
LoadingsMatrix pca_from_occurrence(const OccurrenceMatrix& a, std::optional<int> n_factors = std::nullopt);

/// Raw varimax criterion: sum over factors of the variance of squared
/// loadings, sum_j [ sum_i l^4 / p - (sum_i l^2 / p)^2 ].
double varimax_criterion(const Eigen::MatrixXd& loadings);

struct VarimaxOptions {
  bool kaiser_normalize = true;
  double tolerance = 1e-6;  // on the change of the criterion per sweep
  int max_sweeps = 100;
};

/// Orthogonal varimax rotation by successive planar rotations of factor
/// pairs. With Kaiser normalization rows are scaled to unit communality
/// before rotating and scaled back after; the recorded criterion is that of
/// the matrix being rotated. Throws Error(InvalidArgument) for fewer than two
/// factors and Error(NoConvergence) past the sweep cap.
LoadingsMatrix varimax(const LoadingsMatrix& l, const VarimaxOptions& opts = {});

/// Loadings on the first `dims` factors (2 or 3), one row per variable.
Eigen::MatrixXd factor_scatter_coords(const LoadingsMatrix& l, int dims);

/// Loadings as CSV: header "variable,F1,...,Fm", full precision.
void write_loadings_csv(std::ostream& out, const LoadingsMatrix& l);

/// Aligned text table of loadings. Entries with |l| < threshold print blank;
/// a footer lists eigenvalues and explained variance.
std::string format_loadings_table(const LoadingsMatrix& l, double threshold = 0.10);

}  // namespace cocite
