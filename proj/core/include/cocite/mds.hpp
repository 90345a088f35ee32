#pragma once

// Multidimensional scaling by stress majorization (SMACOF).
//
// Proximities are first turned into dissimilarities (similarities through
// to_dissimilarity with the automatic constant). Each iteration applies the
// Guttman transform to the configuration and then refits the disparities
// d-hat for the chosen measurement level:
//
//   ratio     d-hat = b * delta
//   interval  d-hat = a + b * delta, b >= 0, d-hat >= 0
//   ordinal   d-hat monotone in delta, ties untied (pool-adjacent-violators)
//
// Disparities are rescaled every iteration so sum w * d-hat^2 = n(n-1)/2.
// The reported stress is normalized raw stress
//
//   sigma_n = sum w (d-hat - d)^2 / sum w d-hat^2
//
// summed over i < j. Kruskal's stress-1 relates to it as sqrt(sigma_n).
// Diagonal and missing (NaN) proximities carry weight 0, everything else 1.
//
// ALSCAL's S-stress (squared distances) is a different objective and is not
// provided.

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "cocite/matrix.hpp"

namespace cocite {

struct ClassicalInit {};
struct RandomInit {
  std::uint64_t seed;
};
/// Caller-supplied n x k start, e.g. to run several levels from one start.
struct ExplicitInit {
  Eigen::MatrixXd coords;
};
using MdsInit = std::variant<ClassicalInit, RandomInit, ExplicitInit>;

struct MdsConfig {
  int dimensions = 2;
  MeasurementLevel level = MeasurementLevel::Ratio;
  /// Overrides the kind stored in the input matrix.
  std::optional<ProximityKind> kind_override;
  MdsInit init = ClassicalInit{};
  int max_iterations = 1000;
  /// Convergence threshold on the per-iteration decrease of stress.
  double epsilon = 1e-6;
};

/// Optimally transformed proximities on the dissimilarity scale.
struct Disparities {
  Eigen::MatrixXd values;  // symmetric, zero diagonal, NaN where missing
};

struct Configuration {
  Labels labels;
  Eigen::MatrixXd coords;  // n x k, column means zero
  double stress = 0.0;
  int iterations_used = 0;
  bool converged = false;
  /// Stress after the initial fit, then after every iteration.
  std::vector<double> stress_history;
  Disparities disparities;
};

/// Throws Error(DimensionTooLarge) if dimensions >= n, Error(DegenerateInput)
/// if every usable dissimilarity is zero or missing values disconnect the
/// points, Error(InvalidArgument) for a bad config.
Configuration mds(const ProximityMatrix& p, const MdsConfig& cfg = {});

/// Weighted least-squares monotone (non-decreasing along `order`) fit to
/// `values` by pool-adjacent-violators.
///
/// `order` lists indices into `values` from smallest to largest proximity;
/// the result is indexed like `values`. Empty `weights` means unit weights.
std::vector<double> monotone_regression(std::span<const double> values, std::span<const std::size_t> order,
                                        std::span<const double> weights = {});

/// Torgerson scaling: top-k eigenvectors of -1/2 J D^2 J scaled by the root
/// of their eigenvalues (negative eigenvalues clamp to 0).
Eigen::MatrixXd classical_init(const Eigen::MatrixXd& dissimilarities, int dimensions);

/// Pairwise Euclidean distances between the rows of `coords`.
Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& coords);

/// Normalized raw stress of `coords` against `disparities` (weights: 0 on the
/// diagonal and NaN cells, 1 elsewhere).
double normalized_raw_stress(const Eigen::MatrixXd& disparities, const Eigen::MatrixXd& coords);

struct ProcrustesResult {
  Eigen::MatrixXd aligned;   // Y after translation, rotation/reflection and scale
  Eigen::MatrixXd rotation;  // k x k orthogonal
  double scale = 1.0;
  double congruence = 0.0;   // 1 - residual / total sum of squares of centered X
};

/// Aligns `y` onto `x`. Throws Error(DegenerateConfiguration) if either has
/// zero variance, Error(InvalidArgument) on shape mismatch.
ProcrustesResult procrustes_align(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

}  // namespace cocite
