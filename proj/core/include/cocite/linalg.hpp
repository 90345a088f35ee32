#pragma once

#include <Eigen/Core>

namespace cocite {

struct EigenDecomposition {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // column i pairs with values(i), orthonormal
  int sweeps = 0;
};

struct JacobiOptions {
  double off_diagonal_tolerance = 1e-12;  // relative to the Frobenius norm
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Each eigenvector is sign-normalized so its largest-magnitude component is
/// positive. Throws Error(InvalidArgument) if `m` is empty, not square or not
/// symmetric within 1e-10 (relative), Error(NoConvergence) if the
/// off-diagonal mass is still above tolerance after `max_sweeps`.
EigenDecomposition eigen_symmetric(const Eigen::MatrixXd& m, const JacobiOptions& opts = {});

/// Flips `v` so its largest-magnitude entry is positive. Returns true if it
/// flipped.
bool normalize_sign(Eigen::Ref<Eigen::VectorXd> v);

}  // namespace cocite
