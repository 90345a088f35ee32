#include "cocite/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cocite/error.hpp"

namespace cocite {

bool normalize_sign(Eigen::Ref<Eigen::VectorXd> v) {
  if (v.size() == 0) return false;
  Eigen::Index arg = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    // ties resolved toward the lower index so the choice is deterministic
    if (std::abs(v(i)) > std::abs(v(arg)) + 1e-12) arg = i;
  }
  if (v(arg) < 0.0) {
    v = -v;
    return true;
  }
  return false;
}

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) sum += 2.0 * a(i, j) * a(i, j);
  }
  return std::sqrt(sum);
}

}  // namespace

EigenDecomposition eigen_symmetric(const Eigen::MatrixXd& m, const JacobiOptions& opts) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "eigen_symmetric needs a square matrix");
  if (m.rows() == 0) throw Error(ErrorCode::InvalidArgument, "eigen_symmetric: empty matrix");
  const Eigen::Index n = m.rows();
  const double scale = m.norm();
  if (!std::isfinite(scale)) throw Error(ErrorCode::InvalidArgument, "eigen_symmetric: non-finite entries");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, scale)) {
    throw Error(ErrorCode::InvalidArgument, "eigen_symmetric: matrix is not symmetric");
  }

  Eigen::MatrixXd a = 0.5 * (m + m.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double threshold = opts.off_diagonal_tolerance * std::max(scale, 1e-300);

  int sweep = 0;
  for (;; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) break;
    if (sweep >= opts.max_sweeps) {
      throw Error(ErrorCode::NoConvergence,
                  "Jacobi eigensolver did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - s * arq;
          a(r, q) = a(q, r) = s * arp + c * arq;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x) > a(y, y); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  out.sweeps = sweep;
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src);
    out.vectors.col(k) = v.col(src);
    normalize_sign(out.vectors.col(k));
  }
  return out;
}

}  // namespace cocite
