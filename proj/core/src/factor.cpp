#include "cocite/factor.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "cocite/error.hpp"
#include "cocite/linalg.hpp"
#include "cocite/proximity.hpp"

namespace cocite {

std::string_view to_string(Rotation r) noexcept { return r == Rotation::Varimax ? "varimax" : "none"; }

LoadingsMatrix pca_from_correlation(const ProximityMatrix& correlation, std::optional<int> n_factors) {
  const auto p = correlation.size();
  if (correlation.values().hasNaN()) throw Error(ErrorCode::InvalidArgument, "correlation matrix has missing cells");
  const auto eig = eigen_symmetric(correlation.values());

  int m = 0;
  if (n_factors) {
    m = *n_factors;
    if (m < 1 || m > p) {
      throw Error(ErrorCode::InvalidArgument,
                  "factor count " + std::to_string(m) + " outside [1, " + std::to_string(p) + "]");
    }
  } else {
    for (Eigen::Index k = 0; k < p; ++k) m += eig.values(k) > 1.0 ? 1 : 0;
    m = std::max(m, 1);
  }

  LoadingsMatrix out;
  out.variable_labels = correlation.labels();
  out.eigenvalues = eig.values;
  out.loadings.resize(p, m);
  const double trace = correlation.values().trace();
  for (int j = 0; j < m; ++j) {
    const double lambda = std::max(eig.values(j), 0.0);
    out.loadings.col(j) = eig.vectors.col(j) * std::sqrt(lambda);
    normalize_sign(out.loadings.col(j));
    out.explained_variance_pct.push_back(100.0 * eig.values(j) / trace);
  }
  out.rotation_matrix = Eigen::MatrixXd::Identity(m, m);
  out.criterion_history.push_back(varimax_criterion(out.loadings));
  return out;
}

LoadingsMatrix pca_from_occurrence(const OccurrenceMatrix& a, std::optional<int> n_factors) {
  return pca_from_correlation(pearson_columns(a), n_factors);
}

double varimax_criterion(const Eigen::MatrixXd& loadings) {
  const auto p = static_cast<double>(loadings.rows());
  double total = 0.0;
  for (Eigen::Index j = 0; j < loadings.cols(); ++j) {
    const Eigen::ArrayXd sq = loadings.col(j).array().square();
    const double mean_sq = sq.sum() / p;
    total += sq.square().sum() / p - mean_sq * mean_sq;
  }
  return total;
}

LoadingsMatrix varimax(const LoadingsMatrix& l, const VarimaxOptions& opts) {
  const auto p = l.n_variables();
  const auto m = l.n_factors();
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "varimax needs at least two factors");

  Eigen::VectorXd row_norm = Eigen::VectorXd::Ones(p);
  Eigen::MatrixXd x = l.loadings;
  if (opts.kaiser_normalize) {
    for (Eigen::Index i = 0; i < p; ++i) {
      const double h = x.row(i).norm();
      if (h > 0.0) {
        row_norm(i) = h;
        x.row(i) /= h;
      }
    }
  }

  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(m, m);
  const double np = static_cast<double>(p);
  std::vector<double> history{varimax_criterion(x)};
  int sweeps = 0;
  bool converged = false;

  while (!converged) {
    if (sweeps >= opts.max_sweeps) {
      throw Error(ErrorCode::NoConvergence,
                  "varimax did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
    }
    ++sweeps;
    for (Eigen::Index j = 0; j < m - 1; ++j) {
      for (Eigen::Index k = j + 1; k < m; ++k) {
        double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
        for (Eigen::Index i = 0; i < p; ++i) {
          const double u = x(i, j) * x(i, j) - x(i, k) * x(i, k);
          const double v = 2.0 * x(i, j) * x(i, k);
          a += u;
          b += v;
          c += u * u - v * v;
          d += 2.0 * u * v;
        }
        const double num = d - 2.0 * a * b / np;
        const double den = c - (a * a - b * b) / np;
        if (std::abs(num) <= 1e-15 * std::max(1.0, std::abs(den)) && den >= 0.0) continue;
        const double phi = 0.25 * std::atan2(num, den);
        const double cs = std::cos(phi);
        const double sn = std::sin(phi);
        for (Eigen::Index i = 0; i < p; ++i) {
          const double xj = x(i, j);
          const double xk = x(i, k);
          x(i, j) = cs * xj + sn * xk;
          x(i, k) = -sn * xj + cs * xk;
        }
        for (Eigen::Index r = 0; r < m; ++r) {
          const double tj = t(r, j);
          const double tk = t(r, k);
          t(r, j) = cs * tj + sn * tk;
          t(r, k) = -sn * tj + cs * tk;
        }
      }
    }
    history.push_back(varimax_criterion(x));
    converged = std::abs(history.back() - history[history.size() - 2]) < opts.tolerance;
  }

  if (opts.kaiser_normalize) {
    for (Eigen::Index i = 0; i < p; ++i) x.row(i) *= row_norm(i);
  }

  LoadingsMatrix out = l;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (normalize_sign(x.col(j))) t.col(j) = -t.col(j);
  }
  out.loadings = x;
  out.rotation = Rotation::Varimax;
  out.rotation_iterations = sweeps;
  out.rotation_matrix = l.rotation_matrix.size() == m * m ? Eigen::MatrixXd(l.rotation_matrix * t) : t;
  out.criterion_history = std::move(history);
  out.explained_variance_pct.clear();
  for (Eigen::Index j = 0; j < m; ++j) out.explained_variance_pct.push_back(100.0 * x.col(j).squaredNorm() / np);
  return out;
}

Eigen::MatrixXd factor_scatter_coords(const LoadingsMatrix& l, int dims) {
  if (dims != 2 && dims != 3) throw Error(ErrorCode::InvalidArgument, "factor plots use 2 or 3 dimensions");
  if (l.n_factors() < dims) {
    throw Error(ErrorCode::InvalidArgument, "need at least " + std::to_string(dims) + " factors to plot");
  }
  return l.loadings.leftCols(dims);
}

void write_loadings_csv(std::ostream& out, const LoadingsMatrix& l) {
  out << "variable";
  for (Eigen::Index j = 0; j < l.n_factors(); ++j) out << ",F" << (j + 1);
  out << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < l.n_variables(); ++i) {
    const auto& label = l.variable_labels[static_cast<std::size_t>(i)];
    if (label.find_first_of(",\"") != std::string::npos) {
      out << '"';
      for (char ch : label) out << (ch == '"' ? "\"\"" : std::string(1, ch));
      out << '"';
    } else {
      out << label;
    }
    for (Eigen::Index j = 0; j < l.n_factors(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", l.loadings(i, j));
      out << ',' << buf;
    }
    out << '\n';
  }
}

std::string format_loadings_table(const LoadingsMatrix& l, double threshold) {
  std::size_t width = 8;
  for (const auto& label : l.variable_labels) width = std::max(width, label.size());

  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "" << std::right;
  for (Eigen::Index j = 0; j < l.n_factors(); ++j) os << std::setw(9) << ("F" + std::to_string(j + 1));
  os << '\n';
  os << std::fixed << std::setprecision(3);
  for (Eigen::Index i = 0; i < l.n_variables(); ++i) {
    os << std::left << std::setw(static_cast<int>(width)) << l.variable_labels[static_cast<std::size_t>(i)]
       << std::right;
    for (Eigen::Index j = 0; j < l.n_factors(); ++j) {
      const double v = l.loadings(i, j);
      if (std::abs(v) < threshold) {
        os << std::setw(9) << "";
      } else {
        os << std::setw(9) << v;
      }
    }
    os << '\n';
  }
  os << '\n' << "Extraction: principal components. Rotation: " << to_string(l.rotation);
  if (l.rotation == Rotation::Varimax) os << " (converged in " << l.rotation_iterations << " sweeps)";
  os << ".\n";
  os << std::setprecision(2);
  for (Eigen::Index j = 0; j < l.n_factors(); ++j) {
    os << "F" << (j + 1) << ": eigenvalue " << std::setprecision(3) << l.eigenvalues(j) << ", "
       << std::setprecision(2) << l.explained_variance_pct[static_cast<std::size_t>(j)] << "% of variance\n";
  }
  return os.str();
}

}  // namespace cocite
