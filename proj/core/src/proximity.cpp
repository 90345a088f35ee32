#include "cocite/proximity.hpp"

#include <algorithm>
#include <cmath>

#include "cocite/error.hpp"

namespace cocite {

std::string_view to_string(SimilarityMeasure m) noexcept {
  switch (m) {
    case SimilarityMeasure::Pearson: return "pearson";
    case SimilarityMeasure::PearsonShifted: return "pearson_shifted";
    case SimilarityMeasure::Cosine: return "cosine";
    case SimilarityMeasure::Jaccard: return "jaccard";
  }
  return "pearson";
}

namespace {

// Correlation between the columns of `x`. Columns are centered and scaled to
// unit length, so the correlation is a plain dot product.
Eigen::MatrixXd column_correlations(const Eigen::MatrixXd& x, const Labels& labels) {
  const auto rows = static_cast<double>(x.rows());
  Eigen::MatrixXd z = x;
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    const double mean = z.col(j).sum() / rows;
    z.col(j).array() -= mean;
    const double norm = z.col(j).norm();
    // relative test: a column of large equal values centers to roundoff
    const double scale = x.col(j).cwiseAbs().maxCoeff();
    if (norm == 0.0 || norm <= 1e-12 * scale * std::sqrt(rows)) {
      throw Error(ErrorCode::ZeroVarianceColumn, "column '" + labels[static_cast<std::size_t>(j)] + "' is constant");
    }
    z.col(j) /= norm;
  }
  Eigen::MatrixXd r = z.transpose() * z;
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    r(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < r.cols(); ++j) {
      const double v = std::clamp(0.5 * (r(i, j) + r(j, i)), -1.0, 1.0);
      r(i, j) = v;
      r(j, i) = v;
    }
  }
  return r;
}

}  // namespace

ProximityMatrix pearson_columns(const OccurrenceMatrix& a) {
  return ProximityMatrix(a.attributes(), column_correlations(a.as_real(), a.attributes()),
                         ProximityKind::Similarity, MeasurementLevel::Ratio);
}

ProximityMatrix shift_pearson(const ProximityMatrix& r) {
  Eigen::MatrixXd out = r.values();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    double& v = out.data()[i];
    if (std::isnan(v)) continue;
    if (std::abs(v) > 1.0 + 1e-12) {
      throw Error(ErrorCode::OutOfRange, "correlation " + std::to_string(v) + " outside [-1, 1]");
    }
    v = (std::clamp(v, -1.0, 1.0) + 1.0) / 2.0;
  }
  out.diagonal().setOnes();
  return ProximityMatrix(r.labels(), std::move(out), ProximityKind::Similarity, r.level());
}

ProximityMatrix cosine_columns(const OccurrenceMatrix& a) {
  Eigen::MatrixXd x = a.as_real();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double norm = x.col(j).norm();
    if (norm == 0.0) {
      throw Error(ErrorCode::ZeroNormColumn, "column '" + a.attributes()[static_cast<std::size_t>(j)] + "' is all zero");
    }
    x.col(j) /= norm;
  }
  Eigen::MatrixXd c = x.transpose() * x;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    c(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < c.cols(); ++j) {
      const double v = std::clamp(0.5 * (c(i, j) + c(j, i)), -1.0, 1.0);
      c(i, j) = v;
      c(j, i) = v;
    }
  }
  return ProximityMatrix(a.attributes(), std::move(c), ProximityKind::Similarity, MeasurementLevel::Ratio);
}

ProximityMatrix jaccard_columns(const OccurrenceMatrix& a, std::vector<std::string>* empty_columns) {
  const auto n = a.n_attributes();
  const auto docs = a.n_documents();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  std::vector<Eigen::Index> support(static_cast<std::size_t>(n), 0);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index d = 0; d < docs; ++d) support[static_cast<std::size_t>(j)] += a(d, j) > 0 ? 1 : 0;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (support[static_cast<std::size_t>(i)] == 0) {
      if (empty_columns != nullptr) empty_columns->push_back(a.attributes()[static_cast<std::size_t>(i)]);
    } else {
      out(i, i) = 1.0;
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Eigen::Index both = 0;
      for (Eigen::Index d = 0; d < docs; ++d) both += (a(d, i) > 0 && a(d, j) > 0) ? 1 : 0;
      const auto either = support[static_cast<std::size_t>(i)] + support[static_cast<std::size_t>(j)] - both;
      const double v = either == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(either);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return ProximityMatrix(a.attributes(), std::move(out), ProximityKind::Similarity, MeasurementLevel::Ratio);
}

ProximityMatrix euclidean_columns(const OccurrenceMatrix& a) {
  const Eigen::MatrixXd x = a.as_real();
  const auto n = x.cols();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (x.col(i) - x.col(j)).norm();
      out(i, j) = d;
      out(j, i) = d;
    }
  }
  return ProximityMatrix(a.attributes(), std::move(out), ProximityKind::Dissimilarity, MeasurementLevel::Ratio);
}

ProximityMatrix to_dissimilarity(const ProximityMatrix& s, std::optional<double> constant) {
  if (s.kind() != ProximityKind::Similarity) {
    throw Error(ErrorCode::InvalidArgument, "to_dissimilarity expects a similarity matrix");
  }
  const Eigen::MatrixXd& v = s.values();
  double c = 0.0;
  if (constant) {
    c = *constant;
  } else {
    bool any = false;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double x = v.data()[i];
      if (std::isnan(x)) continue;
      c = any ? std::max(c, x) : x;
      any = true;
    }
  }
  const auto n = v.rows();
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double x = 0.5 * (v(i, j) + v(j, i));
      double d = c - x;
      if (!std::isnan(d) && d < 0.0) {
        throw Error(ErrorCode::NegativeResult, "constant " + std::to_string(c) + " is below similarity " +
                                                   std::to_string(x) + " at (" + s.labels()[i] + ", " +
                                                   s.labels()[j] + ")");
      }
      out(i, j) = d;
      out(j, i) = d;
    }
  }
  return ProximityMatrix(s.labels(), std::move(out), ProximityKind::Dissimilarity, s.level());
}

ProximityMatrix pearson_of_proximities(const ProximityMatrix& p) {
  if (p.values().hasNaN()) {
    throw Error(ErrorCode::InvalidArgument, "pearson_of_proximities needs a complete matrix");
  }
  return ProximityMatrix(p.labels(), column_correlations(p.values(), p.labels()), ProximityKind::Similarity,
                         MeasurementLevel::Ratio);
}

}  // namespace cocite
