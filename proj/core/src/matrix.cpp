#include "cocite/matrix.hpp"

#include <cmath>
#include <unordered_set>

#include "cocite/error.hpp"

namespace cocite {

std::string_view to_string(DiagonalPolicy p) noexcept {
  return p == DiagonalPolicy::Raw ? "raw" : "zeroed";
}

std::string_view to_string(ProximityKind k) noexcept {
  return k == ProximityKind::Similarity ? "similarity" : "dissimilarity";
}

std::string_view to_string(MeasurementLevel l) noexcept {
  switch (l) {
    case MeasurementLevel::Ratio: return "ratio";
    case MeasurementLevel::Interval: return "interval";
    case MeasurementLevel::Ordinal: return "ordinal";
  }
  return "ratio";
}

namespace {

void require_unique(const Labels& labels, const char* what) {
  std::unordered_set<std::string_view> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw Error(ErrorCode::InvalidMatrix, std::string("duplicate ") + what + " label '" + l + "'");
    }
  }
}

void require_square(const Labels& labels, Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols) {
    throw Error(ErrorCode::InvalidMatrix, "matrix is " + std::to_string(rows) + "x" +
                                              std::to_string(cols) + ", expected square");
  }
  if (static_cast<Eigen::Index>(labels.size()) != rows) {
    throw Error(ErrorCode::InvalidMatrix, std::to_string(labels.size()) + " labels for " +
                                              std::to_string(rows) + " rows");
  }
  require_unique(labels, "matrix");
}

}  // namespace

OccurrenceMatrix::OccurrenceMatrix(Labels documents, Labels attributes, CountMatrix counts)
    : documents_(std::move(documents)), attributes_(std::move(attributes)), counts_(std::move(counts)) {
  if (counts_.rows() < 1) throw Error(ErrorCode::InvalidMatrix, "occurrence matrix needs at least one document");
  if (counts_.cols() < 2) throw Error(ErrorCode::InvalidMatrix, "occurrence matrix needs at least two attributes");
  if (static_cast<Eigen::Index>(documents_.size()) != counts_.rows() ||
      static_cast<Eigen::Index>(attributes_.size()) != counts_.cols()) {
    throw Error(ErrorCode::InvalidMatrix, "label count does not match data shape");
  }
  require_unique(documents_, "document");
  require_unique(attributes_, "attribute");
}

bool operator==(const OccurrenceMatrix& a, const OccurrenceMatrix& b) {
  return a.documents_ == b.documents_ && a.attributes_ == b.attributes_ &&
         a.counts_.rows() == b.counts_.rows() && a.counts_.cols() == b.counts_.cols() &&
         a.counts_ == b.counts_;
}

CooccurrenceMatrix::CooccurrenceMatrix(Labels labels, CountMatrix counts, DiagonalPolicy policy)
    : labels_(std::move(labels)), counts_(std::move(counts)), policy_(policy) {
  require_square(labels_, counts_.rows(), counts_.cols());
  const auto n = counts_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (policy_ == DiagonalPolicy::Zeroed && counts_(i, i) != 0) {
      throw Error(ErrorCode::InvalidMatrix, "non-zero diagonal under zeroed policy at '" + labels_[i] + "'");
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (counts_(i, j) != counts_(j, i)) {
        throw Error(ErrorCode::InvalidMatrix,
                    "co-occurrence counts not symmetric at (" + labels_[i] + ", " + labels_[j] + ")");
      }
    }
  }
}

bool operator==(const CooccurrenceMatrix& a, const CooccurrenceMatrix& b) {
  return a.labels_ == b.labels_ && a.policy_ == b.policy_ && a.counts_.rows() == b.counts_.rows() &&
         a.counts_ == b.counts_;
}

ProximityMatrix::ProximityMatrix(Labels labels, Eigen::MatrixXd values, ProximityKind kind,
                                 MeasurementLevel level)
    : labels_(std::move(labels)), values_(std::move(values)), kind_(kind), level_(level) {
  require_square(labels_, values_.rows(), values_.cols());
  const auto n = values_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double a = values_(i, j);
      const double b = values_(j, i);
      if (std::isnan(a) || std::isnan(b)) {
        if (std::isnan(a) != std::isnan(b)) {
          throw Error(ErrorCode::InvalidMatrix,
                      "missing value on one side only at (" + labels_[i] + ", " + labels_[j] + ")");
        }
        continue;
      }
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorCode::InvalidMatrix, "non-finite proximity at (" + labels_[i] + ", " + labels_[j] + ")");
      }
      if (std::abs(a - b) > kSymmetryTolerance) {
        throw Error(ErrorCode::InvalidMatrix,
                    "proximities not symmetric at (" + labels_[i] + ", " + labels_[j] + ")");
      }
      if (kind_ == ProximityKind::Dissimilarity && (a < 0.0 || b < 0.0)) {
        throw Error(ErrorCode::InvalidMatrix,
                    "negative dissimilarity at (" + labels_[i] + ", " + labels_[j] + ")");
      }
    }
    if (kind_ == ProximityKind::Dissimilarity && values_(i, i) != 0.0) {
      throw Error(ErrorCode::InvalidMatrix, "dissimilarity diagonal must be 0 at '" + labels_[i] + "'");
    }
  }
}

ProximityMatrix ProximityMatrix::with_level(MeasurementLevel level) const {
  ProximityMatrix copy = *this;
  copy.level_ = level;
  return copy;
}

ProximityMatrix ProximityMatrix::with_kind(ProximityKind kind) const {
  return ProximityMatrix(labels_, values_, kind, level_);
}

bool operator==(const ProximityMatrix& a, const ProximityMatrix& b) {
  if (a.labels_ != b.labels_ || a.kind_ != b.kind_ || a.level_ != b.level_ ||
      a.values_.rows() != b.values_.rows()) {
    return false;
  }
  for (Eigen::Index i = 0; i < a.values_.size(); ++i) {
    const double x = a.values_.data()[i];
    const double y = b.values_.data()[i];
    if (std::isnan(x) && std::isnan(y)) continue;
    if (x != y) return false;
  }
  return true;
}

CooccurrenceMatrix cooccurrence(const OccurrenceMatrix& a, DiagonalPolicy policy) {
  const auto docs = a.n_documents();
  const auto n = a.n_attributes();
  CountMatrix out = CountMatrix::Zero(n, n);
  for (Eigen::Index d = 0; d < docs; ++d) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (a(d, i) == 0) continue;
      if (policy == DiagonalPolicy::Raw) ++out(i, i);
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (a(d, j) > 0) ++out(i, j);
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) out(j, i) = out(i, j);
  }
  return CooccurrenceMatrix(a.attributes(), std::move(out), policy);
}

CooccurrenceMatrix affiliations(const OccurrenceMatrix& a) {
  const auto docs = a.n_documents();
  const auto n = a.n_attributes();
  CountMatrix out = CountMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      Count sum = 0;
      for (Eigen::Index d = 0; d < docs; ++d) {
        Count product = 0;
        if (__builtin_mul_overflow(a(d, i), a(d, j), &product) ||
            __builtin_add_overflow(sum, product, &sum)) {
          throw Error(ErrorCode::Overflow, "affiliation count for (" + a.attributes()[i] + ", " +
                                               a.attributes()[j] + ") exceeds 64 bits");
        }
      }
      out(i, j) = sum;
      out(j, i) = sum;
    }
  }
  return CooccurrenceMatrix(a.attributes(), std::move(out), DiagonalPolicy::Raw);
}

CooccurrenceMatrix binarize(const CooccurrenceMatrix& m) {
  CountMatrix out = m.counts().unaryExpr([](Count c) -> Count { return c > 0 ? 1 : 0; });
  return CooccurrenceMatrix(m.labels(), std::move(out), m.diagonal_policy());
}

ProximityMatrix as_similarity(const CooccurrenceMatrix& m, MeasurementLevel level) {
  return ProximityMatrix(m.labels(), m.counts().cast<double>(), ProximityKind::Similarity, level);
}

}  // namespace cocite
