#pragma once

// Matrix families used throughout the toolkit.
//
// An OccurrenceMatrix is the asymmetric documents x attributes table
// (citing papers x cited authors). A CooccurrenceMatrix is the symmetric
// attributes x attributes count table derived from it. A ProximityMatrix is
// any symmetric real matrix that can be mapped directly, tagged with whether
// larger values mean "closer" (similarity) or "further" (dissimilarity).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace cocite {

using Count = std::uint64_t;
using CountMatrix = Eigen::Matrix<Count, Eigen::Dynamic, Eigen::Dynamic>;
using Labels = std::vector<std::string>;

enum class DiagonalPolicy { Raw, Zeroed };
enum class ProximityKind { Similarity, Dissimilarity };
enum class MeasurementLevel { Ratio, Interval, Ordinal };

std::string_view to_string(DiagonalPolicy p) noexcept;
std::string_view to_string(ProximityKind k) noexcept;
std::string_view to_string(MeasurementLevel l) noexcept;

/// Documents x attributes count table. Immutable once constructed.
class OccurrenceMatrix {
 public:
  /// Throws Error(InvalidMatrix) unless there is at least one document, at
  /// least two attributes, label lists are duplicate-free and match the
  /// data shape.
  OccurrenceMatrix(Labels documents, Labels attributes, CountMatrix counts);

  const Labels& documents() const noexcept { return documents_; }
  const Labels& attributes() const noexcept { return attributes_; }
  const CountMatrix& counts() const noexcept { return counts_; }

  Eigen::Index n_documents() const noexcept { return counts_.rows(); }
  Eigen::Index n_attributes() const noexcept { return counts_.cols(); }
  Count operator()(Eigen::Index doc, Eigen::Index attr) const { return counts_(doc, attr); }

  /// Counts as doubles, for the correlation-style measures.
  Eigen::MatrixXd as_real() const { return counts_.cast<double>(); }

  friend bool operator==(const OccurrenceMatrix& a, const OccurrenceMatrix& b);

 private:
  Labels documents_;
  Labels attributes_;
  CountMatrix counts_;
};

/// Symmetric attribute x attribute counts.
class CooccurrenceMatrix {
 public:
  /// Throws Error(InvalidMatrix) if the data is not square, not exactly
  /// symmetric, or has a non-zero diagonal under DiagonalPolicy::Zeroed.
  CooccurrenceMatrix(Labels labels, CountMatrix counts, DiagonalPolicy policy);

  const Labels& labels() const noexcept { return labels_; }
  const CountMatrix& counts() const noexcept { return counts_; }
  DiagonalPolicy diagonal_policy() const noexcept { return policy_; }
  Eigen::Index size() const noexcept { return counts_.rows(); }
  Count operator()(Eigen::Index i, Eigen::Index j) const { return counts_(i, j); }

  friend bool operator==(const CooccurrenceMatrix& a, const CooccurrenceMatrix& b);

 private:
  Labels labels_;
  CountMatrix counts_;
  DiagonalPolicy policy_;
};

/// Symmetric real proximities. NaN marks a missing proximity; it must be
/// NaN on both sides of the diagonal and receives zero weight in MDS.
class ProximityMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  /// Throws Error(InvalidMatrix) on asymmetry beyond kSymmetryTolerance, or
  /// for dissimilarities with a non-zero diagonal or negative entries.
  ProximityMatrix(Labels labels, Eigen::MatrixXd values, ProximityKind kind,
                  MeasurementLevel level = MeasurementLevel::Ratio);

  const Labels& labels() const noexcept { return labels_; }
  const Eigen::MatrixXd& values() const noexcept { return values_; }
  ProximityKind kind() const noexcept { return kind_; }
  MeasurementLevel level() const noexcept { return level_; }
  Eigen::Index size() const noexcept { return values_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

  ProximityMatrix with_level(MeasurementLevel level) const;
  /// Reinterprets the same numbers under another kind; validation reruns.
  ProximityMatrix with_kind(ProximityKind kind) const;

  friend bool operator==(const ProximityMatrix& a, const ProximityMatrix& b);

 private:
  Labels labels_;
  Eigen::MatrixXd values_;
  ProximityKind kind_;
  MeasurementLevel level_;
};

/// Number of documents in which both attributes occur (count > 0). The
/// diagonal holds the number of documents containing the attribute under
/// DiagonalPolicy::Raw and zero otherwise.
CooccurrenceMatrix cooccurrence(const OccurrenceMatrix& a,
                                DiagonalPolicy policy = DiagonalPolicy::Raw);

/// Raw-count product sums, A^T A. Throws Error(Overflow) rather than wrap.
CooccurrenceMatrix affiliations(const OccurrenceMatrix& a);

/// 0/1 indicator of positive entries; diagonal policy preserved.
CooccurrenceMatrix binarize(const CooccurrenceMatrix& m);

/// Co-occurrence counts viewed as a similarity proximity matrix.
ProximityMatrix as_similarity(const CooccurrenceMatrix& m,
                              MeasurementLevel level = MeasurementLevel::Ratio);

}  // namespace cocite
