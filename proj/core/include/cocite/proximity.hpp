#pragma once

// Proximity measures derived from an occurrence matrix, plus the
// similarity/dissimilarity conversion.
//
// Column-wise measures treat each attribute (column) as a variable observed
// over the documents (rows). Pearson uses the population form; the ratio is
// identical to the sample form.

#include <optional>
#include <string_view>
#include <vector>

#include "cocite/matrix.hpp"

namespace cocite {

enum class SimilarityMeasure { Pearson, PearsonShifted, Cosine, Jaccard };

std::string_view to_string(SimilarityMeasure m) noexcept;

/// Pearson r between every pair of columns; unit diagonal.
/// Throws Error(ZeroVarianceColumn) naming the first constant column.
ProximityMatrix pearson_columns(const OccurrenceMatrix& a);

/// Maps correlations to [0, 1] via (r + 1) / 2. The diagonal is set to 1.
/// Throws Error(OutOfRange) if any |r| > 1 + 1e-12.
ProximityMatrix shift_pearson(const ProximityMatrix& r);

/// Cosine of the angle between columns. Throws Error(ZeroNormColumn).
ProximityMatrix cosine_columns(const OccurrenceMatrix& a);

/// Jaccard index of column supports (count > 0). A column with empty support
/// gets 0 everywhere, including its diagonal; its label is appended to
/// `empty_columns` when provided.
ProximityMatrix jaccard_columns(const OccurrenceMatrix& a, std::vector<std::string>* empty_columns = nullptr);

/// Euclidean distance between columns (dissimilarity).
ProximityMatrix euclidean_columns(const OccurrenceMatrix& a);

/// dissimilarity = constant - similarity off the diagonal, 0 on it.
///
/// With no constant the largest entry of `s` (diagonal included) is used,
/// which keeps every result non-negative. Throws Error(InvalidArgument) if
/// `s` is already a dissimilarity and Error(NegativeResult) if a fixed
/// constant is below some similarity. Missing (NaN) entries stay missing.
ProximityMatrix to_dissimilarity(const ProximityMatrix& s, std::optional<double> constant = std::nullopt);

/// Pearson correlation between the columns of a proximity matrix, diagonal
/// cells included as data.
///
/// This exists to demonstrate a mistake: a proximity matrix is already fit
/// for mapping, and correlating its columns distorts the representation (the
/// ten-city mileage map loses its geography). Use it for comparison only.
ProximityMatrix pearson_of_proximities(const ProximityMatrix& p);

}  // namespace cocite
