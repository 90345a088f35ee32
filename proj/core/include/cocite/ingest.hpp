#pragma once

// Text formats.
//
// Records (one citing document per line):
//
//   doc_id<TAB>label[:count](;label[:count])*
//
// '#' lines are comments, counts default to 1 and repeated labels within a
// line accumulate. Columns come out as the sorted distinct labels, rows in
// file order. Labels are trimmed and case-sensitive; they cannot contain
// ';', ':' or tabs. A document with no attributes is written as "doc_id<TAB>".
//
// Square matrices (CSV): a header row of labels after a corner cell, then
// one row per label starting with the same label. Blank or "." cells are
// filled from the transposed cell, so a lower triangle is enough. Labels
// containing commas or quotes are double-quoted. Both "\n" and "\r\n" are
// accepted; "\n" is written.

#include <string>
#include <string_view>
#include <variant>

#include "cocite/matrix.hpp"

namespace cocite {

/// Throws ParseError (MalformedLine, DuplicateDocId, NegativeCount) carrying
/// the offending line number.
OccurrenceMatrix parse_records(std::string_view text);
std::string serialize_records(const OccurrenceMatrix& a);

/// Throws ParseError(MalformedLine), Error(LabelMismatch),
/// Error(AsymmetricInput) when both triangles are given and differ by more
/// than 1e-9, and Error(InvalidMatrix) if the values break the kind's rules.
/// Cells missing from both triangles become NaN (missing).
ProximityMatrix parse_square_matrix(std::string_view text, ProximityKind kind,
                                    MeasurementLevel level = MeasurementLevel::Ratio);
std::string serialize_square_matrix(const ProximityMatrix& p);

/// Same CSV layout with non-negative integer cells; a blank diagonal reads as
/// 0. A corner cell of "diagonal:raw" or "diagonal:zeroed" sets the diagonal
/// policy; without one it is Zeroed when every diagonal cell is 0, Raw
/// otherwise. Off-diagonal cells may not be missing from both triangles.
CooccurrenceMatrix parse_cooccurrence_csv(std::string_view text);
std::string serialize_cooccurrence_csv(const CooccurrenceMatrix& m);

using Dataset = std::variant<OccurrenceMatrix, CooccurrenceMatrix, ProximityMatrix>;

/// Flying mileages between ten American cities (dissimilarity, ratio).
ProximityMatrix cities_dataset();
/// Four-paper co-citation counts, blank diagonal (zeroed policy).
CooccurrenceMatrix figure1_dataset();
/// Five citing documents d1..d5 x cited papers A..D, binary.
OccurrenceMatrix figure2_dataset();

/// "cities", "figure1" or "figure2"; Error(UnknownDataset) otherwise.
Dataset builtin_dataset(std::string_view name);

}  // namespace cocite
