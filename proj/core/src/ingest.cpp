#include "cocite/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <unordered_set>

#include "cocite/error.hpp"
#include "text_util.hpp"

namespace cocite {

namespace {

using detail::trim;

std::optional<Count> parse_count(std::string_view s, std::size_t line_no) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '-') {
    const auto digits = s.substr(1);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError(ErrorCode::NegativeCount, line_no, "negative count " + std::string(s));
    }
    return std::nullopt;
  }
  Count value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

OccurrenceMatrix parse_records(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::vector<std::string> docs;
  std::vector<std::map<std::string, Count>> rows;
  std::unordered_set<std::string> seen_docs;

  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::size_t line_no = ln + 1;
    const std::string_view raw = lines[ln];
    const std::string_view stripped = trim(raw);
    if (stripped.empty() || stripped.front() == '#') continue;

    const auto tab = raw.find('\t');
    if (tab == std::string_view::npos) throw ParseError(ErrorCode::MalformedLine, line_no, "missing tab after doc id");
    const std::string doc(trim(raw.substr(0, tab)));
    if (doc.empty()) throw ParseError(ErrorCode::MalformedLine, line_no, "empty doc id");
    if (!seen_docs.insert(doc).second) throw ParseError(ErrorCode::DuplicateDocId, line_no, "doc id '" + doc + "'");

    std::map<std::string, Count> row;
    const std::string_view rest = trim(raw.substr(tab + 1));
    if (!rest.empty()) {
      std::size_t start = 0;
      while (start <= rest.size()) {
        auto end = rest.find(';', start);
        if (end == std::string_view::npos) end = rest.size();
        const std::string_view item = trim(rest.substr(start, end - start));
        if (item.empty()) throw ParseError(ErrorCode::MalformedLine, line_no, "empty attribute entry");
        if (item.find('\t') != std::string_view::npos) {
          throw ParseError(ErrorCode::MalformedLine, line_no, "tab inside attribute list");
        }

        std::string_view label = item;
        Count count = 1;
        const auto colon = item.rfind(':');
        if (colon != std::string_view::npos) {
          label = trim(item.substr(0, colon));
          const auto parsed = parse_count(trim(item.substr(colon + 1)), line_no);
          if (!parsed) throw ParseError(ErrorCode::MalformedLine, line_no, "bad count in '" + std::string(item) + "'");
          count = *parsed;
          if (label.find(':') != std::string_view::npos) {
            throw ParseError(ErrorCode::MalformedLine, line_no, "label may not contain ':'");
          }
        }
        if (label.empty()) throw ParseError(ErrorCode::MalformedLine, line_no, "empty attribute label");

        Count& cell = row[std::string(label)];
        if (__builtin_add_overflow(cell, count, &cell)) {
          throw ParseError(ErrorCode::MalformedLine, line_no, "count overflow for '" + std::string(label) + "'");
        }
        if (end == rest.size()) break;
        start = end + 1;
      }
    }
    docs.push_back(doc);
    rows.push_back(std::move(row));
  }

  std::map<std::string, Eigen::Index> columns;
  for (const auto& row : rows) {
    for (const auto& [label, count] : row) columns.emplace(label, 0);
  }
  Labels attributes;
  attributes.reserve(columns.size());
  for (auto& [label, index] : columns) {
    index = static_cast<Eigen::Index>(attributes.size());
    attributes.push_back(label);
  }

  CountMatrix counts = CountMatrix::Zero(static_cast<Eigen::Index>(docs.size()), static_cast<Eigen::Index>(attributes.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [label, count] : rows[r]) counts(static_cast<Eigen::Index>(r), columns.at(label)) = count;
  }
  try {
    return OccurrenceMatrix(std::move(docs), std::move(attributes), std::move(counts));
  } catch (const Error& e) {
    throw ParseError(ErrorCode::MalformedLine, std::max<std::size_t>(lines.size(), 1), e.detail());
  }
}

std::string serialize_records(const OccurrenceMatrix& a) {
  for (const auto& l : a.attributes()) {
    if (l.find_first_of(";:\t\r\n") != std::string::npos || trim(l) != l || l.empty()) {
      throw Error(ErrorCode::InvalidArgument, "label '" + l + "' cannot be written in record format");
    }
  }
  std::string out;
  for (Eigen::Index d = 0; d < a.n_documents(); ++d) {
    const auto& doc = a.documents()[static_cast<std::size_t>(d)];
    if (doc.find_first_of("\t\r\n") != std::string::npos || trim(doc) != doc || doc.empty() || doc.front() == '#') {
      throw Error(ErrorCode::InvalidArgument, "doc id '" + doc + "' cannot be written in record format");
    }
    out += doc;
    out += '\t';
    bool first = true;
    for (Eigen::Index j = 0; j < a.n_attributes(); ++j) {
      const Count c = a(d, j);
      // an all-zero column still has to appear once to survive a round trip
      const bool must_declare = d == 0 && a.counts().col(j).isZero();
      if (c == 0 && !must_declare) continue;
      if (!first) out += ';';
      first = false;
      out += a.attributes()[static_cast<std::size_t>(j)];
      if (c != 1) {
        out += ':';
        out += std::to_string(c);
      }
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_row(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && trim(field).empty()) {
      field.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else if (was_quoted) {
      if (c != ' ' && c != '\t') throw ParseError(ErrorCode::MalformedLine, line_no, "text after closing quote");
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError(ErrorCode::MalformedLine, line_no, "unterminated quote");
  fields.push_back(was_quoted ? field : std::string(trim(field)));
  return fields;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos && trim(s) == s) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct SquareTable {
  std::string corner;
  Labels labels;
  // NaN marks a blank cell
  Eigen::MatrixXd cells;
  std::vector<std::size_t> row_lines;
};

SquareTable read_square_table(std::string_view text) {
  const auto lines = detail::split_lines(text);
  SquareTable t;
  std::size_t ln = 0;
  auto next_line = [&]() -> std::optional<std::string_view> {
    while (ln < lines.size()) {
      const auto l = lines[ln++];
      const auto s = trim(l);
      if (!s.empty() && s.front() != '#') return l;
    }
    return std::nullopt;
  };

  const auto head = next_line();
  if (!head) throw ParseError(ErrorCode::MalformedLine, 1, "missing header row");
  const std::size_t header_line = ln;
  auto header = split_csv_row(*head, header_line);
  if (header.size() < 2) throw ParseError(ErrorCode::MalformedLine, header_line, "header has no labels");
  t.corner = header.front();
  t.labels.assign(header.begin() + 1, header.end());
  for (const auto& l : t.labels) {
    if (l.empty()) throw ParseError(ErrorCode::MalformedLine, header_line, "empty label in header");
  }
  const auto n = static_cast<Eigen::Index>(t.labels.size());
  t.cells = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::quiet_NaN());

  Eigen::Index r = 0;
  while (const auto line = next_line()) {
    const std::size_t line_no = ln;
    const auto fields = split_csv_row(*line, line_no);
    if (r >= n) throw Error(ErrorCode::LabelMismatch, "more rows than header labels (line " + std::to_string(line_no) + ")");
    if (fields.front() != t.labels[static_cast<std::size_t>(r)]) {
      throw Error(ErrorCode::LabelMismatch, "row label '" + fields.front() + "' on line " + std::to_string(line_no) +
                                                " does not match column label '" +
                                                t.labels[static_cast<std::size_t>(r)] + "'");
    }
    if (static_cast<Eigen::Index>(fields.size()) - 1 > n) {
      throw ParseError(ErrorCode::MalformedLine, line_no, "more cells than labels");
    }
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const std::string& cell = fields[c];
      if (cell.empty() || cell == ".") continue;
      double v = 0.0;
      if (!detail::parse_double(cell, v) || !std::isfinite(v)) {
        throw ParseError(ErrorCode::MalformedLine, line_no, "bad number '" + cell + "'");
      }
      t.cells(r, static_cast<Eigen::Index>(c - 1)) = v;
    }
    t.row_lines.push_back(line_no);
    ++r;
  }
  if (r != n) {
    throw Error(ErrorCode::LabelMismatch, std::to_string(r) + " rows for " + std::to_string(n) + " labels");
  }
  return t;
}

// Fills blanks from the transposed cell; blank diagonal becomes 0.
Eigen::MatrixXd complete_symmetric(const SquareTable& t) {
  Eigen::MatrixXd m = t.cells;
  const auto n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::isnan(m(i, i))) m(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double a = m(i, j);
      const double b = m(j, i);
      if (!std::isnan(a) && !std::isnan(b)) {
        if (std::abs(a - b) > 1e-9) {
          throw Error(ErrorCode::AsymmetricInput, "(" + t.labels[static_cast<std::size_t>(i)] + ", " +
                                                      t.labels[static_cast<std::size_t>(j)] +
                                                      ") delta " + detail::format_double(a - b));
        }
        m(j, i) = a;
      } else if (!std::isnan(a)) {
        m(j, i) = a;
      } else if (!std::isnan(b)) {
        m(i, j) = b;
      }
    }
  }
  return m;
}

template <typename Cell>
std::string serialize_square(std::string_view corner, const Labels& labels, Eigen::Index n, Cell cell) {
  std::string out(corner);
  for (const auto& l : labels) {
    out += ',';
    out += csv_field(l);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < n; ++i) {
    out += csv_field(labels[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < n; ++j) {
      out += ',';
      out += cell(i, j);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

ProximityMatrix parse_square_matrix(std::string_view text, ProximityKind kind, MeasurementLevel level) {
  const auto table = read_square_table(text);
  return ProximityMatrix(table.labels, complete_symmetric(table), kind, level);
}

std::string serialize_square_matrix(const ProximityMatrix& p) {
  return serialize_square("", p.labels(), p.size(), [&](Eigen::Index i, Eigen::Index j) {
    const double v = p(i, j);
    return std::isnan(v) ? std::string() : detail::format_double(v);
  });
}

CooccurrenceMatrix parse_cooccurrence_csv(std::string_view text) {
  const auto table = read_square_table(text);
  const Eigen::MatrixXd m = complete_symmetric(table);
  const auto n = m.rows();
  CountMatrix counts(n, n);
  bool zero_diagonal = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = m(i, j);
      const std::size_t line = table.row_lines[static_cast<std::size_t>(i)];
      if (std::isnan(v)) throw ParseError(ErrorCode::MalformedLine, line, "missing co-occurrence count");
      if (v < 0.0) throw ParseError(ErrorCode::NegativeCount, line, "negative co-occurrence count");
      if (v != std::floor(v) || v > 9.007199254740992e15) {
        throw ParseError(ErrorCode::MalformedLine, line, "co-occurrence counts must be integers");
      }
      counts(i, j) = static_cast<Count>(v);
    }
    zero_diagonal = zero_diagonal && counts(i, i) == 0;
  }
  DiagonalPolicy policy = zero_diagonal ? DiagonalPolicy::Zeroed : DiagonalPolicy::Raw;
  if (table.corner == "diagonal:raw") policy = DiagonalPolicy::Raw;
  if (table.corner == "diagonal:zeroed") policy = DiagonalPolicy::Zeroed;
  return CooccurrenceMatrix(table.labels, std::move(counts), policy);
}

std::string serialize_cooccurrence_csv(const CooccurrenceMatrix& m) {
  return serialize_square(
      m.diagonal_policy() == DiagonalPolicy::Raw ? "diagonal:raw" : "diagonal:zeroed", m.labels(), m.size(), [&](Eigen::Index i, Eigen::Index j) {
    return std::to_string(m(i, j));
  });
}

}  // namespace cocite
