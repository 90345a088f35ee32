#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "cocite/error.hpp"
#include "cocite/layout.hpp"
#include "text_util.hpp"

namespace cocite {

std::string export_pajek(const WeightedGraph& g, const std::optional<Eigen::MatrixXd>& positions) {
  const int n = g.node_count();
  if (positions && (positions->rows() != n || positions->cols() < 2)) {
    throw Error(ErrorCode::InvalidArgument, "positions do not match the graph");
  }

  Eigen::MatrixXd unit;
  if (positions) {
    unit = positions->leftCols(2);
    const Eigen::RowVector2d lo = unit.colwise().minCoeff();
    unit.rowwise() -= lo;
    const double span = std::max(unit.maxCoeff(), 0.0);
    if (span > 0.0) unit /= span;
  }

  std::string out = "*Vertices " + std::to_string(n) + "\n";
  char buf[64];
  for (int i = 0; i < n; ++i) {
    const auto& label = g.node_labels()[static_cast<std::size_t>(i)];
    if (label.find_first_of("\"\r\n") != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "Pajek labels cannot contain quotes or line breaks");
    }
    out += std::to_string(i + 1) + " \"" + label + "\"";
    if (positions) {
      std::snprintf(buf, sizeof buf, " %.4f %.4f", unit(i, 0), unit(i, 1));
      out += buf;
    }
    out += '\n';
  }
  out += "*Edges\n";
  for (const auto& e : g.edges()) {
    out += std::to_string(e.from + 1) + " " + std::to_string(e.to + 1) + " " + detail::format_double(e.weight) + "\n";
  }
  return out;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool parse_int(std::string_view s, long& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

PajekNetwork import_pajek(std::string_view text) {
  enum class Section { None, Vertices, Edges };
  Section section = Section::None;
  long n = -1;
  Labels labels;
  std::vector<Edge> edges;
  std::vector<std::array<double, 2>> coords;
  std::size_t with_coords = 0;

  const auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::size_t line_no = ln + 1;
    const std::string_view line = detail::trim(lines[ln]);
    if (line.empty() || line.front() == '%') continue;

    if (line.front() == '*') {
      const auto tokens = split_ws(line);
      const std::string head = lower(tokens.front());
      if (head == "*vertices") {
        if (tokens.size() < 2 || !parse_int(tokens[1], n) || n < 0) {
          throw ParseError(ErrorCode::MalformedLine, line_no, "bad *Vertices header");
        }
        section = Section::Vertices;
        labels.reserve(static_cast<std::size_t>(n));
      } else if (head == "*edges" || head == "*arcs") {
        if (n < 0) throw ParseError(ErrorCode::MalformedLine, line_no, "edges before *Vertices");
        section = Section::Edges;
      } else {
        throw ParseError(ErrorCode::MalformedLine, line_no, "unsupported section " + std::string(tokens.front()));
      }
      continue;
    }

    if (section == Section::Vertices) {
      std::size_t pos = 0;
      while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      long id = 0;
      if (!parse_int(line.substr(0, pos), id) || id != static_cast<long>(labels.size()) + 1) {
        throw ParseError(ErrorCode::MalformedLine, line_no, "vertex ids must run 1..n in order");
      }
      std::string_view rest = detail::trim(line.substr(pos));
      std::string label;
      if (!rest.empty() && rest.front() == '"') {
        const auto close = rest.find('"', 1);
        if (close == std::string_view::npos) throw ParseError(ErrorCode::MalformedLine, line_no, "unterminated label");
        label = std::string(rest.substr(1, close - 1));
        rest = rest.substr(close + 1);
      } else {
        const auto toks = split_ws(rest);
        if (toks.empty()) throw ParseError(ErrorCode::MalformedLine, line_no, "missing vertex label");
        label = std::string(toks.front());
        rest = rest.substr(toks.front().size());
      }
      const auto extra = split_ws(rest);
      std::array<double, 2> xy{0.0, 0.0};
      if (extra.size() >= 2) {
        if (!detail::parse_double(extra[0], xy[0]) || !detail::parse_double(extra[1], xy[1])) {
          throw ParseError(ErrorCode::MalformedLine, line_no, "bad vertex coordinates");
        }
        ++with_coords;
      } else if (extra.size() == 1) {
        throw ParseError(ErrorCode::MalformedLine, line_no, "incomplete vertex coordinates");
      }
      labels.push_back(std::move(label));
      coords.push_back(xy);
      if (static_cast<long>(labels.size()) > n) {
        throw ParseError(ErrorCode::MalformedLine, line_no, "more vertices than declared");
      }
    } else if (section == Section::Edges) {
      const auto toks = split_ws(line);
      long a = 0, b = 0;
      double w = 1.0;
      if (toks.size() < 2 || toks.size() > 3 || !parse_int(toks[0], a) || !parse_int(toks[1], b) ||
          (toks.size() == 3 && !detail::parse_double(toks[2], w))) {
        throw ParseError(ErrorCode::MalformedLine, line_no, "expected 'i j [weight]'");
      }
      if (a < 1 || b < 1 || a > n || b > n) throw ParseError(ErrorCode::MalformedLine, line_no, "edge endpoint out of range");
      edges.push_back({static_cast<int>(a - 1), static_cast<int>(b - 1), w});
    } else {
      throw ParseError(ErrorCode::MalformedLine, line_no, "data before *Vertices");
    }
  }
  if (n < 0) throw ParseError(ErrorCode::MalformedLine, lines.size() + 1, "missing *Vertices section");
  if (static_cast<long>(labels.size()) != n) {
    throw ParseError(ErrorCode::MalformedLine, lines.size(), "fewer vertices than declared");
  }

  std::optional<Eigen::MatrixXd> positions;
  if (with_coords > 0) {
    if (with_coords != labels.size()) {
      throw ParseError(ErrorCode::MalformedLine, lines.size(), "coordinates given for only some vertices");
    }
    positions = Eigen::MatrixXd(static_cast<Eigen::Index>(n), 2);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      (*positions)(static_cast<Eigen::Index>(i), 0) = coords[i][0];
      (*positions)(static_cast<Eigen::Index>(i), 1) = coords[i][1];
    }
  }
  try {
    return PajekNetwork{WeightedGraph(std::move(labels), std::move(edges)), std::move(positions)};
  } catch (const Error& e) {
    throw ParseError(ErrorCode::MalformedLine, lines.size(), e.detail());
  }
}

}  // namespace cocite
