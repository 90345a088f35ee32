#include <doctest.h>

#include <cmath>
#include <limits>

#include "cocite/error.hpp"
#include "cocite/ingest.hpp"
#include "generators.hpp"

using namespace cocite;
using namespace cocite::testing;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected cocite::Error");
  return ErrorCode::InvalidArgument;
}

std::size_t error_line(std::string_view text) {
  try {
    parse_records(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

const Labels kAwkward{"Van Raan, A", "plain", "O'Neil \"Q\"", "  pad", "x;y", "Zeta"};

}  // namespace

TEST_CASE("records reproduce the figure2 dataset") {
  const OccurrenceMatrix a = parse_records("d1\tA;B;D\nd2\tC;D\nd3\tC;D\nd4\tA;B\nd5\tA;B;D\n");
  CHECK(a == figure2_dataset());
  CountMatrix expected(5, 4);
  expected << 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1, 0, 1;
  CHECK(a.counts() == expected);
  CHECK(a.documents() == Labels{"d1", "d2", "d3", "d4", "d5"});
  CHECK(a.attributes() == Labels{"A", "B", "C", "D"});
}

TEST_CASE("record grammar") {
  const OccurrenceMatrix acc = parse_records("d1\tA;A;B\n");
  CHECK(acc.counts() == (CountMatrix(1, 2) << 2, 1).finished());
  const OccurrenceMatrix explicit_counts = parse_records("d1\tA:3;B:2\n");
  CHECK(explicit_counts.counts() == (CountMatrix(1, 2) << 3, 2).finished());

  const OccurrenceMatrix mixed = parse_records("# header\r\n\r\nd2\t b : 2 ; a\r\nd1\t\r\nd3\ta:0;c\n");
  CHECK(mixed.documents() == Labels{"d2", "d1", "d3"});
  CHECK(mixed.attributes() == Labels{"a", "b", "c"});
  CHECK(mixed.counts() == (CountMatrix(3, 3) << 1, 2, 0, 0, 0, 0, 0, 0, 1).finished());
  CHECK(parse_records("d1\tA;a\n").attributes() == Labels{"A", "a"});
}

TEST_CASE("record errors carry line numbers") {
  CHECK(code_of([] { parse_records("d1\tA\nd1\tB\n"); }) == ErrorCode::DuplicateDocId);
  CHECK(error_line("d1\tA\nd1\tB\n") == 2);
  CHECK(code_of([] { parse_records("# c\nd1\tA:-2;B\n"); }) == ErrorCode::NegativeCount);
  CHECK(error_line("# c\nd1\tA:-2;B\n") == 2);
  CHECK(code_of([] { parse_records("no tab here\n"); }) == ErrorCode::MalformedLine);
  CHECK(error_line("d1\tA\n\nd3 A\n") == 3);
  CHECK(error_line("d1\tA;;B\n") == 1);
  CHECK(error_line("d1\tA:x\n") == 1);
  CHECK(error_line("d1\tA:1:2\n") == 1);
  CHECK(error_line("\tA\n") == 1);
  CHECK(error_line("d1\tA\td\n") == 1);
  CHECK(error_line("d1\tA:99999999999999999999999\n") == 1);
  // Only one distinct label: not a valid occurrence matrix.
  CHECK(code_of([] { parse_records("d1\tA\nd2\tA\n"); }) == ErrorCode::MalformedLine);
  CHECK(code_of([] { parse_records(""); }) == ErrorCode::MalformedLine);
}

TEST_CASE("records never fail with anything but a parse error") {
  Rng rng(404);
  const std::string alphabet = "ab\t;:#\n\r -1 \x01\xff";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const int len = uniform_int(rng, 0, 40);
    for (int i = 0; i < len; ++i) text += alphabet[static_cast<std::size_t>(uniform_int(rng, 0, 13))];
    try {
      parse_records(text);
    } catch (const ParseError& e) {
      CHECK(e.line() >= 1);
    }
  }
}

TEST_CASE("records round trip") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int docs = uniform_int(rng, 1, 12);
    const int attrs = uniform_int(rng, 2, 9);
    CountMatrix c = random_occurrence(rng, docs, attrs, 4, 0.3).counts();
    Labels labels;
    for (int j = 0; j < attrs; ++j) labels.push_back("au" + std::to_string(j) + (j % 2 ? " x" : ""));
    std::sort(labels.begin(), labels.end());
    const OccurrenceMatrix a(numbered("doc ", docs), labels, c);
    const std::string text = serialize_records(a);
    CHECK(parse_records(text) == a);
    CHECK(serialize_records(parse_records(text)) == text);
  }
  const OccurrenceMatrix bad({"d"}, {"a;b", "c"}, CountMatrix::Ones(1, 2));
  CHECK(code_of([&] { serialize_records(bad); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("square matrices") {
  const ProximityMatrix lower =
      parse_square_matrix(",a,b,c\na,0\nb,2,0\nc,3,4,0\n", ProximityKind::Dissimilarity, MeasurementLevel::Ordinal);
  CHECK(lower.values() == (Eigen::Matrix3d() << 0, 2, 3, 2, 0, 4, 3, 4, 0).finished());
  CHECK(lower.level() == MeasurementLevel::Ordinal);

  const ProximityMatrix dotted = parse_square_matrix(",a,b\r\na,0,.\r\nb,2,0\r\n", ProximityKind::Dissimilarity);
  CHECK(dotted(0, 1) == 2.0);

  const ProximityMatrix holes = parse_square_matrix(",a,b,c\na,0\nb,,0\nc,1,1,0\n", ProximityKind::Dissimilarity);
  CHECK(std::isnan(holes(0, 1)));

  CHECK(code_of([] { parse_square_matrix(",a,b\na,0,5\nb,7,0\n", ProximityKind::Dissimilarity); }) ==
        ErrorCode::AsymmetricInput);
  CHECK(code_of([] { parse_square_matrix(",a,b\na,0\nc,1,0\n", ProximityKind::Dissimilarity); }) ==
        ErrorCode::LabelMismatch);
  CHECK(code_of([] { parse_square_matrix(",a,b\na,0\n", ProximityKind::Dissimilarity); }) == ErrorCode::LabelMismatch);
  CHECK(code_of([] { parse_square_matrix(",a,b\na,0\nb,x,0\n", ProximityKind::Dissimilarity); }) ==
        ErrorCode::MalformedLine);
  CHECK(code_of([] { parse_square_matrix(",a,b\na,0\nb,-1,0\n", ProximityKind::Dissimilarity); }) ==
        ErrorCode::InvalidMatrix);
  CHECK(code_of([] { parse_square_matrix(",a,b\na,0,1,2\nb,1,0\n", ProximityKind::Dissimilarity); }) ==
        ErrorCode::MalformedLine);
  CHECK(code_of([] { parse_square_matrix(",\"a,b\n", ProximityKind::Dissimilarity); }) == ErrorCode::MalformedLine);
}

TEST_CASE("square matrix round trip") {
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 2, 8);
    Labels labels;
    for (int i = 0; i < n; ++i) labels.push_back(kAwkward[static_cast<std::size_t>(i % 6)] + std::to_string(i));
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        v(i, j) = v(j, i) = trial % 4 == 0 && uniform_real(rng) < 0.2 ? std::numeric_limits<double>::quiet_NaN()
                                                                      : uniform_real(rng, 0, 1e6) / 7.0;
      }
    }
    const ProximityMatrix p(labels, v, ProximityKind::Dissimilarity);
    const std::string text = serialize_square_matrix(p);
    CHECK(parse_square_matrix(text, ProximityKind::Dissimilarity) == p);

    CountMatrix c = CountMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) c(i, j) = c(j, i) = static_cast<Count>(uniform_int(rng, 0, 50));
    }
    const CooccurrenceMatrix raw(labels, c, DiagonalPolicy::Raw);
    CHECK(parse_cooccurrence_csv(serialize_cooccurrence_csv(raw)) == raw);
    c.diagonal().setZero();
    for (DiagonalPolicy policy : {DiagonalPolicy::Raw, DiagonalPolicy::Zeroed}) {
      const CooccurrenceMatrix m(labels, c, policy);
      CHECK(parse_cooccurrence_csv(serialize_cooccurrence_csv(m)) == m);
    }
  }
}

TEST_CASE("co-occurrence csv") {
  const CooccurrenceMatrix m = parse_cooccurrence_csv(",a,b\na,,\nb,3,\n");
  CHECK(m.diagonal_policy() == DiagonalPolicy::Zeroed);
  CHECK(m(0, 1) == 3);
  CHECK(parse_cooccurrence_csv(",a,b\na,2\nb,3,1\n").diagonal_policy() == DiagonalPolicy::Raw);
  CHECK(code_of([] { parse_cooccurrence_csv(",a,b\na,0\nb,1.5,0\n"); }) == ErrorCode::MalformedLine);
  CHECK(code_of([] { parse_cooccurrence_csv(",a,b\na,0\nb,-1,0\n"); }) == ErrorCode::NegativeCount);
  CHECK(code_of([] { parse_cooccurrence_csv(",a,b,c\na,0\nb,1,0\nc,,1,0\n"); }) == ErrorCode::MalformedLine);
}

TEST_CASE("builtin datasets") {
  const ProximityMatrix cities = cities_dataset();
  REQUIRE(cities.size() == 10);
  CHECK(cities.kind() == ProximityKind::Dissimilarity);
  auto at = [&](const std::string& a, const std::string& b) {
    const auto& l = cities.labels();
    const auto i = std::find(l.begin(), l.end(), a) - l.begin();
    const auto j = std::find(l.begin(), l.end(), b) - l.begin();
    return cities(i, j);
  };
  CHECK(at("Atlanta", "Chicago") == 587);
  CHECK(at("Los Angeles", "San Francisco") == 347);
  CHECK(at("San Francisco", "Los Angeles") == 347);
  CHECK(at("New York", "Washington DC") == 205);
  CHECK(at("Miami", "Seattle") == 2734);
  CHECK(cities.values().diagonal().isZero());
  int triples = 0;
  for (int i = 0; i < 10; ++i) {
    for (int j = i + 1; j < 10; ++j) {
      for (int k = j + 1; k < 10; ++k) {
        ++triples;
        CHECK(cities(i, k) <= cities(i, j) + cities(j, k));
        CHECK(cities(i, j) <= cities(i, k) + cities(k, j));
        CHECK(cities(j, k) <= cities(j, i) + cities(i, k));
      }
    }
  }
  CHECK(triples == 120);

  const CooccurrenceMatrix f1 = figure1_dataset();
  CHECK(f1.labels() == Labels{"Paper 1", "Paper 2", "Paper 3", "Paper 4"});
  CHECK(f1(1, 2) == 30);
  CHECK(f1.counts() == (CountMatrix(4, 4) << 0, 10, 20, 25, 10, 0, 30, 15, 20, 30, 0, 12, 25, 15, 12, 0).finished());
  CHECK(figure2_dataset().n_documents() == 5);

  CHECK(std::holds_alternative<ProximityMatrix>(builtin_dataset("cities")));
  CHECK(std::holds_alternative<CooccurrenceMatrix>(builtin_dataset("figure1")));
  CHECK(std::holds_alternative<OccurrenceMatrix>(builtin_dataset("figure2")));
  CHECK(code_of([] { builtin_dataset("figure9"); }) == ErrorCode::UnknownDataset);
}
