#include <doctest.h>

#include <cmath>
#include <limits>

#include "cocite/error.hpp"
#include "cocite/ingest.hpp"
#include "cocite/proximity.hpp"
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

// Textbook sample Pearson on two vectors, as an independent reference.
double pearson_ref(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    sx += x(i);
    sy += y(i);
    sxx += x(i) * x(i);
    syy += y(i) * y(i);
    sxy += x(i) * y(i);
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

OccurrenceMatrix columns(const Eigen::MatrixXd& x) {
  return OccurrenceMatrix(numbered("d", x.rows()), numbered("a", x.cols()), x.cast<Count>());
}

}  // namespace

TEST_CASE("figure2 dataset pearson and shift") {
  const ProximityMatrix r = pearson_columns(figure2_dataset());
  CHECK(r.kind() == ProximityKind::Similarity);
  CHECK(std::abs(r(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(r(0, 2) + 1.0) < 1e-15);
  // A = (1,0,0,1,1), D = (1,1,1,0,1): cov sum -0.4, variance sums 1.2 and 0.8.
  const double r_ad = -0.4 / std::sqrt(1.2 * 0.8);
  CHECK(std::abs(r(0, 3) - r_ad) < 1e-14);
  CHECK(std::abs(r(0, 3) + 0.4082) < 1e-4);

  const ProximityMatrix s = shift_pearson(r);
  CHECK(std::abs(s(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(s(0, 2)) < 1e-15);
  CHECK(std::abs(s(0, 3) - 0.2959) < 1e-4);
  CHECK(std::abs(s(2, 3) - 0.7041) < 1e-4);
  CHECK(std::abs(s(0, 3) + s(2, 3) - 1.0) < 1e-14);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(s(i, i) == 1.0);
}

TEST_CASE("pearson matches a reference and stays in range") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const OccurrenceMatrix a = random_varying_occurrence(rng, uniform_int(rng, 3, 15), uniform_int(rng, 2, 8), 6);
    const ProximityMatrix r = pearson_columns(a);
    const Eigen::MatrixXd x = a.as_real();
    for (Eigen::Index i = 0; i < x.cols(); ++i) {
      CHECK(r(i, i) == 1.0);
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        CHECK(std::abs(r(i, j)) <= 1.0 + 1e-12);
        CHECK(r(i, j) == r(j, i));
        if (i != j) CHECK(std::abs(r(i, j) - pearson_ref(x.col(i), x.col(j))) < 1e-12);
      }
    }
  }
}

TEST_CASE("zero variance column is named") {
  const OccurrenceMatrix a({"d1", "d2"}, {"x", "flat"}, (CountMatrix(2, 2) << 1, 2, 0, 2).finished());
  try {
    pearson_columns(a);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroVarianceColumn);
    CHECK(std::string(e.what()).find("flat") != std::string::npos);
  }
}

TEST_CASE("shift checks range and preserves order") {
  Eigen::Matrix2d bad;
  bad << 1, 1.1, 1.1, 1;
  CHECK(code_of([&] { shift_pearson(ProximityMatrix({"a", "b"}, bad, ProximityKind::Similarity)); }) ==
        ErrorCode::OutOfRange);
  Eigen::Matrix2d edge;
  edge << 1, 1 + 1e-13, 1 + 1e-13, 1;
  CHECK_NOTHROW(shift_pearson(ProximityMatrix({"a", "b"}, edge, ProximityKind::Similarity)));

  Rng rng(5);
  const ProximityMatrix r = pearson_columns(random_varying_occurrence(rng, 12, 6, 4));
  const ProximityMatrix s = shift_pearson(r);
  for (Eigen::Index k = 0; k < r.values().size(); ++k) {
    for (Eigen::Index l = 0; l < r.values().size(); ++l) {
      const double r1 = r.values().data()[k], r2 = r.values().data()[l];
      if (r1 < r2) CHECK(s.values().data()[k] < s.values().data()[l]);
    }
  }
}

TEST_CASE("cosine") {
  const ProximityMatrix c = cosine_columns(figure2_dataset());
  CHECK(c(0, 2) == 0.0);
  CHECK(std::abs(c(0, 1) - 1.0) < 1e-15);
  const ProximityMatrix small = cosine_columns(columns((Eigen::MatrixXd(3, 2) << 1, 1, 1, 0, 0, 0).finished()));
  CHECK(std::abs(small(0, 1) - 1.0 / std::sqrt(2.0)) < 1e-15);

  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const OccurrenceMatrix a = random_varying_occurrence(rng, 8, 5, 9);
    const ProximityMatrix m = cosine_columns(a);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      CHECK(m(i, i) == 1.0);
      for (Eigen::Index j = 0; j < m.size(); ++j) CHECK((m(i, j) >= 0.0 && m(i, j) <= 1.0));
    }
  }
  const OccurrenceMatrix empty({"d"}, {"x", "zero"}, (CountMatrix(1, 2) << 1, 0).finished());
  CHECK(code_of([&] { cosine_columns(empty); }) == ErrorCode::ZeroNormColumn);
}

TEST_CASE("jaccard") {
  const ProximityMatrix j = jaccard_columns(figure2_dataset());
  CHECK(j(0, 1) == 1.0);
  CHECK(j(0, 2) == 0.0);
  // Supports: A = {d1,d4,d5}, D = {d1,d2,d3,d5}; intersection 2, union 5.
  CHECK(j(0, 3) == 0.4);
  CHECK(j(2, 3) == 0.5);

  std::vector<std::string> empty;
  const OccurrenceMatrix a({"d1", "d2"}, {"x", "none", "y"}, (CountMatrix(2, 3) << 1, 0, 0, 0, 0, 3).finished());
  const ProximityMatrix k = jaccard_columns(a, &empty);
  CHECK(empty == std::vector<std::string>{"none"});
  CHECK(k(1, 1) == 0.0);
  CHECK(k(0, 1) == 0.0);
  CHECK(k(0, 2) == 0.0);
  CHECK(k(0, 0) == 1.0);

  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const ProximityMatrix m = jaccard_columns(random_occurrence(rng, 6, 6, 3));
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      for (Eigen::Index l = 0; l < m.size(); ++l) CHECK((m(i, l) >= 0.0 && m(i, l) <= 1.0));
    }
  }
}

TEST_CASE("euclidean") {
  const ProximityMatrix e = euclidean_columns(figure2_dataset());
  CHECK(e.kind() == ProximityKind::Dissimilarity);
  CHECK(e(0, 1) == 0.0);
  CHECK(std::abs(e(0, 2) - std::sqrt(5.0)) < 1e-15);
  // A and D differ in rows 2, 3 and 4.
  CHECK(std::abs(e(0, 3) - std::sqrt(3.0)) < 1e-15);

  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const ProximityMatrix m = euclidean_columns(random_occurrence(rng, uniform_int(rng, 1, 10), 6, 7));
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        for (int k = 0; k < 6; ++k) CHECK(m(i, k) <= m(i, j) + m(j, k) + 1e-9);
      }
    }
  }
}

TEST_CASE("to_dissimilarity") {
  const ProximityMatrix fig3 = shift_pearson(pearson_columns(figure2_dataset()));
  const ProximityMatrix d = to_dissimilarity(fig3, 1.0);
  CHECK(d.kind() == ProximityKind::Dissimilarity);
  CHECK(std::abs(d(0, 1)) < 1e-15);
  CHECK(std::abs(d(0, 3) - (1.0 - fig3(0, 3))) < 1e-15);
  CHECK(std::abs(d(0, 3) - 0.7041) < 1e-4);
  CHECK(d.values().diagonal().isZero());

  Eigen::Matrix3d s;
  s << 9, 4, 2, 4, 1, 7, 2, 7, 3;
  const ProximityMatrix sim({"a", "b", "c"}, s, ProximityKind::Similarity);
  const ProximityMatrix automatic = to_dissimilarity(sim);
  CHECK(automatic(0, 1) == 5.0);
  CHECK(automatic(1, 2) == 2.0);
  CHECK(code_of([&] { to_dissimilarity(sim, 6.0); }) == ErrorCode::NegativeResult);
  CHECK(code_of([&] { to_dissimilarity(automatic); }) == ErrorCode::InvalidArgument);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  Eigen::Matrix3d m;
  m << 1, nan, 0.5, nan, 1, 0.2, 0.5, 0.2, 1;
  const ProximityMatrix holes = to_dissimilarity(ProximityMatrix({"a", "b", "c"}, m, ProximityKind::Similarity));
  CHECK(std::isnan(holes(0, 1)));
  CHECK(holes(0, 2) == 0.5);
}

TEST_CASE("pearson of proximities") {
  Eigen::Matrix3d p;
  p << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  const ProximityMatrix r = pearson_of_proximities(ProximityMatrix({"a", "b", "c"}, p, ProximityKind::Dissimilarity));
  CHECK(std::abs(r(0, 2) + 1.0) < 1e-15);
  CHECK(r.kind() == ProximityKind::Similarity);

  Eigen::Matrix3d twin;
  twin << 1, 1, 0.3, 1, 1, 0.3, 0.3, 0.3, 1;
  const ProximityMatrix t = pearson_of_proximities(ProximityMatrix({"a", "b", "c"}, twin, ProximityKind::Similarity));
  CHECK(std::abs(t(0, 1) - 1.0) < 1e-15);

  const ProximityMatrix cities = pearson_of_proximities(cities_dataset());
  for (Eigen::Index i = 0; i < cities.size(); ++i) CHECK(cities(i, i) == 1.0);
}
