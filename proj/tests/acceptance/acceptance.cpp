// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every tolerance is pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cocite/factor.hpp"
#include "cocite/ingest.hpp"
#include "cocite/layout.hpp"
#include "cocite/linalg.hpp"
#include "cocite/matrix.hpp"
#include "cocite/mds.hpp"
#include "cocite/proximity.hpp"
#include "generators.hpp"

using namespace cocite;
using namespace cocite::testing;

namespace {

// Pinned tolerances.
constexpr double kFigure3Tol = 0.0005;
constexpr double kFigure3MaxSeconds = 1e-3;
constexpr double kCityStressMax = 0.005;
constexpr int kCityIterationsMax = 200;
constexpr double kCityCongruenceMin = 0.99;
constexpr double kCityMaxSeconds = 1.0;
constexpr double kDistortedStressLo = 0.05;
constexpr double kDistortedStressHi = 0.20;
constexpr double kDistortedRatioMin = 10.0;
constexpr double kKindStressTol = 1e-10;
constexpr double kKindCongruenceTol = 1e-9;
constexpr double kMonotoneStepTol = 1e-12;
constexpr double kOrdinalDominanceTol = 1e-9;
constexpr double kEigenReconstructionTol = 1e-8;
constexpr double kLoadingReconstructionTol = 1e-8;
constexpr double kCommunalityTol = 1e-9;
constexpr double kSimpleStructureTol = 1e-6;
constexpr double kIsotonicTol = 1e-12;
constexpr double kSingleEdgeTol = 1e-6;
constexpr double kK4CvMax = 0.1;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

double city_stress = std::nan("");

void shifted_table(Outcome& o) {
  const Eigen::Matrix4d expected =
      (Eigen::Matrix4d() << 1, 1, 0, 0.295, 1, 1, 0, 0.295, 0, 0, 1, 0.705, 0.295, 0.295, 0.705, 1).finished();
  const OccurrenceMatrix a = figure2_dataset();
  const auto t0 = Clock::now();
  const ProximityMatrix p = shift_pearson(pearson_columns(a));
  const double elapsed = seconds_since(t0);
  const double diff = max_abs_diff(p.values(), expected);
  o.detail << "max cell deviation " << fmt(diff) << " (tol " << kFigure3Tol << "), computed (A,D) "
           << fmt(p(0, 3), "%.6f") << " (C,D) " << fmt(p(2, 3), "%.6f") << ", runtime " << fmt(elapsed * 1e3)
           << " ms; ";
  o.require(diff <= kFigure3Tol, "cells differ from the published matrix by more than " + fmt(kFigure3Tol));
  o.require(elapsed < kFigure3MaxSeconds, "runtime");
}

void city_map(Outcome& o) {
  const ProximityMatrix cities = cities_dataset();
  MdsConfig cfg;
  cfg.level = MeasurementLevel::Ratio;
  cfg.init = ClassicalInit{};
  const auto t0 = Clock::now();
  const Configuration c = mds(cities, cfg);
  const double elapsed = seconds_since(t0);
  const double congruence = procrustes_align(c.coords, classical_init(cities.values(), 2)).congruence;
  city_stress = c.stress;
  o.detail << "stress " << fmt(c.stress) << " after " << c.iterations_used << " iterations, congruence "
           << fmt(congruence, "%.9f") << ", runtime " << fmt(elapsed * 1e3) << " ms; ";
  o.require(c.stress <= kCityStressMax, "stress");
  o.require(c.iterations_used <= kCityIterationsMax, "iterations");
  o.require(congruence >= kCityCongruenceMin, "congruence");
  o.require(elapsed < kCityMaxSeconds, "runtime");
}

void distortion(Outcome& o) {
  const ProximityMatrix r = pearson_of_proximities(cities_dataset());
  const Configuration c = mds(r, MdsConfig{});
  o.detail << "stress " << fmt(c.stress) << " (band [" << kDistortedStressLo << ", " << kDistortedStressHi
           << "]), ratio to city stress " << fmt(c.stress / city_stress) << "; ";
  o.require(r.kind() == ProximityKind::Similarity, "correlations are similarities");
  o.require(c.stress >= kDistortedStressLo && c.stress <= kDistortedStressHi, "stress outside the band");
  o.require(c.stress > kDistortedRatioMin * city_stress, "not more than 10x the city stress");
}

void kind_equivalence(Outcome& o) {
  Rng rng(4001);
  double worst_stress = 0.0, worst_congruence = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform_int(rng, 4, 12);
    const ProximityMatrix s = random_similarity(rng, n);
    MdsConfig cfg;
    cfg.level = static_cast<MeasurementLevel>(trial % 3);
    cfg.init = ExplicitInit{Eigen::MatrixXd::NullaryExpr(n, 2, [&] { return uniform_real(rng, -1, 1); })};
    const Configuration a = mds(s, cfg);
    const Configuration b = mds(to_dissimilarity(s, 1.0), cfg);
    worst_stress = std::max(worst_stress, std::abs(a.stress - b.stress));
    worst_congruence = std::max(worst_congruence, 1.0 - procrustes_align(a.coords, b.coords).congruence);
  }
  o.detail << "50 matrices, max |dstress| " << fmt(worst_stress) << ", max 1-congruence " << fmt(worst_congruence)
           << "; ";
  o.require(worst_stress < kKindStressTol, "stress");
  o.require(worst_congruence < kKindCongruenceTol, "congruence");
}

void cooccurrence_oracle(Outcome& o) {
  Rng rng(5001);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int docs = uniform_int(rng, 1, 12);
    const int attrs = uniform_int(rng, 2, 8);
    const OccurrenceMatrix a = random_occurrence(rng, docs, attrs, 1, uniform_real(rng, 0.1, 0.9));
    const bool zero = trial % 2 == 1;
    if (cooccurrence(a, zero ? DiagonalPolicy::Zeroed : DiagonalPolicy::Raw).counts() !=
        brute_cooccurrence(a.counts(), zero)) {
      ++mismatches;
    }
    if (affiliations(a).counts() != brute_affiliations(a.counts())) ++mismatches;
  }
  o.detail << "200 matrices, " << mismatches << " mismatches; ";
  o.require(mismatches == 0, "mismatch against enumeration");
}

void smacof_monotone(Outcome& o) {
  Rng rng(6001);
  double worst_rise = 0.0, worst_dominance = -1.0;
  int runs = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const ProximityMatrix p = random_dissimilarity(rng, uniform_int(rng, 4, 12));
    double final_stress[3] = {};
    for (int level = 0; level < 3; ++level) {
      MdsConfig cfg;
      cfg.level = static_cast<MeasurementLevel>(level);
      const Configuration c = mds(p, cfg);
      ++runs;
      for (std::size_t i = 1; i < c.stress_history.size(); ++i) {
        worst_rise = std::max(worst_rise, c.stress_history[i] - c.stress_history[i - 1]);
      }
      final_stress[level] = c.stress;
    }
    worst_dominance = std::max(worst_dominance, final_stress[2] - final_stress[0]);
  }
  o.detail << runs << " runs, largest per-step rise " << fmt(worst_rise) << ", max(ordinal - ratio) "
           << fmt(worst_dominance) << "; ";
  o.require(worst_rise <= kMonotoneStepTol, "stress rose");
  o.require(worst_dominance <= kOrdinalDominanceTol, "ordinal stress above ratio stress");
}

LoadingsMatrix as_loadings(const Eigen::MatrixXd& l) {
  LoadingsMatrix out;
  out.variable_labels = numbered("v", l.rows());
  out.loadings = l;
  out.eigenvalues = Eigen::VectorXd::Ones(l.rows());
  out.explained_variance_pct.assign(static_cast<std::size_t>(l.cols()), 0.0);
  out.rotation_matrix = Eigen::MatrixXd::Identity(l.cols(), l.cols());
  return out;
}

void factor_suite(Outcome& o) {
  Rng rng(7001);
  double eig_err = 0.0, recon_err = 0.0, comm_err = 0.0, crit_drop = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const int p = uniform_int(rng, 2, 30);
    const Eigen::MatrixXd r = random_correlation(rng, p);
    const EigenDecomposition e = eigen_symmetric(r);
    eig_err = std::max(eig_err, max_abs_diff(r, e.vectors * e.values.asDiagonal() * e.vectors.transpose()));

    const ProximityMatrix corr(numbered("v", p), r, ProximityKind::Similarity);
    const LoadingsMatrix full = pca_from_correlation(corr, p);
    recon_err = std::max(recon_err, max_abs_diff(full.loadings * full.loadings.transpose(), r));

    if (p < 3) continue;
    const LoadingsMatrix some = pca_from_correlation(corr, uniform_int(rng, 2, std::min(p, 6)));
    for (bool kaiser : {true, false}) {
      const LoadingsMatrix rot = varimax(some, VarimaxOptions{.kaiser_normalize = kaiser});
      comm_err = std::max(comm_err, (rot.communalities() - some.communalities()).cwiseAbs().maxCoeff());
      for (std::size_t i = 1; i < rot.criterion_history.size(); ++i) {
        crit_drop = std::max(crit_drop, rot.criterion_history[i - 1] - rot.criterion_history[i]);
      }
    }
  }

  const double h = std::sqrt(0.5);
  const LoadingsMatrix mixed = varimax(as_loadings((Eigen::MatrixXd(2, 2) << h, h, h, -h).finished()));
  const Eigen::MatrixXd a = mixed.loadings.cwiseAbs();
  const double off = std::max(std::min(a(0, 0), a(0, 1)), std::min(a(1, 0), a(1, 1)));
  const bool distinct = (a(0, 0) > a(0, 1)) != (a(1, 0) > a(1, 1));

  o.detail << "eigen reconstruction " << fmt(eig_err) << ", L*L' " << fmt(recon_err) << ", communality drift "
           << fmt(comm_err) << ", largest criterion drop " << fmt(crit_drop) << ", 45-degree off-loading "
           << fmt(off) << "; ";
  o.require(eig_err < kEigenReconstructionTol, "eigen reconstruction");
  o.require(recon_err < kLoadingReconstructionTol, "loading reconstruction");
  o.require(comm_err < kCommunalityTol, "communalities");
  o.require(crit_drop <= 0.0, "varimax criterion decreased");
  o.require(off < kSimpleStructureTol && distinct, "45-degree example not simple");
}

void isotonic_oracle(Outcome& o) {
  Rng rng(8001);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = uniform_int(rng, 1, 8);
    std::vector<double> y(static_cast<std::size_t>(n));
    std::vector<double> w(y.size());
    for (auto& v : y) v = trial % 5 == 0 ? uniform_int(rng, 0, 3) : uniform_real(rng, -5, 5);
    for (auto& v : w) v = trial % 2 == 0 ? 1.0 : uniform_real(rng, 0.1, 3);
    std::vector<std::size_t> order(y.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const std::vector<double> fit = monotone_regression(y, order, w);
    const std::vector<double> ref = brute_isotonic(y, w);
    for (std::size_t i = 0; i < fit.size(); ++i) worst = std::max(worst, std::abs(fit[i] - ref[i]));
  }
  o.detail << "500 vectors of length <= 8, max deviation " << fmt(worst) << "; ";
  o.require(worst <= kIsotonicTol, "deviation");
}

double distance(const Eigen::MatrixXd& x, int i, int j) { return (x.row(i) - x.row(j)).norm(); }

void layout_contracts(Outcome& o) {
  const LayoutResult single = kamada_kawai(WeightedGraph({"a", "b"}, {{0, 1, 3.0}}));
  const double sep_err = std::abs(distance(single.positions, 0, 1) - KamadaKawaiConfig{}.edge_length);

  std::vector<Edge> k4_edges;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) k4_edges.push_back({i, j, 1.0});
  }
  const WeightedGraph k4(numbered("k", 4), k4_edges);
  const LayoutResult k4_layout = kamada_kawai(k4);
  std::vector<double> lengths;
  for (const Edge& e : k4.edges()) lengths.push_back(distance(k4_layout.positions, e.from, e.to));
  double mean = 0.0;
  for (double l : lengths) mean += l / static_cast<double>(lengths.size());
  double var = 0.0;
  for (double l : lengths) var += (l - mean) * (l - mean) / static_cast<double>(lengths.size());
  const double cv = std::sqrt(var) / mean;

  Rng rng(9001);
  int energy_rises = 0, moved = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 2, 30);
    const WeightedGraph g = random_connected_graph(rng, n, uniform_int(rng, 0, 2 * n));
    const LayoutResult r = kamada_kawai(g);
    if (r.final_energy > r.initial_energy) ++energy_rises;

    const double c = uniform_real(rng, 0.01, 100.0);
    std::vector<Edge> scaled = g.edges();
    for (Edge& e : scaled) e.weight *= c;
    const LayoutResult s = kamada_kawai(WeightedGraph(g.node_labels(), scaled));
    if (s.positions != r.positions) ++moved;
  }

  o.detail << "single-edge separation error " << fmt(sep_err) << ", K4 edge-length CV " << fmt(cv)
           << " (limit " << kK4CvMax << "), energy rises " << energy_rises << "/100, rescaled layouts differing "
           << moved << "/100; ";
  o.require(sep_err < kSingleEdgeTol, "single edge");
  o.require(cv < kK4CvMax, "K4 edge-length CV");
  o.require(energy_rises == 0, "energy rose");
  o.require(moved == 0, "weight rescaling moved nodes");
}

void round_trips(Outcome& o) {
  Rng rng(10001);
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int docs = uniform_int(rng, 1, 12);
    const int attrs = uniform_int(rng, 2, 9);
    Labels labels;
    for (int j = 0; j < attrs; ++j) labels.push_back("Author " + std::to_string(j) + (j % 3 ? "" : " Jr."));
    std::sort(labels.begin(), labels.end());
    const OccurrenceMatrix a(numbered("doc ", docs), labels, random_occurrence(rng, docs, attrs, 5, 0.35).counts());
    if (parse_records(serialize_records(a)) != a) ++failures;
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 2, 10);
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) v(i, j) = v(j, i) = uniform_real(rng, 0, 5000) / 3.0;
    }
    Labels labels = numbered("city, ", n);
    const ProximityMatrix p(labels, v, ProximityKind::Dissimilarity);
    if (parse_square_matrix(serialize_square_matrix(p), ProximityKind::Dissimilarity) != p) ++failures;
  }
  for (int trial = 0; trial < 100; ++trial) {
    const WeightedGraph g = random_connected_graph(rng, uniform_int(rng, 2, 20), uniform_int(rng, 0, 10));
    const std::string text = export_pajek(g);
    const PajekNetwork back = import_pajek(text);
    if (back.graph != g || export_pajek(back.graph) != text) ++failures;
  }

  const ProximityMatrix cities = cities_dataset();
  int triples = 0, violations = 0;
  for (int i = 0; i < cities.size(); ++i) {
    for (int j = i + 1; j < cities.size(); ++j) {
      for (int k = j + 1; k < cities.size(); ++k) {
        ++triples;
        const double ij = cities(i, j), ik = cities(i, k), jk = cities(j, k);
        if (ik > ij + jk || ij > ik + jk || jk > ij + ik) ++violations;
      }
    }
  }
  o.detail << "300 round trips, " << failures << " failures; cities " << triples << " triples, " << violations
           << " triangle violations; ";
  o.require(failures == 0, "round trip");
  o.require(triples == 120 && violations == 0, "triangle inequality");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"1 shifted correlations of the figure2 dataset", shifted_table},
      {"2 city map recovery", city_map},
      {"3 distortion demonstration", distortion},
      {"4 similarity/dissimilarity equivalence", kind_equivalence},
      {"5 co-occurrence oracle", cooccurrence_oracle},
      {"6 SMACOF monotonicity and ordinal dominance", smacof_monotone},
      {"7 factor analysis structure", factor_suite},
      {"8 isotonic regression oracle", isotonic_oracle},
      {"9 layout contracts", layout_contracts},
      {"10 format round trips", round_trips},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
