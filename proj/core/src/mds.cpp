#include "cocite/mds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "cocite/error.hpp"
#include "cocite/linalg.hpp"
#include "cocite/proximity.hpp"

namespace cocite {

std::vector<double> monotone_regression(std::span<const double> values, std::span<const std::size_t> order,
                                        std::span<const double> weights) {
  if (order.size() != values.size()) throw Error(ErrorCode::InvalidArgument, "order and values differ in length");
  if (!weights.empty() && weights.size() != values.size()) {
    throw Error(ErrorCode::InvalidArgument, "weights and values differ in length");
  }

  struct Block {
    double mean;
    double weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(order.size());
  for (const auto idx : order) {
    const double w = weights.empty() ? 1.0 : weights[idx];
    blocks.push_back({values[idx], w, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean > blocks.back().mean) {
      const Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      const double total = prev.weight + top.weight;
      prev.mean = total > 0.0 ? (prev.mean * prev.weight + top.mean * top.weight) / total
                              : 0.5 * (prev.mean + top.mean);
      prev.weight = total;
      prev.count += top.count;
    }
  }

  std::vector<double> fitted(values.size());
  std::size_t pos = 0;
  for (const auto& b : blocks) {
    for (std::size_t k = 0; k < b.count; ++k) fitted[order[pos++]] = b.mean;
  }
  return fitted;
}

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& coords) {
  const auto n = coords.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (coords.row(i) - coords.row(j)).norm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

Eigen::MatrixXd classical_init(const Eigen::MatrixXd& dissimilarities, int dimensions) {
  const auto n = dissimilarities.rows();
  if (dissimilarities.cols() != n) throw Error(ErrorCode::InvalidArgument, "classical_init needs a square matrix");
  if (dimensions < 1 || dimensions > n) throw Error(ErrorCode::DimensionTooLarge, "dimensions out of range");
  const Eigen::MatrixXd sq = dissimilarities.array().square().matrix();
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd gram = -0.5 * centering * sq * centering;
  gram = 0.5 * (gram + gram.transpose());
  const auto eig = eigen_symmetric(gram);
  Eigen::MatrixXd coords(n, dimensions);
  for (int k = 0; k < dimensions; ++k) {
    coords.col(k) = eig.vectors.col(k) * std::sqrt(std::max(eig.values(k), 0.0));
  }
  return coords;
}

namespace {

Eigen::MatrixXd pair_weights(const Eigen::MatrixXd& delta) {
  const auto n = delta.rows();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && !std::isnan(delta(i, j))) w(i, j) = 1.0;
    }
  }
  return w;
}

// Upper-triangle pairs with positive weight, in row-major order.
struct PairIndex {
  std::vector<Eigen::Index> row;
  std::vector<Eigen::Index> col;
  std::size_t size() const { return row.size(); }
};

PairIndex weighted_pairs(const Eigen::MatrixXd& w) {
  PairIndex p;
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < w.cols(); ++j) {
      if (w(i, j) > 0.0) {
        p.row.push_back(i);
        p.col.push_back(j);
      }
    }
  }
  return p;
}

double weighted_sum_sq(const Eigen::MatrixXd& m, const Eigen::MatrixXd& w) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (w(i, j) > 0.0) s += w(i, j) * m(i, j) * m(i, j);
    }
  }
  return s;
}

double stress_of(const Eigen::MatrixXd& dhat, const Eigen::MatrixXd& dist, const Eigen::MatrixXd& w) {
  double num = 0.0;
  double den = 0.0;
  for (Eigen::Index i = 0; i < dhat.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < dhat.cols(); ++j) {
      if (w(i, j) <= 0.0) continue;
      const double r = dhat(i, j) - dist(i, j);
      num += w(i, j) * r * r;
      den += w(i, j) * dhat(i, j) * dhat(i, j);
    }
  }
  return den > 0.0 ? num / den : 0.0;
}

// Finds the disparities closest (weighted least squares) to the current
// distances within the cone of the measurement level, then rescales them to
// the fixed normalization. Projection followed by rescaling is the exact
// minimizer of normalized stress over the cone, so stress never rises.
class DisparityFitter {
 public:
  DisparityFitter(const Eigen::MatrixXd& delta, const Eigen::MatrixXd& w, MeasurementLevel level, double target)
      : delta_(delta), w_(w), level_(level), target_(target), pairs_(weighted_pairs(w)) {
    const auto m = pairs_.size();
    pair_delta_.resize(m);
    pair_weight_.resize(m);
    for (std::size_t p = 0; p < m; ++p) {
      pair_delta_[p] = delta_(pairs_.row[p], pairs_.col[p]);
      pair_weight_[p] = w_(pairs_.row[p], pairs_.col[p]);
    }
    delta_min_ = *std::min_element(pair_delta_.begin(), pair_delta_.end());
  }

  Eigen::MatrixXd fit(const Eigen::MatrixXd& dist, const Eigen::MatrixXd& previous) const {
    const auto m = pairs_.size();
    std::vector<double> d(m);
    for (std::size_t p = 0; p < m; ++p) d[p] = dist(pairs_.row[p], pairs_.col[p]);

    std::vector<double> fitted;
    switch (level_) {
      case MeasurementLevel::Ratio:
        fitted = pair_delta_;
        break;
      case MeasurementLevel::Interval:
        fitted = fit_interval(d);
        break;
      case MeasurementLevel::Ordinal:
        fitted = fit_ordinal(d);
        break;
    }

    double ss = 0.0;
    for (std::size_t p = 0; p < m; ++p) ss += pair_weight_[p] * fitted[p] * fitted[p];
    if (!(ss > 0.0)) return previous;
    const double factor = std::sqrt(target_ / ss);

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(delta_.rows(), delta_.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        if (i != j && std::isnan(delta_(i, j))) out(i, j) = std::numeric_limits<double>::quiet_NaN();
      }
    }
    for (std::size_t p = 0; p < m; ++p) {
      const double v = fitted[p] * factor;
      out(pairs_.row[p], pairs_.col[p]) = v;
      out(pairs_.col[p], pairs_.row[p]) = v;
    }
    return out;
  }

 private:
  double objective(const std::vector<double>& d, double a, double b) const {
    double s = 0.0;
    for (std::size_t p = 0; p < d.size(); ++p) {
      const double r = a + b * pair_delta_[p] - d[p];
      s += pair_weight_[p] * r * r;
    }
    return s;
  }

  // Least squares a + b * delta over {b >= 0, a + b * delta_min >= 0}. The
  // optimum sits in the interior, on one of the two edges, or at the apex.
  std::vector<double> fit_interval(const std::vector<double>& d) const {
    double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t p = 0; p < d.size(); ++p) {
      const double w = pair_weight_[p];
      const double x = pair_delta_[p];
      sw += w;
      sx += w * x;
      sy += w * d[p];
      sxx += w * x * x;
      sxy += w * x * d[p];
    }

    struct Candidate {
      double a;
      double b;
    };
    std::vector<Candidate> candidates;
    candidates.push_back({0.0, 0.0});
    candidates.push_back({std::max(0.0, sy / sw), 0.0});
    // edge a = -b * delta_min
    {
      double num = 0.0, den = 0.0;
      for (std::size_t p = 0; p < d.size(); ++p) {
        const double x = pair_delta_[p] - delta_min_;
        num += pair_weight_[p] * x * d[p];
        den += pair_weight_[p] * x * x;
      }
      if (den > 0.0) {
        const double b = std::max(0.0, num / den);
        candidates.push_back({-b * delta_min_, b});
      }
    }
    const double det = sw * sxx - sx * sx;
    if (det > 1e-12 * std::max(1.0, sw * sxx)) {
      const double b = (sw * sxy - sx * sy) / det;
      const double a = (sy - b * sx) / sw;
      if (b >= 0.0 && a + b * delta_min_ >= 0.0) candidates.push_back({a, b});
    }

    Candidate best = candidates.front();
    double best_obj = objective(d, best.a, best.b);
    for (const auto& c : candidates) {
      const double obj = objective(d, c.a, c.b);
      if (obj < best_obj) {
        best_obj = obj;
        best = c;
      }
    }
    std::vector<double> out(d.size());
    for (std::size_t p = 0; p < d.size(); ++p) out[p] = std::max(0.0, best.a + best.b * pair_delta_[p]);
    return out;
  }

  // Tied proximities are untied: within a tie block pairs are ordered by
  // their current distance, so the block may take distinct values.
  std::vector<double> fit_ordinal(const std::vector<double>& d) const {
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      if (pair_delta_[x] != pair_delta_[y]) return pair_delta_[x] < pair_delta_[y];
      if (d[x] != d[y]) return d[x] < d[y];
      return x < y;
    });
    return monotone_regression(d, order, pair_weight_);
  }

  const Eigen::MatrixXd& delta_;
  const Eigen::MatrixXd& w_;
  MeasurementLevel level_;
  double target_;
  PairIndex pairs_;
  std::vector<double> pair_delta_;
  std::vector<double> pair_weight_;
  double delta_min_ = 0.0;
};

void center_columns(Eigen::MatrixXd& x) {
  if (x.rows() == 0) return;
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
}

// Moore-Penrose inverse of V = sum w_ij (e_i - e_j)(e_i - e_j)^T.
Eigen::MatrixXd guttman_pseudo_inverse(const Eigen::MatrixXd& w) {
  const auto n = w.rows();
  Eigen::MatrixXd v = -w;
  for (Eigen::Index i = 0; i < n; ++i) v(i, i) = w.row(i).sum() - w(i, i);
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::FullPivLU<Eigen::MatrixXd> lu(v + ones);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::DegenerateInput, "missing proximities split the points into unconnected groups");
  }
  return lu.inverse() - ones;
}

Eigen::MatrixXd guttman_transform(const Eigen::MatrixXd& x, const Eigen::MatrixXd& dhat, const Eigen::MatrixXd& dist,
                                  const Eigen::MatrixXd& w, const Eigen::MatrixXd& v_plus) {
  const auto n = x.rows();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || w(i, j) <= 0.0 || dist(i, j) <= 0.0) continue;
      b(i, j) = -w(i, j) * dhat(i, j) / dist(i, j);
    }
    b(i, i) = -b.row(i).sum();
  }
  return v_plus * (b * x);
}

Eigen::MatrixXd random_start(Eigen::Index n, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::MatrixXd x(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) x(i, j) = unit(rng);
  }
  return x;
}

}  // namespace

double normalized_raw_stress(const Eigen::MatrixXd& disparities, const Eigen::MatrixXd& coords) {
  return stress_of(disparities, pairwise_distances(coords), pair_weights(disparities));
}

Configuration mds(const ProximityMatrix& p, const MdsConfig& cfg) {
  const auto n = p.size();
  if (cfg.dimensions < 1) throw Error(ErrorCode::InvalidArgument, "dimensions must be >= 1");
  if (cfg.dimensions >= n) {
    throw Error(ErrorCode::DimensionTooLarge, std::to_string(cfg.dimensions) + " dimensions for " +
                                                  std::to_string(n) + " points");
  }
  if (!(cfg.epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be > 0");
  if (cfg.max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be >= 1");

  const ProximityKind kind = cfg.kind_override.value_or(p.kind());
  const ProximityMatrix input = kind == p.kind() ? p : p.with_kind(kind);
  Eigen::MatrixXd delta =
      kind == ProximityKind::Similarity ? to_dissimilarity(input).values() : input.values();

  const Eigen::MatrixXd w = pair_weights(delta);
  double max_delta = 0.0;
  double sum_delta = 0.0;
  double used = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (w(i, j) <= 0.0) continue;
      max_delta = std::max(max_delta, delta(i, j));
      sum_delta += delta(i, j);
      used += 1.0;
    }
  }
  if (!(max_delta > 0.0)) throw Error(ErrorCode::DegenerateInput, "all dissimilarities are zero or missing");

  const double target = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double norm_factor = std::sqrt(target / weighted_sum_sq(delta, w));
  delta *= norm_factor;

  const Eigen::MatrixXd v_plus = guttman_pseudo_inverse(w);

  Eigen::MatrixXd x;
  if (std::holds_alternative<ClassicalInit>(cfg.init)) {
    Eigen::MatrixXd filled = delta;
    const double mean = sum_delta / used * norm_factor;
    for (Eigen::Index i = 0; i < filled.size(); ++i) {
      if (std::isnan(filled.data()[i])) filled.data()[i] = mean;
    }
    x = classical_init(filled, cfg.dimensions);
  } else if (const auto* r = std::get_if<RandomInit>(&cfg.init)) {
    x = random_start(n, cfg.dimensions, r->seed);
  } else {
    x = std::get<ExplicitInit>(cfg.init).coords;
    if (x.rows() != n || x.cols() != cfg.dimensions) {
      throw Error(ErrorCode::InvalidArgument, "explicit start has the wrong shape");
    }
  }
  center_columns(x);
  if (!(x.norm() > 0.0)) throw Error(ErrorCode::DegenerateInput, "initial configuration collapses to a point");

  const DisparityFitter fitter(delta, w, cfg.level, target);

  // scale the start to best match the initial disparities
  Eigen::MatrixXd dist = pairwise_distances(x);
  Eigen::MatrixXd dhat = fitter.fit(dist, delta);
  {
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        num += w(i, j) * dhat(i, j) * dist(i, j);
        den += w(i, j) * dist(i, j) * dist(i, j);
      }
    }
    if (den > 0.0 && num > 0.0) {
      x *= num / den;
      dist = pairwise_distances(x);
      dhat = fitter.fit(dist, dhat);
    }
  }

  Configuration out;
  out.labels = p.labels();
  double stress = stress_of(dhat, dist, w);
  out.stress_history.push_back(stress);

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    x = guttman_transform(x, dhat, dist, w, v_plus);
    dist = pairwise_distances(x);
    dhat = fitter.fit(dist, dhat);
    const double next = stress_of(dhat, dist, w);
    out.stress_history.push_back(next);
    out.iterations_used = it;
    const double change = stress - next;
    stress = next;
    if (change < cfg.epsilon) {
      out.converged = true;
      break;
    }
  }

  center_columns(x);
  out.coords = std::move(x);
  out.stress = stress;
  out.disparities.values = std::move(dhat);
  return out;
}

ProcrustesResult procrustes_align(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::InvalidArgument, "procrustes_align needs configurations of equal shape");
  }
  const Eigen::RowVectorXd mx = x.colwise().mean();
  const Eigen::RowVectorXd my = y.colwise().mean();
  const Eigen::MatrixXd xc = x.rowwise() - mx;
  const Eigen::MatrixXd yc = y.rowwise() - my;
  const double ssx = xc.squaredNorm();
  const double ssy = yc.squaredNorm();
  if (!(ssx > 0.0) || !(ssy > 0.0)) {
    throw Error(ErrorCode::DegenerateConfiguration, "configuration has zero variance");
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(yc.transpose() * xc, Eigen::ComputeFullU | Eigen::ComputeFullV);
  ProcrustesResult out;
  out.rotation = svd.matrixU() * svd.matrixV().transpose();
  out.scale = svd.singularValues().sum() / ssy;
  const Eigen::MatrixXd fitted = out.scale * yc * out.rotation;
  const double residual = (xc - fitted).squaredNorm();
  out.congruence = std::clamp(1.0 - residual / ssx, 0.0, 1.0);
  out.aligned = fitted.rowwise() + mx;
  return out;
}

}  // namespace cocite
