#include "cocite/layout.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <set>
#include <unordered_set>

#include "cocite/error.hpp"

namespace cocite {

WeightedGraph::WeightedGraph(Labels node_labels, std::vector<Edge> edges)
    : labels_(std::move(node_labels)), edges_(std::move(edges)) {
  std::unordered_set<std::string_view> seen_labels;
  for (const auto& l : labels_) {
    if (!seen_labels.insert(l).second) throw Error(ErrorCode::InvalidArgument, "duplicate node label '" + l + "'");
  }
  const int n = node_count();
  std::set<std::pair<int, int>> seen;
  for (auto& e : edges_) {
    if (e.from > e.to) std::swap(e.from, e.to);
    if (e.from < 0 || e.to >= n) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (e.from == e.to) throw Error(ErrorCode::InvalidArgument, "self-loop on node " + std::to_string(e.from + 1));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::InvalidArgument, "edge weights must be positive and finite");
    }
    if (!seen.emplace(e.from, e.to).second) {
      throw Error(ErrorCode::InvalidArgument,
                  "duplicate edge " + std::to_string(e.from + 1) + "-" + std::to_string(e.to + 1));
    }
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
}

std::vector<std::vector<int>> WeightedGraph::adjacency() const {
  std::vector<std::vector<int>> adj(labels_.size());
  for (const auto& e : edges_) {
    adj[static_cast<std::size_t>(e.from)].push_back(e.to);
    adj[static_cast<std::size_t>(e.to)].push_back(e.from);
  }
  return adj;
}

WeightedGraph graph_from_cooccurrence(const CooccurrenceMatrix& m, Count threshold) {
  if (threshold < 1) throw Error(ErrorCode::InvalidArgument, "edge threshold must be >= 1");
  std::vector<Edge> edges;
  const auto n = m.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (m(i, j) >= threshold) {
        edges.push_back({static_cast<int>(i), static_cast<int>(j), static_cast<double>(m(i, j))});
      }
    }
  }
  return WeightedGraph(m.labels(), std::move(edges));
}

Eigen::MatrixXd shortest_path_lengths(const WeightedGraph& g) {
  const int n = g.node_count();
  const auto adj = g.adjacency();
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::infinity());
  std::vector<int> dist(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> queue{s};
    dist[static_cast<std::size_t>(s)] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      d(s, u) = dist[static_cast<std::size_t>(u)];
      for (int v : adj[static_cast<std::size_t>(u)]) {
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return d;
}

std::vector<std::vector<int>> connected_components(const WeightedGraph& g) {
  const int n = g.node_count();
  const auto adj = g.adjacency();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::deque<int> queue{s};
    comp[static_cast<std::size_t>(s)] = id;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      out.back().push_back(u);
      for (int v : adj[static_cast<std::size_t>(u)]) {
        if (comp[static_cast<std::size_t>(v)] < 0) {
          comp[static_cast<std::size_t>(v)] = id;
          queue.push_back(v);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

double spring_energy(const Eigen::MatrixXd& positions, const Eigen::MatrixXd& hops, const KamadaKawaiConfig& cfg) {
  double e = 0.0;
  for (Eigen::Index i = 0; i < positions.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < positions.rows(); ++j) {
      const double h = hops(i, j);
      if (!std::isfinite(h) || h <= 0.0) continue;
      const double r = (positions.row(i) - positions.row(j)).norm() - cfg.edge_length * h;
      e += cfg.spring_strength / (h * h) * r * r;
    }
  }
  return e;
}

namespace {

constexpr double kMinSeparation = 1e-9;

// Relaxes one connected component in place.
class SpringSystem {
 public:
  SpringSystem(Eigen::MatrixXd hops, const KamadaKawaiConfig& cfg) : hops_(std::move(hops)), cfg_(cfg) {
    const auto n = hops_.rows();
    length_ = cfg.edge_length * hops_;
    strength_ = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i != j) strength_(i, j) = cfg.spring_strength / (hops_(i, j) * hops_(i, j));
      }
    }
    pos_.resize(n, 2);
    const double radius = n > 1 ? cfg.edge_length / (2.0 * std::sin(std::numbers::pi / static_cast<double>(n))) : 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
      pos_(i, 0) = radius * std::cos(angle);
      pos_(i, 1) = radius * std::sin(angle);
    }
  }

  const Eigen::MatrixXd& positions() const { return pos_; }
  double energy() const { return spring_energy(pos_, hops_, cfg_); }

  int relax() {
    const auto n = pos_.rows();
    if (n < 2) return 0;
    std::vector<bool> stuck(static_cast<std::size_t>(n), false);
    int passes = 0;
    while (passes < cfg_.max_passes) {
      Eigen::Index worst = -1;
      double worst_norm = cfg_.tolerance;
      for (Eigen::Index m = 0; m < n; ++m) {
        if (stuck[static_cast<std::size_t>(m)]) continue;
        const double g = gradient(m, pos_.row(m)).norm();
        if (g > worst_norm) {
          worst_norm = g;
          worst = m;
        }
      }
      if (worst < 0) break;
      ++passes;
      if (move_vertex(worst)) {
        std::fill(stuck.begin(), stuck.end(), false);
      } else {
        stuck[static_cast<std::size_t>(worst)] = true;
      }
    }
    return passes;
  }

 private:
  Eigen::Vector2d gradient(Eigen::Index m, const Eigen::RowVector2d& at) const {
    Eigen::Vector2d g = Eigen::Vector2d::Zero();
    for (Eigen::Index i = 0; i < pos_.rows(); ++i) {
      if (i == m) continue;
      const Eigen::Vector2d diff = (at - pos_.row(i)).transpose();
      const double dist = std::max(diff.norm(), kMinSeparation);
      g += 2.0 * strength_(m, i) * (1.0 - length_(m, i) / dist) * diff;
    }
    return g;
  }

  Eigen::Matrix2d hessian(Eigen::Index m) const {
    Eigen::Matrix2d h = Eigen::Matrix2d::Zero();
    for (Eigen::Index i = 0; i < pos_.rows(); ++i) {
      if (i == m) continue;
      const double dx = pos_(m, 0) - pos_(i, 0);
      const double dy = pos_(m, 1) - pos_(i, 1);
      const double dist = std::max(std::hypot(dx, dy), kMinSeparation);
      const double d3 = dist * dist * dist;
      const double k = 2.0 * strength_(m, i);
      const double l = length_(m, i);
      h(0, 0) += k * (1.0 - l * dy * dy / d3);
      h(1, 1) += k * (1.0 - l * dx * dx / d3);
      h(0, 1) += k * l * dx * dy / d3;
    }
    h(1, 0) = h(0, 1);
    return h;
  }

  // Energy of the springs attached to vertex m placed at `at`.
  double vertex_energy(Eigen::Index m, const Eigen::RowVector2d& at) const {
    double e = 0.0;
    for (Eigen::Index i = 0; i < pos_.rows(); ++i) {
      if (i == m) continue;
      const double r = (at - pos_.row(i)).norm() - length_(m, i);
      e += strength_(m, i) * r * r;
    }
    return e;
  }

  // Newton iterations on a single vertex. Returns false if no step lowered
  // the energy.
  bool move_vertex(Eigen::Index m) {
    bool moved = false;
    for (int step = 0; step < cfg_.max_newton_steps; ++step) {
      const Eigen::Vector2d g = gradient(m, pos_.row(m));
      if (g.norm() <= cfg_.tolerance) break;
      const Eigen::Matrix2d h = hessian(m);
      Eigen::Vector2d delta;
      if (h(0, 0) > 0.0 && h.determinant() > 0.0) {
        delta = -h.inverse() * g;
      } else {
        delta = -g / std::max(2.0 * strength_.row(m).sum(), 1e-12);
      }
      const double before = vertex_energy(m, pos_.row(m));
      bool accepted = false;
      for (int halving = 0; halving < 40; ++halving) {
        const Eigen::RowVector2d trial = pos_.row(m) + delta.transpose();
        if (vertex_energy(m, trial) < before) {
          pos_.row(m) = trial;
          accepted = true;
          break;
        }
        delta *= 0.5;
      }
      if (!accepted) break;
      moved = true;
    }
    return moved;
  }

  Eigen::MatrixXd hops_;
  Eigen::MatrixXd length_;
  Eigen::MatrixXd strength_;
  Eigen::MatrixXd pos_;
  const KamadaKawaiConfig& cfg_;
};

}  // namespace

LayoutResult kamada_kawai(const WeightedGraph& g, const KamadaKawaiConfig& cfg) {
  const int n = g.node_count();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "layout needs at least two nodes");
  if (!(cfg.edge_length > 0.0) || !(cfg.spring_strength > 0.0) || !(cfg.tolerance > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "spring parameters must be positive");
  }

  const Eigen::MatrixXd hops = shortest_path_lengths(g);
  const auto components = connected_components(g);
  if (components.size() > 1 && !cfg.pack_components) {
    throw Error(ErrorCode::DisconnectedGraph,
                "graph has " + std::to_string(components.size()) + " components and packing is disabled");
  }

  LayoutResult result;
  std::vector<Eigen::MatrixXd> placed;
  placed.reserve(components.size());
  double cell_w = 0.0;
  double cell_h = 0.0;
  for (const auto& comp : components) {
    const auto size = static_cast<Eigen::Index>(comp.size());
    Eigen::MatrixXd sub(size, size);
    for (Eigen::Index a = 0; a < size; ++a) {
      for (Eigen::Index b = 0; b < size; ++b) sub(a, b) = hops(comp[a], comp[b]);
    }
    SpringSystem system(sub, cfg);
    result.initial_energy += system.energy();
    result.iterations += system.relax();
    result.final_energy += system.energy();

    Eigen::MatrixXd p = system.positions();
    const Eigen::RowVector2d lo = p.colwise().minCoeff();
    p.rowwise() -= lo;
    const Eigen::RowVector2d hi = p.colwise().maxCoeff();
    cell_w = std::max(cell_w, hi(0));
    cell_h = std::max(cell_h, hi(1));
    placed.push_back(std::move(p));
  }

  result.positions.resize(n, 2);
  const auto columns = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(components.size()))));
  cell_w += cfg.edge_length;
  cell_h += cfg.edge_length;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const double ox = static_cast<double>(c % columns) * cell_w;
    const double oy = static_cast<double>(c / columns) * cell_h;
    for (std::size_t a = 0; a < components[c].size(); ++a) {
      result.positions(components[c][a], 0) = placed[c](static_cast<Eigen::Index>(a), 0) + ox;
      result.positions(components[c][a], 1) = placed[c](static_cast<Eigen::Index>(a), 1) + oy;
    }
  }
  return result;
}

}  // namespace cocite
