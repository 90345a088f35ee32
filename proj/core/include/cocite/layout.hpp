#pragma once

// Network maps of co-occurrence data: thresholded graphs, Kamada-Kawai
// spring embedding, Pajek .net and SVG output.
//
// Layout depends only on which edges exist. Edge weights are carried along
// for drawing line widths and never influence positions.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cocite/matrix.hpp"

namespace cocite {

struct Edge {
  int from = 0;  // from < to
  int to = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected graph without self-loops or parallel edges.
class WeightedGraph {
 public:
  /// Throws Error(InvalidArgument) on out-of-range endpoints, self-loops,
  /// duplicate edges, non-positive weights or duplicate labels. Edges are
  /// stored with from < to, sorted.
  WeightedGraph(Labels node_labels, std::vector<Edge> edges);

  const Labels& node_labels() const noexcept { return labels_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  int node_count() const noexcept { return static_cast<int>(labels_.size()); }

  /// Neighbour lists of the unweighted adjacency.
  std::vector<std::vector<int>> adjacency() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  Labels labels_;
  std::vector<Edge> edges_;
};

/// Edge (i, j) iff M[i][j] >= threshold, weighted by the count. Isolated
/// nodes are kept. Throws Error(InvalidArgument) for threshold < 1.
WeightedGraph graph_from_cooccurrence(const CooccurrenceMatrix& m, Count threshold = 1);

/// Breadth-first hop counts; +infinity between different components.
Eigen::MatrixXd shortest_path_lengths(const WeightedGraph& g);

/// Connected components in order of their smallest node index.
std::vector<std::vector<int>> connected_components(const WeightedGraph& g);

struct KamadaKawaiConfig {
  double spring_strength = 1.0;  // K in k_ij = K / d_ij^2
  double edge_length = 1.0;      // L in l_ij = L * d_ij
  double tolerance = 1e-4;       // on the per-vertex gradient norm
  int max_passes = 500;          // vertex moves, counted per component
  int max_newton_steps = 200;    // per vertex move
  /// When false a disconnected graph is an error instead of being packed.
  bool pack_components = true;
};

struct LayoutResult {
  Eigen::MatrixXd positions;  // n x 2
  double initial_energy = 0.0;
  double final_energy = 0.0;
  int iterations = 0;         // vertex moves over all components
};

/// Spring energy sum_{i<j} k_ij (|x_i - x_j| - l_ij)^2 over connected
/// pairs of `hops`.
double spring_energy(const Eigen::MatrixXd& positions, const Eigen::MatrixXd& hops, const KamadaKawaiConfig& cfg);

/// Kamada-Kawai layout. Each component starts on a circle in node order and
/// is relaxed by Newton steps on the vertex with the largest gradient; steps
/// that would raise the energy are shortened or rejected. Components are
/// then packed on a grid with one edge length of padding. Throws
/// Error(InvalidArgument) for fewer than two nodes and
/// Error(DisconnectedGraph) when packing is disabled.
LayoutResult kamada_kawai(const WeightedGraph& g, const KamadaKawaiConfig& cfg = {});

/// Pajek .net text: "*Vertices n", one `id "label" [x y]` line per node
/// (1-based ids, coordinates normalized to [0, 1]), then "*Edges" and
/// `i j w` lines. Lines end in '\n'. Labels may not contain '"' or line
/// breaks (Error(InvalidArgument)).
std::string export_pajek(const WeightedGraph& g, const std::optional<Eigen::MatrixXd>& positions = std::nullopt);

struct PajekNetwork {
  WeightedGraph graph;
  std::optional<Eigen::MatrixXd> positions;
};

/// Reads the subset of Pajek written by export_pajek ("*Arcs" is read as
/// undirected edges). Throws ParseError(MalformedLine) with the line number.
PajekNetwork import_pajek(std::string_view text);

struct SvgStyle {
  double width = 800.0;
  double height = 600.0;
  double margin = 60.0;
  double min_stroke_px = 0.5;
  double max_stroke_px = 4.0;
  double node_radius = 4.0;
  double font_size = 11.0;
};

/// Linear map of a weight onto [min_stroke_px, max_stroke_px]; the midpoint
/// width when all weights are equal.
double stroke_width(double weight, double min_weight, double max_weight, const SvgStyle& style);

/// SVG 1.1 drawing of the graph: edges as lines with weight-scaled widths,
/// nodes as labelled circles.
std::string export_svg(const WeightedGraph& g, const Eigen::MatrixXd& positions, const SvgStyle& style = {});

/// SVG scatter of labelled points without edges (MDS maps, factor plots).
std::string export_points_svg(const Labels& labels, const Eigen::MatrixXd& positions, std::string_view title,
                              const SvgStyle& style = {});

}  // namespace cocite
