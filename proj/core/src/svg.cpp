#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cocite/error.hpp"
#include "cocite/layout.hpp"

namespace cocite {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Maps layout coordinates into the drawable area, preserving aspect ratio.
struct Viewport {
  Viewport(const Eigen::MatrixXd& p, const SvgStyle& style) : style_(style) {
    lo_ = p.colwise().minCoeff();
    const Eigen::RowVector2d hi = p.colwise().maxCoeff();
    const double span_x = hi(0) - lo_(0);
    const double span_y = hi(1) - lo_(1);
    const double avail_x = style.width - 2.0 * style.margin;
    const double avail_y = style.height - 2.0 * style.margin;
    scale_ = 1.0;
    if (span_x > 0.0 || span_y > 0.0) {
      scale_ = std::min(span_x > 0.0 ? avail_x / span_x : INFINITY, span_y > 0.0 ? avail_y / span_y : INFINITY);
    }
    off_x_ = style.margin + 0.5 * (avail_x - span_x * scale_);
    off_y_ = style.margin + 0.5 * (avail_y - span_y * scale_);
  }

  double x(double v) const { return off_x_ + (v - lo_(0)) * scale_; }
  // SVG's y axis points down
  double y(double v) const { return style_.height - (off_y_ + (v - lo_(1)) * scale_); }

 private:
  const SvgStyle& style_;
  Eigen::RowVector2d lo_;
  double scale_;
  double off_x_;
  double off_y_;
};

std::string header(const SvgStyle& style) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n"
                "<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n",
                style.width, style.height, style.width, style.height);
  return buf;
}

void append_nodes(std::string& out, const Labels& labels, const Eigen::MatrixXd& p, const Viewport& vp,
                  const SvgStyle& style) {
  char buf[256];
  out += "<g fill=\"#1f4e79\">\n";
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\"/>\n", vp.x(p(i, 0)), vp.y(p(i, 1)),
                  style.node_radius);
    out += buf;
  }
  out += "</g>\n";
  std::snprintf(buf, sizeof buf, "<g font-family=\"sans-serif\" font-size=\"%.1f\" fill=\"black\">\n",
                style.font_size);
  out += buf;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\">", vp.x(p(i, 0)) + style.node_radius + 2.0,
                  vp.y(p(i, 1)) - style.node_radius);
    out += buf;
    out += xml_escape(labels[static_cast<std::size_t>(i)]);
    out += "</text>\n";
  }
  out += "</g>\n";
}

}  // namespace

double stroke_width(double weight, double min_weight, double max_weight, const SvgStyle& style) {
  if (!(max_weight > min_weight)) return 0.5 * (style.min_stroke_px + style.max_stroke_px);
  const double t = (weight - min_weight) / (max_weight - min_weight);
  return style.min_stroke_px + t * (style.max_stroke_px - style.min_stroke_px);
}

std::string export_svg(const WeightedGraph& g, const Eigen::MatrixXd& positions, const SvgStyle& style) {
  if (positions.rows() != g.node_count() || positions.cols() < 2) {
    throw Error(ErrorCode::InvalidArgument, "positions do not match the graph");
  }
  const Eigen::MatrixXd p = positions.leftCols(2);
  const Viewport vp(p, style);

  double min_w = INFINITY;
  double max_w = -INFINITY;
  for (const auto& e : g.edges()) {
    min_w = std::min(min_w, e.weight);
    max_w = std::max(max_w, e.weight);
  }

  std::string out = header(style);
  char buf[256];
  out += "<g stroke=\"#7f7f7f\" stroke-linecap=\"round\">\n";
  for (const auto& e : g.edges()) {
    std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke-width=\"%.3f\"/>\n",
                  vp.x(p(e.from, 0)), vp.y(p(e.from, 1)), vp.x(p(e.to, 0)), vp.y(p(e.to, 1)),
                  stroke_width(e.weight, min_w, max_w, style));
    out += buf;
  }
  out += "</g>\n";
  append_nodes(out, g.node_labels(), p, vp, style);
  out += "</svg>\n";
  return out;
}

std::string export_points_svg(const Labels& labels, const Eigen::MatrixXd& positions, std::string_view title,
                              const SvgStyle& style) {
  if (positions.rows() != static_cast<Eigen::Index>(labels.size()) || positions.cols() < 1) {
    throw Error(ErrorCode::InvalidArgument, "positions do not match the labels");
  }
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(positions.rows(), 2);
  p.leftCols(std::min<Eigen::Index>(2, positions.cols())) = positions.leftCols(std::min<Eigen::Index>(2, positions.cols()));
  const Viewport vp(p, style);

  std::string out = header(style);
  char buf[256];
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"%.1f\">",
                style.margin, 0.5 * style.margin, style.font_size + 2.0);
  out += buf;
  out += xml_escape(title);
  out += "</text>\n";
  append_nodes(out, labels, p, vp, style);
  out += "</svg>\n";
  return out;
}

}  // namespace cocite
