#include "pipeline.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cocite/ingest.hpp"
#include "cocite/proximity.hpp"
#include "report.hpp"

namespace cocite::cli {

namespace {

constexpr std::array<std::pair<Step, std::string_view>, 11> kStepNames{{
    {Step::Cooccurrence, "cooccurrence"},
    {Step::Affiliations, "affiliations"},
    {Step::Pearson, "pearson"},
    {Step::Shift, "shift"},
    {Step::Cosine, "cosine"},
    {Step::Jaccard, "jaccard"},
    {Step::Euclidean, "euclidean"},
    {Step::ToDissimilarity, "to-dissimilarity"},
    {Step::Mds, "mds"},
    {Step::Factor, "factor"},
    {Step::Layout, "layout"},
}};

std::optional<DataKind> transition(DataKind in, Step s) {
  using K = DataKind;
  switch (s) {
    case Step::Cooccurrence:
    case Step::Affiliations:
      if (in == K::Occurrence) return K::Cooccurrence;
      break;
    case Step::Pearson:
      if (in == K::Occurrence || in == K::Cooccurrence || in == K::Similarity || in == K::Dissimilarity) {
        return K::Similarity;
      }
      break;
    case Step::Shift:
      if (in == K::Similarity) return K::Similarity;
      break;
    case Step::Cosine:
    case Step::Jaccard:
      if (in == K::Occurrence) return K::Similarity;
      break;
    case Step::Euclidean:
      if (in == K::Occurrence) return K::Dissimilarity;
      break;
    case Step::ToDissimilarity:
      if (in == K::Similarity || in == K::Cooccurrence) return K::Dissimilarity;
      break;
    case Step::Mds:
      if (in == K::Similarity || in == K::Dissimilarity || in == K::Cooccurrence) return K::Terminal;
      break;
    case Step::Factor:
      if (in == K::Occurrence) return K::Terminal;
      break;
    case Step::Layout:
      if (in == K::Cooccurrence) return K::Terminal;
      break;
  }
  return std::nullopt;
}

std::string csv_label(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string coordinates_csv(const Labels& labels, const Eigen::MatrixXd& coords) {
  std::string out = "label";
  for (Eigen::Index k = 0; k < coords.cols(); ++k) out += ",D" + std::to_string(k + 1);
  out += '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < coords.rows(); ++i) {
    out += csv_label(labels[static_cast<std::size_t>(i)]);
    for (Eigen::Index k = 0; k < coords.cols(); ++k) {
      std::snprintf(buf, sizeof buf, ",%.17g", coords(i, k));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

ProximityMatrix as_proximity(const Data& d, MeasurementLevel level) {
  if (const auto* c = std::get_if<CooccurrenceMatrix>(&d)) return as_similarity(*c, level);
  return std::get<ProximityMatrix>(d).with_level(level);
}

class Runner {
 public:
  Runner(const StepOptions& opts, RunContext& ctx) : opts_(opts), ctx_(ctx) {}

  void emit(const std::string& name, std::string_view content) {
    write_text_file(ctx_.out_dir / name, content);
    ctx_.outputs.push_back(name);
  }

  void write_matrix(const Data& d) {
    if (const auto* a = std::get_if<OccurrenceMatrix>(&d)) {
      emit("occurrence.tsv", serialize_records(*a));
    } else if (const auto* c = std::get_if<CooccurrenceMatrix>(&d)) {
      emit("cooccurrence.csv", serialize_cooccurrence_csv(*c));
    } else {
      emit("proximity.csv", serialize_square_matrix(std::get<ProximityMatrix>(d)));
    }
  }

  std::optional<Data> apply(Step step, const Data& in, nlohmann::json& record) {
    switch (step) {
      case Step::Cooccurrence:
        return cooccurrence(std::get<OccurrenceMatrix>(in), opts_.diagonal);
      case Step::Affiliations:
        return affiliations(std::get<OccurrenceMatrix>(in));
      case Step::Pearson:
        if (const auto* a = std::get_if<OccurrenceMatrix>(&in)) return pearson_columns(*a);
        ctx_.err << "warning: correlating the columns of a proximity matrix distorts it; the input is already "
                    "suitable for mapping as it is\n";
        record["distortion_warning"] = true;
        return pearson_of_proximities(as_proximity(in, MeasurementLevel::Ratio));
      case Step::Shift:
        return shift_pearson(std::get<ProximityMatrix>(in));
      case Step::Cosine:
        return cosine_columns(std::get<OccurrenceMatrix>(in));
      case Step::Jaccard: {
        std::vector<std::string> empty;
        auto result = jaccard_columns(std::get<OccurrenceMatrix>(in), &empty);
        for (const auto& label : empty) ctx_.err << "warning: column '" << label << "' has no occurrences\n";
        return result;
      }
      case Step::Euclidean:
        return euclidean_columns(std::get<OccurrenceMatrix>(in));
      case Step::ToDissimilarity:
        return to_dissimilarity(as_proximity(in, MeasurementLevel::Ratio), opts_.constant);
      case Step::Mds:
        run_mds(as_proximity(in, opts_.mds.level), record);
        return std::nullopt;
      case Step::Factor:
        run_factor(std::get<OccurrenceMatrix>(in), record);
        return std::nullopt;
      case Step::Layout:
        run_layout(std::get<CooccurrenceMatrix>(in), record);
        return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  void run_mds(const ProximityMatrix& p, nlohmann::json& record) {
    const Configuration c = mds(p, opts_.mds);
    record["stress"] = c.stress;
    record["kruskal_stress_1"] = std::sqrt(c.stress);
    record["iterations"] = c.iterations_used;
    record["converged"] = c.converged;
    record["dimensions"] = opts_.mds.dimensions;
    record["level"] = std::string(to_string(opts_.mds.level));
    record["kind"] = std::string(to_string(opts_.mds.kind_override.value_or(p.kind())));
    ctx_.out << "mds: normalized raw stress " << format_stress(c.stress) << " after " << c.iterations_used
             << " iterations" << (c.converged ? "" : " (not converged)") << '\n';
    emit("coordinates.csv", coordinates_csv(c.labels, c.coords));
    emit("map.svg", export_points_svg(c.labels, c.coords, "MDS map, normalized raw stress " + format_stress(c.stress)));
  }

  void run_factor(const OccurrenceMatrix& a, nlohmann::json& record) {
    LoadingsMatrix l = pca_from_occurrence(a, opts_.factors);
    if (opts_.rotation == Rotation::Varimax && l.n_factors() >= 2) {
      l = varimax(l, VarimaxOptions{.kaiser_normalize = opts_.kaiser});
    } else if (opts_.rotation == Rotation::Varimax) {
      ctx_.err << "warning: a single factor cannot be rotated\n";
    }
    record["factors"] = l.n_factors();
    record["rotation"] = std::string(to_string(l.rotation));
    record["rotation_iterations"] = l.rotation_iterations;
    record["kaiser_normalization"] = opts_.kaiser;
    record["eigenvalues"] = std::vector<double>(l.eigenvalues.data(), l.eigenvalues.data() + l.eigenvalues.size());
    record["explained_variance_pct"] = l.explained_variance_pct;

    std::ostringstream csv;
    write_loadings_csv(csv, l);
    emit("loadings.csv", csv.str());
    const std::string table = format_loadings_table(l, opts_.suppress_below);
    emit("loadings.txt", table);
    ctx_.out << table;
    if (l.n_factors() >= 2) {
      emit("factor_plot.svg", export_points_svg(l.variable_labels, factor_scatter_coords(l, 2), "Factor loadings F1 x F2"));
    }
  }

  void run_layout(const CooccurrenceMatrix& m, nlohmann::json& record) {
    const WeightedGraph g = graph_from_cooccurrence(m, opts_.threshold);
    const LayoutResult r = kamada_kawai(g, opts_.layout);
    record["nodes"] = g.node_count();
    record["edges"] = g.edges().size();
    record["threshold"] = opts_.threshold;
    record["initial_energy"] = r.initial_energy;
    record["final_energy"] = r.final_energy;
    record["iterations"] = r.iterations;
    ctx_.out << "layout: " << g.node_count() << " nodes, " << g.edges().size() << " edges, energy "
             << r.initial_energy << " -> " << r.final_energy << " in " << r.iterations << " vertex moves\n";
    emit("graph.net", export_pajek(g, r.positions));
    emit("layout.svg", export_svg(g, r.positions));
  }

  static std::string format_stress(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", s);
    return buf;
  }

  const StepOptions& opts_;
  RunContext& ctx_;
};

}  // namespace

std::optional<Step> parse_step(std::string_view name) {
  for (const auto& [step, n] : kStepNames) {
    if (n == name) return step;
  }
  return std::nullopt;
}

std::string_view step_name(Step s) {
  for (const auto& [step, n] : kStepNames) {
    if (step == s) return n;
  }
  return "?";
}

std::string_view kind_name(DataKind k) {
  switch (k) {
    case DataKind::Occurrence: return "occurrence matrix";
    case DataKind::Cooccurrence: return "co-occurrence matrix";
    case DataKind::Similarity: return "similarity matrix";
    case DataKind::Dissimilarity: return "dissimilarity matrix";
    case DataKind::Terminal: return "final result";
  }
  return "?";
}

DataKind kind_of(const Data& d) {
  if (std::holds_alternative<OccurrenceMatrix>(d)) return DataKind::Occurrence;
  if (std::holds_alternative<CooccurrenceMatrix>(d)) return DataKind::Cooccurrence;
  return std::get<ProximityMatrix>(d).kind() == ProximityKind::Similarity ? DataKind::Similarity
                                                                           : DataKind::Dissimilarity;
}

void validate_chain(DataKind input, const std::vector<Step>& steps) {
  if (steps.empty()) throw UsageError("no steps given");
  DataKind current = input;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto next = transition(current, steps[i]);
    if (!next) {
      throw UsageError("step " + std::to_string(i + 1) + " '" + std::string(step_name(steps[i])) +
                       "' cannot take a " + std::string(kind_name(current)));
    }
    current = *next;
  }
}

Data execute(Data input, const std::vector<Step>& steps, const StepOptions& opts, RunContext& ctx) {
  validate_chain(kind_of(input), steps);
  Runner runner(opts, ctx);
  auto& records = ctx.report["steps"];
  if (!records.is_array()) records = nlohmann::json::array();

  Data current = std::move(input);
  bool terminal = false;
  for (const Step step : steps) {
    nlohmann::json record;
    record["step"] = std::string(step_name(step));
    auto next = runner.apply(step, current, record);
    records.push_back(std::move(record));
    if (next) {
      current = std::move(*next);
    } else {
      terminal = true;
    }
  }
  if (!terminal) runner.write_matrix(current);
  return current;
}

}  // namespace cocite::cli
