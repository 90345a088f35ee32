#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cocite/error.hpp"
#include "cocite/ingest.hpp"
#include "pipeline.hpp"
#include "report.hpp"

#ifndef COCITE_VERSION
#define COCITE_VERSION "unknown"
#endif

namespace cocite::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  std::string records, matrix, cooc, builtin;
  std::string kind;
  std::string level = "ratio";
  int dims = 2;
  std::string init = "classical";
  std::optional<std::uint64_t> seed;
  int max_iter = 1000;
  double epsilon = 1e-6;
  std::optional<int> factors;
  std::string rotate = "varimax";
  bool kaiser = true;
  double suppress = 0.10;
  Count threshold = 1;
  std::string diag = "raw";
  bool affiliations = false;
  std::string measure = "pearson";
  bool shift = false;
  bool to_dissim = false;
  std::optional<double> constant;
  std::string steps;
  std::string demo;
  std::string out = ".";
};

struct Input {
  Data data;
  std::string source;
  std::string sha256;
};

const std::vector<std::string> kLevels{"ratio", "interval", "ordinal"};

MeasurementLevel parse_level(const std::string& s) {
  if (s == "interval") return MeasurementLevel::Interval;
  if (s == "ordinal") return MeasurementLevel::Ordinal;
  return MeasurementLevel::Ratio;
}

ProximityKind parse_kind(const std::string& s) {
  return s == "sim" ? ProximityKind::Similarity : ProximityKind::Dissimilarity;
}

void add_out(CLI::App* app, Options& o) {
  app->add_option("--out", o.out, "Directory for artifacts and report.json")->capture_default_str();
}

void add_inputs(CLI::App* app, Options& o, bool proximity_inputs) {
  auto* r = app->add_option("--records", o.records, "Occurrence records file (doc<TAB>label[:n];...)")
                ->check(CLI::ExistingFile);
  auto* b = app->add_option("--builtin", o.builtin, "Builtin dataset")
                ->check(CLI::IsMember({"cities", "figure1", "figure2"}));
  r->excludes(b);
  if (proximity_inputs) {
    auto* m = app->add_option("--matrix", o.matrix, "Square proximity matrix CSV")->check(CLI::ExistingFile);
    auto* c = app->add_option("--cooccurrence", o.cooc, "Co-occurrence matrix CSV")->check(CLI::ExistingFile);
    r->excludes(m)->excludes(c);
    b->excludes(m)->excludes(c);
    m->excludes(c);
    app->add_option("--kind", o.kind, "Proximity kind of the input matrix")->check(CLI::IsMember({"sim", "dissim"}));
  }
}

void add_cooc_options(CLI::App* app, Options& o) {
  app->add_option("--diag", o.diag, "Diagonal of the co-occurrence matrix")
      ->check(CLI::IsMember({"raw", "zero"}))
      ->capture_default_str();
}

void add_prox_options(CLI::App* app, Options& o) {
  app->add_option("--constant", o.constant, "Constant c in c - s for similarity to dissimilarity (default: max entry)");
}

void add_mds_options(CLI::App* app, Options& o) {
  app->add_option("--level", o.level, "Measurement level")->check(CLI::IsMember(kLevels))->capture_default_str();
  app->add_option("--dims", o.dims, "Number of dimensions")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--init", o.init, "Initial configuration")
      ->check(CLI::IsMember({"classical", "random"}))
      ->capture_default_str();
  app->add_option("--seed", o.seed, "Seed for --init random");
  app->add_option("--max-iter", o.max_iter, "Iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--epsilon", o.epsilon, "Stop when stress falls by less than this")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_factor_options(CLI::App* app, Options& o) {
  app->add_option("--factors", o.factors, "Number of factors (default: eigenvalues > 1)")->check(CLI::PositiveNumber);
  app->add_option("--rotate", o.rotate, "Rotation")->check(CLI::IsMember({"none", "varimax"}))->capture_default_str();
  app->add_flag("--kaiser,!--no-kaiser", o.kaiser, "Kaiser normalization during varimax");
  app->add_option("--suppress", o.suppress, "Blank loadings below this magnitude in loadings.txt")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

void add_layout_options(CLI::App* app, Options& o) {
  app->add_option("--threshold", o.threshold, "Minimum co-occurrence count for an edge")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

std::string canonical_text(const Data& d) {
  if (const auto* a = std::get_if<OccurrenceMatrix>(&d)) return serialize_records(*a);
  if (const auto* c = std::get_if<CooccurrenceMatrix>(&d)) return serialize_cooccurrence_csv(*c);
  return serialize_square_matrix(std::get<ProximityMatrix>(d));
}

Data from_dataset(Dataset d) {
  return std::visit([](auto&& v) -> Data { return std::move(v); }, std::move(d));
}

Input builtin_input(const std::string& name) {
  Data d = from_dataset(builtin_dataset(name));
  const std::string text = canonical_text(d);
  return {std::move(d), "builtin:" + name, sha256_hex(text)};
}

Input load_input(const Options& o) {
  if (!o.builtin.empty()) return builtin_input(o.builtin);
  const std::string path = !o.records.empty() ? o.records : !o.matrix.empty() ? o.matrix : o.cooc;
  if (path.empty()) throw UsageError("an input is required (--records, --matrix, --cooccurrence or --builtin)");
  if (!o.matrix.empty() && o.kind.empty()) throw UsageError("--matrix needs --kind sim|dissim");
  const std::string text = read_text_file(path);
  const std::string hash = sha256_hex(text);
  if (!o.records.empty()) return {parse_records(text), path, hash};
  if (!o.matrix.empty()) return {parse_square_matrix(text, parse_kind(o.kind), parse_level(o.level)), path, hash};
  return {parse_cooccurrence_csv(text), path, hash};
}

StepOptions step_options(const Options& o, const Input& in) {
  StepOptions s;
  s.diagonal = o.diag == "zero" ? DiagonalPolicy::Zeroed : DiagonalPolicy::Raw;
  s.constant = o.constant;
  s.mds.dimensions = o.dims;
  s.mds.level = parse_level(o.level);
  s.mds.max_iterations = o.max_iter;
  s.mds.epsilon = o.epsilon;
  if (o.init == "random") {
    if (!o.seed) throw UsageError("--init random requires --seed");
    s.mds.init = RandomInit{*o.seed};
  }
  // A file matrix was already read with --kind; elsewhere it reinterprets.
  if (!o.kind.empty() && o.matrix.empty() && !std::holds_alternative<OccurrenceMatrix>(in.data)) {
    s.mds.kind_override = parse_kind(o.kind);
  }
  s.factors = o.factors;
  s.rotation = o.rotate == "none" ? Rotation::None : Rotation::Varimax;
  s.kaiser = o.kaiser;
  s.suppress_below = o.suppress;
  s.threshold = o.threshold;
  return s;
}

json config_json(const Options& o, const StepOptions& s) {
  json c;
  c["diag"] = o.diag;
  c["constant"] = o.constant ? json(*o.constant) : json(nullptr);
  c["level"] = o.level;
  c["kind"] = s.mds.kind_override ? json(std::string(to_string(*s.mds.kind_override))) : json(nullptr);
  c["dims"] = o.dims;
  c["init"] = o.init;
  c["seed"] = o.seed ? json(*o.seed) : json(nullptr);
  c["max_iter"] = o.max_iter;
  c["epsilon"] = o.epsilon;
  c["factors"] = o.factors ? json(*o.factors) : json("kaiser");
  c["rotate"] = o.rotate;
  c["kaiser"] = o.kaiser;
  c["suppress"] = o.suppress;
  c["threshold"] = o.threshold;
  return c;
}

std::vector<Step> parse_steps(const std::string& list) {
  std::vector<Step> steps;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto s = parse_step(item);
    if (!s) throw UsageError("unknown step '" + item + "'");
    steps.push_back(*s);
  }
  return steps;
}

std::vector<Step> prox_steps(const Options& o) {
  std::vector<Step> steps{*parse_step(o.measure)};
  if (o.shift) {
    if (o.measure != "pearson") throw UsageError("--shift applies to --measure pearson only");
    steps.push_back(Step::Shift);
  }
  if (o.to_dissim) {
    if (o.measure == "euclidean") throw UsageError("euclidean is already a dissimilarity");
    steps.push_back(Step::ToDissimilarity);
  }
  return steps;
}

void print_matrix(std::ostream& out, const ProximityMatrix& p, int decimals) {
  std::size_t width = 0;
  for (const auto& l : p.labels()) width = std::max(width, l.size());
  char buf[64];
  out << std::string(width, ' ');
  for (const auto& l : p.labels()) {
    std::snprintf(buf, sizeof buf, " %*s", decimals + 3, l.c_str());
    out << buf;
  }
  out << '\n';
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const auto& l = p.labels()[static_cast<std::size_t>(i)];
    out << l << std::string(width - l.size(), ' ');
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      std::snprintf(buf, sizeof buf, " %*.*f", decimals + 3, decimals, p.values()(i, j));
      out << buf;
    }
    out << '\n';
  }
}

int execute_command(const std::string& command, const std::vector<std::string>& args, const Options& o,
                    std::ostream& out, std::ostream& err) {
  std::vector<Step> steps;
  Options opts = o;
  std::optional<Input> loaded;

  if (command == "demo") {
    if (opts.demo == "cities-correct") {
      loaded = builtin_input("cities");
      opts.level = "ratio";
      steps = {Step::Mds};
    } else if (opts.demo == "cities-distorted") {
      loaded = builtin_input("cities");
      opts.level = "ratio";
      steps = {Step::Pearson, Step::Mds};
    } else {
      loaded = builtin_input("figure2");
      steps = {Step::Pearson, Step::Shift};
    }
  } else {
    loaded = load_input(opts);
    if (command == "build") {
      steps = {opts.affiliations ? Step::Affiliations : Step::Cooccurrence};
    } else if (command == "prox") {
      steps = prox_steps(opts);
    } else if (command == "mds") {
      steps = {Step::Mds};
    } else if (command == "factor") {
      steps = {Step::Factor};
    } else if (command == "layout") {
      if (std::holds_alternative<OccurrenceMatrix>(loaded->data)) steps.push_back(Step::Cooccurrence);
      steps.push_back(Step::Layout);
    } else {
      steps = parse_steps(opts.steps);
    }
  }

  Input& in = *loaded;
  const StepOptions so = step_options(opts, in);
  validate_chain(kind_of(in.data), steps);

  fs::create_directories(opts.out);

  json report;
  report["tool"] = "cocite";
  report["version"] = COCITE_VERSION;
  report["command"] = command;
  report["argv"] = args;
  report["input"] = {{"source", in.source}, {"sha256", in.sha256}, {"kind", std::string(kind_name(kind_of(in.data)))}};
  report["config"] = config_json(opts, so);
  std::vector<std::string> step_names;
  for (const Step s : steps) step_names.emplace_back(step_name(s));
  report["pipeline"] = step_names;
  report["steps"] = json::array();

  std::vector<std::string> outputs;
  RunContext ctx{opts.out, out, err, report, outputs};
  const Data result = execute(std::move(in.data), steps, so, ctx);

  if (command == "demo" && opts.demo == "figure3") print_matrix(out, std::get<ProximityMatrix>(result), 3);

  outputs.emplace_back("report.json");
  report["outputs"] = outputs;
  report["generated_at"] = utc_timestamp();
  write_text_file(fs::path(opts.out) / "report.json", report.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Co-occurrence and proximity analysis: multidimensional scaling, factor analysis, network layout",
               "cocite"};
  app.set_version_flag("--version", COCITE_VERSION);
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build", "Occurrence records to a co-occurrence matrix");
  add_inputs(build, o, false);
  add_cooc_options(build, o);
  build->add_flag("--affiliations", o.affiliations, "Sum per-document count products instead of counting documents");
  add_out(build, o);

  auto* prox = app.add_subcommand("prox", "Proximity matrix from occurrence records");
  add_inputs(prox, o, true);
  prox->add_option("--measure", o.measure, "Similarity or distance measure")
      ->check(CLI::IsMember({"pearson", "cosine", "jaccard", "euclidean"}))
      ->capture_default_str();
  prox->add_flag("--shift", o.shift, "Map Pearson r to (r + 1) / 2");
  prox->add_flag("--dissimilarity", o.to_dissim, "Convert the result to a dissimilarity");
  add_prox_options(prox, o);
  add_out(prox, o);

  auto* mds_cmd = app.add_subcommand("mds", "Multidimensional scaling of a proximity matrix");
  add_inputs(mds_cmd, o, true);
  add_mds_options(mds_cmd, o);
  add_out(mds_cmd, o);

  auto* factor = app.add_subcommand("factor", "Principal components of the column correlations");
  add_inputs(factor, o, false);
  add_factor_options(factor, o);
  add_out(factor, o);

  auto* layout = app.add_subcommand("layout", "Kamada-Kawai layout of the co-occurrence network");
  add_inputs(layout, o, true);
  add_cooc_options(layout, o);
  add_layout_options(layout, o);
  add_out(layout, o);

  auto* pipeline = app.add_subcommand("pipeline", "Run an explicit chain of steps");
  add_inputs(pipeline, o, true);
  pipeline->add_option("--steps", o.steps,
                       "Comma-separated steps: cooccurrence, affiliations, pearson, shift, cosine, jaccard, "
                       "euclidean, to-dissimilarity, mds, factor, layout")
      ->required();
  add_cooc_options(pipeline, o);
  add_prox_options(pipeline, o);
  add_mds_options(pipeline, o);
  add_factor_options(pipeline, o);
  add_layout_options(pipeline, o);
  add_out(pipeline, o);

  auto* demo = app.add_subcommand("demo", "Reproduce the worked examples");
  demo->add_option("name", o.demo, "Which demo")
      ->required()
      ->check(CLI::IsMember({"cities-correct", "cities-distorted", "figure3"}));
  add_out(demo, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << COCITE_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    for (const auto* sub : app.get_subcommands()) err << sub->help();
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return execute_command(command, args, o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

}  // namespace cocite::cli
