#pragma once

// Step chaining shared by every subcommand. Each subcommand is a fixed step
// list; `pipeline` takes the list from the command line.

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cocite/factor.hpp"
#include "cocite/layout.hpp"
#include "cocite/matrix.hpp"
#include "cocite/mds.hpp"

namespace cocite::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Step {
  Cooccurrence,
  Affiliations,
  Pearson,
  Shift,
  Cosine,
  Jaccard,
  Euclidean,
  ToDissimilarity,
  Mds,
  Factor,
  Layout,
};

std::optional<Step> parse_step(std::string_view name);
std::string_view step_name(Step s);

/// What flows between steps.
enum class DataKind { Occurrence, Cooccurrence, Similarity, Dissimilarity, Terminal };

std::string_view kind_name(DataKind k);

using Data = std::variant<OccurrenceMatrix, CooccurrenceMatrix, ProximityMatrix>;

DataKind kind_of(const Data& d);

/// Throws UsageError at the first step that cannot take the previous output.
void validate_chain(DataKind input, const std::vector<Step>& steps);

struct StepOptions {
  DiagonalPolicy diagonal = DiagonalPolicy::Raw;
  std::optional<double> constant;
  MdsConfig mds;
  std::optional<int> factors;
  Rotation rotation = Rotation::Varimax;
  bool kaiser = true;
  double suppress_below = 0.10;
  Count threshold = 1;
  KamadaKawaiConfig layout;
};

struct RunContext {
  std::filesystem::path out_dir;
  std::ostream& out;
  std::ostream& err;
  nlohmann::json& report;  // steps are appended to report["steps"]
  std::vector<std::string>& outputs;
};

/// Runs the steps, writing artifacts into ctx.out_dir. Returns the last
/// non-terminal value, which is also written out when the chain does not end
/// in a terminal step.
Data execute(Data input, const std::vector<Step>& steps, const StepOptions& opts, RunContext& ctx);

}  // namespace cocite::cli
