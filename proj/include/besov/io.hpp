#pragma once

// File formats, run configuration and report emission.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "besov/decision.hpp"
#include "besov/sequence.hpp"
#include "besov/spectral.hpp"

namespace besov {

using Json = nlohmann::json;

enum class OutputFormat { Json, Text, Csv };
enum class RouteChoice { ClosedForm, Summability, Both };
enum class SequenceChoice { Q, P, Two };

OutputFormat parse_output_format(std::string_view text);
RouteChoice parse_route_choice(std::string_view text);
Variant parse_variant(std::string_view text);
SequenceChoice parse_sequence_choice(std::string_view text);
std::string_view to_string(RouteChoice r);

struct RunConfig {
  double cluster_tol = 1e-8;
  double boundary_tol = 1e-9;
  long probe_j_max = 400;
  long probe_window = 16;
  OutputFormat output_format = OutputFormat::Json;

  /// Throws InvalidArgument on non-positive tolerances or probe_window < 2.
  void validate() const;
  SpectralOptions spectral() const;
  DecisionOptions decision() const;
};

/// Keys missing from the object keep their defaults; unknown keys are rejected.
RunConfig parse_config(const Json& j, RunConfig base = {});
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

/// {"dim": d, "rows": [[...], ...]}; entries are JSON numbers or strings
/// such as "3/2", "-0.25", "sqrt(2)", "1/2*sqrt(3)".
InputMatrix parse_matrix(const Json& j);
InputMatrix parse_matrix_text(std::string_view text);
InputMatrix load_matrix_file(const std::filesystem::path& path);

/// {"p": .., "q": .., "r": .., "alpha": .., "n": ..}; exponents may be "inf".
EmbeddingParams parse_params(const Json& j);

struct CaseRecord {
  std::string id;
  InputMatrix matrix;
  EmbeddingParams params;
  Variant variant = Variant::Inhomogeneous;
  RouteChoice route = RouteChoice::ClosedForm;
};

/// A string "matrix" is a file path, resolved against base_dir when relative.
CaseRecord parse_case(const Json& j, const std::filesystem::path& base_dir = {});

Json to_json(const Verdict& v);
Json to_json(const AnalyzedMatrix& a);

struct CaseReport {
  std::string id;
  Variant variant = Variant::Inhomogeneous;
  RouteChoice route = RouteChoice::ClosedForm;
  std::optional<Verdict> closed_form;
  std::optional<Verdict> summability;

  /// The closed-form outcome when it ran, else the summability outcome.
  Outcome headline() const;
  /// False only when one route says Embeds and the other DoesNotEmbed.
  bool consistent() const;
  Json to_json() const;
};

CaseReport run_single(const RunConfig& config, const CaseRecord& c);

std::string render(const CaseReport& report, OutputFormat format);
std::string render_analysis(const AnalyzedMatrix& a, OutputFormat format);

struct BatchEntry {
  std::string id;
  std::optional<CaseReport> report;
  std::optional<ErrorCode> error;
  std::string message;
};

struct BatchResult {
  std::vector<BatchEntry> entries;  // sorted by id

  bool any_error() const;
  Json to_json() const;
};

/// Line-delimited CaseRecords. Each case is isolated: a failing line yields an
/// error entry and the rest still run.
BatchResult run_batch(const RunConfig& config, std::istream& lines,
                      const std::filesystem::path& base_dir = {}, unsigned threads = 0);
BatchResult run_batch_file(const RunConfig& config, const std::filesystem::path& path, unsigned threads = 0);

std::string render(const BatchResult& batch, OutputFormat format);

/// Writes "j,a_j,partial_sum" rows with 17 significant digits. The sequence is
/// a^(t) for t in {q, p, 2}, over Z for the homogeneous variant and N0
/// otherwise. For s = inf the last column is the running supremum.
void emit_probe_trace(const RunConfig& config, const CaseRecord& c, const ExtReal& s, SequenceChoice t,
                      long j_max, std::ostream& out);

int exit_code_for(Outcome o);
int exit_code_for(ErrorCode code);
constexpr int kBatchErrorExit = 3;

Json error_json(ErrorCode code, const std::string& message);

}  // namespace besov
