#include "besov/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace besov {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

Json parse_json_text(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    parse_fail(what + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

QuadSurd scalar_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return QuadSurd(Rational(j.get<std::uint64_t>()));
    return QuadSurd(Rational(j.get<std::int64_t>()));
  }
  if (j.is_number_float()) return QuadSurd(rational_from_double(j.get<double>()));
  if (j.is_string()) {
    try {
      return parse_scalar(j.get<std::string>());
    } catch (const Error& e) {
      parse_fail(where + ": " + e.what());
    }
  }
  parse_fail(where + ": expected a number or numeric string");
}

ExtReal exponent_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_ext_real(j.get<std::string>());
    QuadSurd v = scalar_from_json(j, where);
    if (!v.is_rational()) parse_fail(where + ": exponent must be rational or inf");
    return ExtReal(v.rational_part());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    parse_fail(where + ": " + e.what());
  }
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) parse_fail(where + ": missing \"" + key + "\"");
  return j.at(key);
}

Json warnings_json(const std::vector<Warning>& ws) {
  Json arr = Json::array();
  for (const auto& w : ws) arr.push_back({{"kind", warning_kind_name(w.kind)}, {"detail", w.detail}});
  return arr;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt17(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string warning_names(const std::vector<Warning>& ws) {
  std::string out;
  for (const auto& w : ws) {
    std::string name(warning_kind_name(w.kind));
    if (out.find(name) != std::string::npos) continue;
    if (!out.empty()) out += ";";
    out += name;
  }
  return out;
}

void render_verdict_text(std::ostream& os, const Verdict& v) {
  os << "  route " << to_string(v.route) << ": " << to_string(v.outcome) << "\n";
  for (const auto& c : v.trace) {
    os << "    [" << to_string(c.role) << "] " << to_string(c.status) << "  " << c.label << "  ("
       << c.clause_ref << ")\n      " << c.detail << "\n";
  }
  for (const auto& w : v.warnings) os << "    warning " << warning_kind_name(w.kind) << ": " << w.detail << "\n";
}

}  // namespace

// ---------------------------------------------------------------------------

OutputFormat parse_output_format(std::string_view text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "text") return OutputFormat::Text;
  if (text == "csv") return OutputFormat::Csv;
  parse_fail("unknown output format '" + std::string(text) + "'");
}

RouteChoice parse_route_choice(std::string_view text) {
  if (text == "closed_form") return RouteChoice::ClosedForm;
  if (text == "summability") return RouteChoice::Summability;
  if (text == "both") return RouteChoice::Both;
  parse_fail("unknown route '" + std::string(text) + "'");
}

Variant parse_variant(std::string_view text) {
  if (text == "homogeneous") return Variant::Homogeneous;
  if (text == "inhomogeneous") return Variant::Inhomogeneous;
  parse_fail("unknown variant '" + std::string(text) + "'");
}

SequenceChoice parse_sequence_choice(std::string_view text) {
  if (text == "q") return SequenceChoice::Q;
  if (text == "p") return SequenceChoice::P;
  if (text == "2") return SequenceChoice::Two;
  parse_fail("unknown sequence '" + std::string(text) + "' (expected q, p or 2)");
}

std::string_view to_string(RouteChoice r) {
  switch (r) {
    case RouteChoice::ClosedForm: return "closed_form";
    case RouteChoice::Summability: return "summability";
    case RouteChoice::Both: return "both";
  }
  return "?";
}

void RunConfig::validate() const {
  if (!(cluster_tol > 0.0) || !(boundary_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  }
  if (probe_window < 2) throw Error(ErrorCode::InvalidArgument, "probe_window must be at least 2");
  if (probe_j_max < 2 * probe_window) {
    throw Error(ErrorCode::InvalidArgument, "probe_j_max must be at least twice probe_window");
  }
}

SpectralOptions RunConfig::spectral() const {
  SpectralOptions o;
  o.cluster_tol = cluster_tol;
  return o;
}

DecisionOptions RunConfig::decision() const { return DecisionOptions{boundary_tol}; }

RunConfig parse_config(const Json& j, RunConfig base) {
  if (!j.is_object()) parse_fail("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "cluster_tol") {
        base.cluster_tol = value.get<double>();
      } else if (key == "boundary_tol") {
        base.boundary_tol = value.get<double>();
      } else if (key == "probe_j_max") {
        base.probe_j_max = value.get<long>();
      } else if (key == "probe_window") {
        base.probe_window = value.get<long>();
      } else if (key == "output_format") {
        base.output_format = parse_output_format(value.get<std::string>());
      } else {
        parse_fail("unknown config key '" + key + "'");
      }
    } catch (const Json::exception& e) {
      parse_fail("config key '" + key + "': " + e.what());
    }
  }
  base.validate();
  return base;
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
  return parse_config(parse_json_text(read_file(path), path.string()), base);
}

InputMatrix parse_matrix(const Json& j) {
  const Json& dim_j = require(j, "dim", "matrix");
  const Json& rows = require(j, "rows", "matrix");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() <= 0) parse_fail("matrix: dim must be a positive integer");
  const auto dim = static_cast<std::size_t>(dim_j.get<long long>());
  if (!rows.is_array() || rows.size() != dim) parse_fail("matrix: expected " + std::to_string(dim) + " rows");
  std::vector<QuadSurd> entries;
  entries.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || row.size() != dim) {
      parse_fail("matrix: row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
    }
    for (std::size_t k = 0; k < dim; ++k) {
      entries.push_back(scalar_from_json(row[k], "matrix[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    }
  }
  return InputMatrix(dim, std::move(entries));
}

InputMatrix parse_matrix_text(std::string_view text) { return parse_matrix(parse_json_text(text, "matrix")); }

InputMatrix load_matrix_file(const std::filesystem::path& path) {
  return parse_matrix(parse_json_text(read_file(path), path.string()));
}

EmbeddingParams parse_params(const Json& j) {
  EmbeddingParams out;
  out.p = exponent_from_json(require(j, "p", "params"), "p");
  out.q = exponent_from_json(require(j, "q", "params"), "q");
  out.r = exponent_from_json(require(j, "r", "params"), "r");
  out.alpha = scalar_from_json(require(j, "alpha", "params"), "alpha");
  const Json& n = require(j, "n", "params");
  if (n.is_number_integer() && n.get<long long>() >= 0 && n.get<long long>() <= 1000000) {
    out.n = static_cast<unsigned>(n.get<long long>());
  } else if (n.is_string()) {
    QuadSurd v = scalar_from_json(n, "n");
    const Rational& rv = v.rational_part();
    if (!v.is_rational() || rv < 0 || boost::multiprecision::denominator(rv) != 1 || rv > 1000000) {
      parse_fail("n must be a nonnegative integer");
    }
    out.n = rv.convert_to<unsigned>();
  } else {
    parse_fail("n must be a nonnegative integer");
  }
  return out;
}

CaseRecord parse_case(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) parse_fail("case must be a JSON object");
  std::string id = j.contains("id") ? j.at("id").is_string() ? j.at("id").get<std::string>() : j.at("id").dump()
                                    : std::string("case");
  const Json& mj = require(j, "matrix", "case");
  std::optional<InputMatrix> matrix;
  if (mj.is_string()) {
    std::filesystem::path path(mj.get<std::string>());
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    matrix = load_matrix_file(path);
  } else {
    matrix = parse_matrix(mj);
  }
  Json params_j = j.contains("params") ? j.at("params") : j;
  CaseRecord c{std::move(id), std::move(*matrix), parse_params(params_j), Variant::Inhomogeneous,
               RouteChoice::ClosedForm};
  try {
    if (j.contains("variant")) c.variant = parse_variant(j.at("variant").get<std::string>());
    if (j.contains("route")) c.route = parse_route_choice(j.at("route").get<std::string>());
  } catch (const Json::exception& e) {
    parse_fail(std::string("case: ") + e.what());
  }
  return c;
}

// ---------------------------------------------------------------------------

Json to_json(const Verdict& v) {
  Json trace = Json::array();
  for (const auto& c : v.trace) {
    trace.push_back({{"label", c.label},
                     {"clause_ref", c.clause_ref},
                     {"role", to_string(c.role)},
                     {"status", to_string(c.status)},
                     {"detail", c.detail}});
  }
  const auto& d = v.derived;
  Json exact = {{"n_star", to_string(d.n_star)},
                {"iso_degree", d.iso_degree_exact ? Json(to_string(*d.iso_degree_exact)) : Json(nullptr)},
                {"threshold", d.threshold_exact ? Json(to_string(*d.threshold_exact)) : Json(nullptr)}};
  return {{"outcome", to_string(v.outcome)},
          {"variant", to_string(v.variant)},
          {"route", to_string(v.route)},
          {"trace", std::move(trace)},
          {"warnings", warnings_json(v.warnings)},
          {"derived",
           {{"n_star", d.n_star.to_double()},
            {"q_nabla", to_string(d.q_nabla)},
            {"iso_degree", d.iso_degree},
            {"threshold", d.threshold},
            {"exact", std::move(exact)}}}};
}

Json to_json(const AnalyzedMatrix& a) {
  Json clusters = Json::array();
  for (const auto& c : a.clusters) {
    Json reps = Json::array();
    for (const auto& r : c.representatives) {
      reps.push_back({{"re", r.value.real()},
                      {"im", r.value.imag()},
                      {"conjugate_pair", r.conjugate_pair},
                      {"algebraic", r.algebraic},
                      {"geometric", r.geometric},
                      {"max_block", r.max_block}});
    }
    clusters.push_back({{"modulus", c.modulus},
                        {"algebraic_multiplicity", c.algebraic_multiplicity},
                        {"geometric_multiplicity", c.geometric_multiplicity},
                        {"max_jordan_block", c.max_jordan_block},
                        {"representatives", std::move(reps)}});
  }
  Json out = {{"dim", a.matrix.dim()},
              {"det_abs", a.det_abs},
              {"lambda_max", a.lambda_max},
              {"is_expansive", a.is_expansive},
              {"clusters", std::move(clusters)},
              {"warnings", warnings_json(a.warnings)}};
  if (a.is_expansive) {
    const NormalForm nf = expansive_normal_form(a);
    Json eig = Json::array();
    for (const auto& e : nf.eigenvalues) {
      eig.push_back({{"original_modulus", e.original_modulus},
                     {"eigenvalue", e.eigenvalue},
                     {"algebraic", e.algebraic},
                     {"geometric", e.geometric},
                     {"max_block", e.max_block}});
    }
    out["is_and"] = a.is_and;
    out["isotropy_degree"] = isotropy_degree(a);
    auto exact = exact_isotropy_degree(a);
    out["isotropy_degree_exact"] = exact ? Json(to_string(*exact)) : Json(nullptr);
    out["normal_form"] = {{"scaling_exponent", nf.scaling_exponent},
                          {"eigenvalues", std::move(eig)},
                          {"det_check", nf.det_check}};
    out["normal_form_merge_affects_and"] = normal_form_merge_affects_and(a);
  } else {
    out["is_and"] = nullptr;
    out["isotropy_degree"] = nullptr;
    out["isotropy_degree_exact"] = nullptr;
    out["normal_form"] = nullptr;
  }
  return out;
}

Outcome CaseReport::headline() const { return closed_form ? closed_form->outcome : summability->outcome; }

bool CaseReport::consistent() const {
  if (!closed_form || !summability) return true;
  auto a = closed_form->outcome;
  auto b = summability->outcome;
  return !((a == Outcome::Embeds && b == Outcome::DoesNotEmbed) ||
           (a == Outcome::DoesNotEmbed && b == Outcome::Embeds));
}

Json CaseReport::to_json() const {
  if (route != RouteChoice::Both) {
    Json j = besov::to_json(closed_form ? *closed_form : *summability);
    j["id"] = id;
    return j;
  }
  return {{"id", id},
          {"outcome", to_string(headline())},
          {"variant", to_string(variant)},
          {"route", "both"},
          {"closed_form", besov::to_json(*closed_form)},
          {"summability", besov::to_json(*summability)},
          {"consistency", consistent()}};
}

CaseReport run_single(const RunConfig& config, const CaseRecord& c) {
  config.validate();
  const AnalyzedMatrix a = spectral_analyze(c.matrix, config.spectral());
  if (!a.is_expansive) throw Error(ErrorCode::NotExpansive, "case " + c.id + ": matrix is not expansive");
  CaseReport report;
  report.id = c.id;
  report.variant = c.variant;
  report.route = c.route;
  if (c.route != RouteChoice::Summability) {
    report.closed_form = decide_closed_form(a, c.params, c.variant, config.decision());
  }
  if (c.route != RouteChoice::ClosedForm) {
    report.summability = decide_via_summability(a, c.params, c.variant, config.decision());
  }
  return report;
}

std::string render(const CaseReport& report, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::Json:
      os << report.to_json().dump(2) << "\n";
      break;
    case OutputFormat::Text: {
      os << "case " << report.id << ": " << to_string(report.headline()) << " (" << to_string(report.variant)
         << ", route " << to_string(report.route) << ")\n";
      const Verdict& any = report.closed_form ? *report.closed_form : *report.summability;
      const auto& d = any.derived;
      os << "  n* = " << to_string(d.n_star) << ", q_nabla = " << to_string(d.q_nabla)
         << ", iso_degree = " << fmt17(d.iso_degree) << ", threshold = "
         << (d.threshold_exact ? to_string(*d.threshold_exact) : fmt17(d.threshold)) << "\n";
      if (report.closed_form) render_verdict_text(os, *report.closed_form);
      if (report.summability) render_verdict_text(os, *report.summability);
      if (report.route == RouteChoice::Both) os << "  consistency: " << (report.consistent() ? "true" : "false") << "\n";
      break;
    }
    case OutputFormat::Csv: {
      std::vector<Warning> ws;
      if (report.closed_form) ws = report.closed_form->warnings;
      if (report.summability) ws.insert(ws.end(), report.summability->warnings.begin(), report.summability->warnings.end());
      os << "id,variant,route,outcome,consistent,warnings\n"
         << csv_escape(report.id) << "," << to_string(report.variant) << "," << to_string(report.route) << ","
         << to_string(report.headline()) << "," << (report.consistent() ? "true" : "false") << ","
         << csv_escape(warning_names(ws)) << "\n";
      break;
    }
  }
  return os.str();
}

std::string render_analysis(const AnalyzedMatrix& a, OutputFormat format) {
  std::ostringstream os;
  if (format == OutputFormat::Json) {
    os << to_json(a).dump(2) << "\n";
    return os.str();
  }
  if (format == OutputFormat::Csv) {
    os << "modulus,algebraic,geometric,max_jordan_block\n";
    for (const auto& c : a.clusters) {
      os << fmt17(c.modulus) << "," << c.algebraic_multiplicity << "," << c.geometric_multiplicity << ","
         << c.max_jordan_block << "\n";
    }
    return os.str();
  }
  os << "dim " << a.matrix.dim() << ", |det| = " << fmt17(a.det_abs) << ", lambda_max = " << fmt17(a.lambda_max)
     << ", expansive = " << (a.is_expansive ? "yes" : "no") << "\n";
  for (const auto& c : a.clusters) {
    os << "  |lambda| = " << fmt17(c.modulus) << "  alg " << c.algebraic_multiplicity << "  geom "
       << c.geometric_multiplicity << "  block " << c.max_jordan_block << "\n";
  }
  if (a.is_expansive) {
    const NormalForm nf = expansive_normal_form(a);
    os << "  AND = " << (a.is_and ? "yes" : "no") << ", isotropy degree = " << fmt17(isotropy_degree(a))
       << ", normal-form scaling exponent = " << fmt17(nf.scaling_exponent) << "\n";
  }
  for (const auto& w : a.warnings) os << "  warning " << warning_kind_name(w.kind) << ": " << w.detail << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------

bool BatchResult::any_error() const {
  return std::any_of(entries.begin(), entries.end(), [](const BatchEntry& e) { return e.error.has_value(); });
}

Json BatchResult::to_json() const {
  Json cases = Json::array();
  std::size_t embeds = 0, no = 0, undecided = 0, errors = 0, disagreements = 0, warned = 0;
  for (const auto& e : entries) {
    if (e.error) {
      ++errors;
      Json j = error_json(*e.error, e.message);
      j["id"] = e.id;
      cases.push_back(std::move(j));
      continue;
    }
    const CaseReport& r = *e.report;
    switch (r.headline()) {
      case Outcome::Embeds: ++embeds; break;
      case Outcome::DoesNotEmbed: ++no; break;
      case Outcome::Undecided: ++undecided; break;
    }
    if (!r.consistent()) ++disagreements;
    if ((r.closed_form && !r.closed_form->warnings.empty()) || (r.summability && !r.summability->warnings.empty())) {
      ++warned;
    }
    cases.push_back(r.to_json());
  }
  return {{"cases", std::move(cases)},
          {"summary",
           {{"total", entries.size()},
            {"embeds", embeds},
            {"does_not_embed", no},
            {"undecided", undecided},
            {"errors", errors},
            {"disagreements", disagreements},
            {"with_warnings", warned}}}};
}

BatchResult run_batch(const RunConfig& config, std::istream& lines, const std::filesystem::path& base_dir,
                      unsigned threads) {
  config.validate();
  std::vector<std::pair<std::size_t, std::string>> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    raw.emplace_back(lineno, line);
  }

  std::vector<BatchEntry> entries(raw.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < raw.size(); i = next++) {
      BatchEntry& e = entries[i];
      e.id = "line:" + std::to_string(raw[i].first);
      try {
        Json j = parse_json_text(raw[i].second, "line " + std::to_string(raw[i].first));
        if (j.is_object() && j.contains("id") && j.at("id").is_string()) e.id = j.at("id").get<std::string>();
        CaseRecord c = parse_case(j, base_dir);
        e.report = run_single(config, c);
      } catch (const Error& err) {
        e.error = err.code();
        e.message = err.what();
      } catch (const std::exception& err) {
        e.error = ErrorCode::Internal;
        e.message = err.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(raw.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  // Ids must be unique within a batch; later duplicates become errors.
  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return entries[x].id < entries[y].id; });
  BatchResult out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    BatchEntry e = std::move(entries[order[k]]);
    if (k > 0 && out.entries.back().id == e.id) {
      e.report.reset();
      e.error = ErrorCode::ParseError;
      e.message = "duplicate case id '" + e.id + "'";
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

BatchResult run_batch_file(const RunConfig& config, const std::filesystem::path& path, unsigned threads) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return run_batch(config, in, path.parent_path(), threads);
}

std::string render(const BatchResult& batch, OutputFormat format) {
  std::ostringstream os;
  if (format == OutputFormat::Json) {
    os << batch.to_json().dump(2) << "\n";
    return os.str();
  }
  if (format == OutputFormat::Csv) {
    os << "id,variant,route,outcome,consistent,warnings\n";
    for (const auto& e : batch.entries) {
      if (e.error) {
        os << csv_escape(e.id) << ",,,error:" << error_code_name(*e.error) << ",," << csv_escape(e.message) << "\n";
        continue;
      }
      const CaseReport& r = *e.report;
      std::vector<Warning> ws;
      if (r.closed_form) ws = r.closed_form->warnings;
      if (r.summability) ws.insert(ws.end(), r.summability->warnings.begin(), r.summability->warnings.end());
      os << csv_escape(r.id) << "," << to_string(r.variant) << "," << to_string(r.route) << ","
         << to_string(r.headline()) << "," << (r.consistent() ? "true" : "false") << ","
         << csv_escape(warning_names(ws)) << "\n";
    }
    return os.str();
  }
  const Json summary = batch.to_json()["summary"];
  for (const auto& e : batch.entries) {
    if (e.error) {
      os << e.id << "  error " << error_code_name(*e.error) << ": " << e.message << "\n";
    } else {
      os << e.id << "  " << to_string(e.report->headline());
      if (!e.report->consistent()) os << "  (routes disagree)";
      os << "\n";
    }
  }
  os << "total " << summary["total"] << ", embeds " << summary["embeds"] << ", does_not_embed "
     << summary["does_not_embed"] << ", undecided " << summary["undecided"] << ", errors " << summary["errors"]
     << ", disagreements " << summary["disagreements"] << ", with warnings " << summary["with_warnings"] << "\n";
  return os.str();
}

void emit_probe_trace(const RunConfig& config, const CaseRecord& c, const ExtReal& s, SequenceChoice t,
                      long j_max, std::ostream& out) {
  config.validate();
  if (j_max < 0) throw Error(ErrorCode::InvalidArgument, "j_max must be nonnegative");
  const AnalyzedMatrix a = spectral_analyze(c.matrix, config.spectral());
  const ExtReal tt = t == SequenceChoice::Q ? c.params.q : t == SequenceChoice::P ? c.params.p : ExtReal(2);
  const Domain domain = c.variant == Variant::Homogeneous ? Domain::Integers : Domain::Naturals;
  const SequenceSpec spec = build_sequence_spec(a, c.params, tt, domain);
  out << "j,a_j,partial_sum\n";
  for (const auto& row : probe_rows(spec, a, s, j_max)) {
    out << row.j << "," << fmt17(std::exp(row.log_term)) << "," << fmt17(std::exp(row.log_partial_sum)) << "\n";
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing probe trace");
}

int exit_code_for(Outcome o) {
  switch (o) {
    case Outcome::Embeds: return 0;
    case Outcome::DoesNotEmbed: return 1;
    case Outcome::Undecided: return 2;
  }
  return 2;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return 64;
    case ErrorCode::InvalidArgument: return 65;
    case ErrorCode::NotExpansive: return 66;
    case ErrorCode::SingularMatrix: return 67;
    case ErrorCode::EigenSolverFailure: return 68;
    case ErrorCode::NotAnEigenvalue: return 69;
    case ErrorCode::Overflow: return 70;
    case ErrorCode::IllConditioned: return 71;
    case ErrorCode::IoError: return 74;
    case ErrorCode::Internal: return 75;
  }
  return 75;
}

Json error_json(ErrorCode code, const std::string& message) {
  return {{"error", {{"code", error_code_name(code)}, {"exit_code", exit_code_for(code)}, {"message", message}}}};
}

}  // namespace besov
