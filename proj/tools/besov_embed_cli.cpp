#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "besov_embed.h"
#include "json.hpp"

namespace {

using Json = nlohmann::json;

constexpr int kUsageExit = BSV_INVALID_ARGUMENT;
constexpr int kBatchErrorExit = 3;

struct CaseFlags {
  std::string case_file;
  std::string matrix;
  std::string p = "2", q = "2", r = "2", alpha = "0", n = "0";
  std::string variant = "inhomogeneous";
  std::string route = "closed_form";
  std::string id = "cli";
};

struct Common {
  std::string config;
  std::string format;
};

void add_case_flags(CLI::App* cmd, CaseFlags& f) {
  cmd->add_option("--case", f.case_file, "JSON file holding one case record");
  cmd->add_option("--matrix", f.matrix, "matrix JSON file, or inline JSON");
  cmd->add_option("--p", f.p, "integrability exponent p")->capture_default_str();
  cmd->add_option("--q", f.q, "Sobolev exponent q")->capture_default_str();
  cmd->add_option("--r", f.r, "fine index r")->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "smoothness alpha (rational, decimal or sqrt(k) form)")->capture_default_str();
  cmd->add_option("--n", f.n, "Sobolev order n")->capture_default_str();
  cmd->add_option("--variant", f.variant, "homogeneous | inhomogeneous")->capture_default_str();
  cmd->add_option("--route", f.route, "closed_form | summability | both")->capture_default_str();
  cmd->add_option("--id", f.id, "case id used in reports")->capture_default_str();
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "JSON run configuration");
  cmd->add_option("--format", c.format, "json | text | csv");
}

int report_error(bsv_status st) {
  std::cerr << bsv_last_error_json() << "\n";
  return static_cast<int>(st);
}

int usage_error(const std::string& message) {
  Json j = {{"error", {{"code", "InvalidArgument"}, {"exit_code", kUsageExit}, {"message", message}}}};
  std::cerr << j.dump() << "\n";
  return kUsageExit;
}

std::string slurp(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  ok = static_cast<bool>(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Returns the case record JSON text, or an empty string after printing an error.
std::string case_json(const CaseFlags& f, int& exit_code) {
  if (!f.case_file.empty()) {
    bool ok = false;
    std::string text = slurp(f.case_file, ok);
    if (!ok) {
      Json j = {{"error", {{"code", "IoError"}, {"exit_code", BSV_IO_ERROR}, {"message", "cannot open " + f.case_file}}}};
      std::cerr << j.dump() << "\n";
      exit_code = BSV_IO_ERROR;
      return {};
    }
    return text;
  }
  if (f.matrix.empty()) {
    exit_code = usage_error("either --case or --matrix is required");
    return {};
  }
  Json matrix;
  if (f.matrix.find('{') != std::string::npos) {
    try {
      matrix = Json::parse(f.matrix);
    } catch (const Json::exception& e) {
      Json j = {{"error", {{"code", "ParseError"}, {"exit_code", BSV_PARSE_ERROR}, {"message", e.what()}}}};
      std::cerr << j.dump() << "\n";
      exit_code = BSV_PARSE_ERROR;
      return {};
    }
  } else {
    matrix = f.matrix;
  }
  Json c = {{"id", f.id},
            {"matrix", matrix},
            {"params", {{"p", f.p}, {"q", f.q}, {"r", f.r}, {"alpha", f.alpha}, {"n", f.n}}},
            {"variant", f.variant},
            {"route", f.route}};
  return c.dump();
}

struct ConfigHandle {
  bsv_config* cfg = bsv_config_create();
  ~ConfigHandle() { bsv_config_destroy(cfg); }
};

bsv_status setup_config(ConfigHandle& h, const Common& c) {
  if (h.cfg == nullptr) return BSV_INTERNAL;
  if (!c.config.empty()) {
    bsv_status st = bsv_config_load(h.cfg, c.config.c_str());
    if (st != BSV_OK) return st;
  }
  if (!c.format.empty()) return bsv_config_set_format(h.cfg, c.format.c_str());
  return BSV_OK;
}

int run_decide(const CaseFlags& f, const Common& c) {
  ConfigHandle h;
  if (bsv_status st = setup_config(h, c); st != BSV_OK) return report_error(st);
  int code = 0;
  const std::string text = case_json(f, code);
  if (text.empty()) return code;
  bsv_report* report = nullptr;
  if (bsv_status st = bsv_decide(h.cfg, text.c_str(), nullptr, &report); st != BSV_OK) return report_error(st);
  std::cout << bsv_report_text(report);
  const int exit = static_cast<int>(bsv_report_outcome(report));
  bsv_report_destroy(report);
  return exit;
}

int run_batch(const std::string& path, unsigned threads, const Common& c) {
  ConfigHandle h;
  if (bsv_status st = setup_config(h, c); st != BSV_OK) return report_error(st);
  char* out = nullptr;
  int any_error = 0;
  if (bsv_status st = bsv_run_batch(h.cfg, path.c_str(), threads, &out, &any_error); st != BSV_OK) {
    return report_error(st);
  }
  std::cout << out;
  bsv_string_free(out);
  return any_error ? kBatchErrorExit : 0;
}

int run_probe(const CaseFlags& f, const Common& c, const std::string& s, const std::string& t, long j_max,
              const std::string& out_path) {
  ConfigHandle h;
  if (bsv_status st = setup_config(h, c); st != BSV_OK) return report_error(st);
  int code = 0;
  const std::string text = case_json(f, code);
  if (text.empty()) return code;
  char* out = nullptr;
  bsv_status st = bsv_probe_trace(h.cfg, text.c_str(), nullptr, s.c_str(), t.c_str(), j_max,
                                  out_path.empty() ? nullptr : out_path.c_str(), &out);
  if (st != BSV_OK) return report_error(st);
  if (out != nullptr) {
    std::cout << out;
    bsv_string_free(out);
  }
  return 0;
}

int run_analyze(const std::string& matrix, const Common& c) {
  ConfigHandle h;
  if (bsv_status st = setup_config(h, c); st != BSV_OK) return report_error(st);
  bsv_matrix* m = nullptr;
  bsv_status st = matrix.find('{') != std::string::npos ? bsv_matrix_parse(matrix.c_str(), &m)
                                                        : bsv_matrix_load(matrix.c_str(), &m);
  if (st != BSV_OK) return report_error(st);
  char* out = nullptr;
  st = bsv_analyze(h.cfg, m, &out);
  bsv_matrix_destroy(m);
  if (st != BSV_OK) return report_error(st);
  std::cout << out;
  bsv_string_free(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide embeddings of anisotropic Besov spaces into Sobolev spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bsv_version()));

  CaseFlags decide_flags;
  Common decide_common;
  auto* decide = app.add_subcommand("decide", "decide one case; exit 0 embeds, 1 does not embed, 2 undecided");
  add_case_flags(decide, decide_flags);
  add_common(decide, decide_common);

  std::string batch_path;
  unsigned threads = 0;
  Common batch_common;
  auto* batch = app.add_subcommand("batch", "run a JSONL file of case records");
  batch->add_option("cases", batch_path, "JSONL file")->required();
  batch->add_option("--threads", threads, "worker threads (0 = hardware)")->capture_default_str();
  add_common(batch, batch_common);

  CaseFlags probe_flags;
  Common probe_common;
  std::string s = "1";
  std::string t = "q";
  long j_max = -1;
  std::string out_path;
  auto* probe = app.add_subcommand("probe", "write the criterion sequence and its partial sums as CSV");
  add_case_flags(probe, probe_flags);
  add_common(probe, probe_common);
  probe->add_option("--s", s, "summation exponent (rational or inf)")->capture_default_str();
  probe->add_option("--t", t, "sequence: q, p or 2")->capture_default_str();
  probe->add_option("--j-max", j_max, "last index (default: config probe_j_max)");
  probe->add_option("--out", out_path, "CSV output path (default stdout)");

  std::string analyze_matrix;
  Common analyze_common;
  auto* analyze = app.add_subcommand("analyze", "spectral report for a matrix");
  analyze->add_option("--matrix", analyze_matrix, "matrix JSON file, or inline JSON")->required();
  add_common(analyze, analyze_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  }

  if (*decide) return run_decide(decide_flags, decide_common);
  if (*batch) return run_batch(batch_path, threads, batch_common);
  if (*probe) return run_probe(probe_flags, probe_common, s, t, j_max, out_path);
  if (*analyze) return run_analyze(analyze_matrix, analyze_common);
  return kUsageExit;
}
