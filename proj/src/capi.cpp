#include "besov_embed.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "besov/io.hpp"

using namespace besov;

struct bsv_config {
  RunConfig cfg;
};

struct bsv_matrix {
  InputMatrix m;
};

struct bsv_report {
  CaseReport report;
  std::string text;
  std::string json;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_error_json;

bsv_status status_of(ErrorCode code) { return static_cast<bsv_status>(exit_code_for(code)); }

bsv_status fail(ErrorCode code, const std::string& message) {
  g_last_error = message;
  g_last_error_json = error_json(code, message).dump();
  return status_of(code);
}

template <typename F>
bsv_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    g_last_error_json.clear();
    return BSV_OK;
  } catch (const Error& e) {
    return fail(e.code(), e.what());
  } catch (const Json::exception& e) {
    return fail(ErrorCode::ParseError, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ErrorCode::Internal, "out of memory");
  } catch (const std::exception& e) {
    return fail(ErrorCode::Internal, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* bsv_version(void) { return "1.0.0"; }

const char* bsv_status_name(bsv_status status) {
  switch (status) {
    case BSV_OK: return "Ok";
    case BSV_PARSE_ERROR: return "ParseError";
    case BSV_INVALID_ARGUMENT: return "InvalidArgument";
    case BSV_NOT_EXPANSIVE: return "NotExpansive";
    case BSV_SINGULAR_MATRIX: return "SingularMatrix";
    case BSV_EIGEN_SOLVER_FAILURE: return "EigenSolverFailure";
    case BSV_NOT_AN_EIGENVALUE: return "NotAnEigenvalue";
    case BSV_OVERFLOW: return "Overflow";
    case BSV_ILL_CONDITIONED: return "IllConditioned";
    case BSV_IO_ERROR: return "IoError";
    case BSV_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* bsv_last_error(void) { return g_last_error.c_str(); }
const char* bsv_last_error_json(void) { return g_last_error_json.c_str(); }

void bsv_string_free(char* s) { std::free(s); }

bsv_config* bsv_config_create(void) {
  try {
    return new bsv_config{};
  } catch (...) {
    return nullptr;
  }
}

void bsv_config_destroy(bsv_config* config) { delete config; }

bsv_status bsv_config_apply_json(bsv_config* config, const char* json) {
  return guarded([&] {
    require(config, "config");
    require(json, "json");
    Json j;
    try {
      j = Json::parse(json);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
    }
    config->cfg = parse_config(j, config->cfg);
  });
}

bsv_status bsv_config_load(bsv_config* config, const char* path) {
  return guarded([&] {
    require(config, "config");
    require(path, "path");
    config->cfg = load_config_file(path, config->cfg);
  });
}

bsv_status bsv_config_set_format(bsv_config* config, const char* format) {
  return guarded([&] {
    require(config, "config");
    require(format, "format");
    config->cfg.output_format = parse_output_format(format);
  });
}

bsv_status bsv_matrix_parse(const char* json, bsv_matrix** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new bsv_matrix{parse_matrix_text(json)};
  });
}

bsv_status bsv_matrix_load(const char* path, bsv_matrix** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new bsv_matrix{load_matrix_file(path)};
  });
}

size_t bsv_matrix_dim(const bsv_matrix* m) { return m == nullptr ? 0 : m->m.dim(); }

void bsv_matrix_destroy(bsv_matrix* m) { delete m; }

bsv_status bsv_analyze(const bsv_config* config, const bsv_matrix* m, char** out_text) {
  return guarded([&] {
    require(config, "config");
    require(m, "matrix");
    require(out_text, "out_text");
    config->cfg.validate();
    const AnalyzedMatrix a = spectral_analyze(m->m, config->cfg.spectral());
    *out_text = dup_string(render_analysis(a, config->cfg.output_format));
  });
}

bsv_status bsv_decide(const bsv_config* config, const char* case_json, const char* base_dir, bsv_report** out) {
  return guarded([&] {
    require(config, "config");
    require(case_json, "case_json");
    require(out, "out");
    Json j;
    try {
      j = Json::parse(case_json);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("case: ") + e.what());
    }
    const CaseRecord c = parse_case(j, base_dir == nullptr ? std::filesystem::path{} : base_dir);
    auto* r = new bsv_report{run_single(config->cfg, c), {}, {}};
    try {
      r->text = render(r->report, config->cfg.output_format);
      r->json = r->report.to_json().dump();
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

bsv_outcome bsv_report_outcome(const bsv_report* report) {
  return static_cast<bsv_outcome>(exit_code_for(report->report.headline()));
}

int bsv_report_consistent(const bsv_report* report) { return report->report.consistent() ? 1 : 0; }

const char* bsv_report_text(const bsv_report* report) { return report->text.c_str(); }
const char* bsv_report_json(const bsv_report* report) { return report->json.c_str(); }

void bsv_report_destroy(bsv_report* report) { delete report; }

bsv_status bsv_run_batch(const bsv_config* config, const char* path, unsigned threads, char** out_text,
                         int* any_error) {
  return guarded([&] {
    require(config, "config");
    require(path, "path");
    require(out_text, "out_text");
    const BatchResult batch = run_batch_file(config->cfg, path, threads);
    *out_text = dup_string(render(batch, config->cfg.output_format));
    if (any_error != nullptr) *any_error = batch.any_error() ? 1 : 0;
  });
}

bsv_status bsv_probe_trace(const bsv_config* config, const char* case_json, const char* base_dir, const char* s,
                           const char* t, long j_max, const char* out_path, char** out_text) {
  return guarded([&] {
    require(config, "config");
    require(case_json, "case_json");
    require(s, "s");
    require(t, "t");
    if (out_path == nullptr) require(out_text, "out_text");
    Json j;
    try {
      j = Json::parse(case_json);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("case: ") + e.what());
    }
    const CaseRecord c = parse_case(j, base_dir == nullptr ? std::filesystem::path{} : base_dir);
    const ExtReal sv = parse_ext_real(s);
    const SequenceChoice choice = parse_sequence_choice(t);
    const long jm = j_max < 0 ? config->cfg.probe_j_max : j_max;
    if (out_path != nullptr) {
      std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
      if (!file) throw Error(ErrorCode::IoError, std::string("cannot open ") + out_path + " for writing");
      emit_probe_trace(config->cfg, c, sv, choice, jm, file);
      file.flush();
      if (!file) throw Error(ErrorCode::IoError, std::string("failed writing ") + out_path);
    } else {
      std::ostringstream os;
      emit_probe_trace(config->cfg, c, sv, choice, jm, os);
      *out_text = dup_string(os.str());
    }
  });
}

}  // extern "C"
