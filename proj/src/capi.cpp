#include "feqfactor.h"

#include "engine.hpp"
#include "errors.hpp"

#include <cstring>
#include <string>

struct feq_instance {
  feq::ParsedInstance parsed;
};

struct feq_result {
  int status = 0;
  std::string report;
  std::string message;
};

namespace {

char* dup_cstr(const std::string& s) {
  char* p = new char[s.size() + 1];
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

feq_status parse_common(const char* text_or_path, bool is_path, feq_instance** out, char** err) {
  if (err) *err = nullptr;
  if (out) *out = nullptr;
  if (!text_or_path || !out) {
    if (err) *err = dup_cstr("null argument");
    return FEQ_ERR_INVALID;
  }
  try {
    feq::ParsedInstance p = is_path ? feq::parse_instance_file(text_or_path)
                                    : feq::parse_instance_text(text_or_path);
    *out = new feq_instance{std::move(p)};
    return FEQ_OK;
  } catch (const feq::invalid_input& e) {
    if (err) *err = dup_cstr(e.what());
    return FEQ_ERR_INVALID;
  } catch (const std::exception& e) {
    if (err) *err = dup_cstr(e.what());
    return FEQ_ERR_INTERNAL;
  }
}

} // namespace

extern "C" {

void feq_options_init(feq_options* opt) {
  if (!opt) return;
  opt->side = nullptr;
  opt->base = nullptr;
  opt->tie_break = nullptr;
  opt->enumerate_limit = 0;
  opt->format = nullptr;
  opt->function_file = nullptr;
  opt->function_json = nullptr;
  opt->restrict_file = nullptr;
  opt->restrict_json = nullptr;
}

feq_status feq_instance_parse_file(const char* path, feq_instance** out, char** err) {
  return parse_common(path, true, out, err);
}

feq_status feq_instance_parse_string(const char* text, feq_instance** out, char** err) {
  return parse_common(text, false, out, err);
}

const char* feq_instance_name(const feq_instance* ins) {
  return ins ? ins->parsed.name.c_str() : nullptr;
}

const char* feq_instance_kind(const feq_instance* ins) {
  return ins ? ins->parsed.kind.c_str() : nullptr;
}

char* feq_instance_emit(const feq_instance* ins) {
  if (!ins) return nullptr;
  try {
    return dup_cstr(feq::emit_instance_text(ins->parsed));
  } catch (const std::exception&) {
    return nullptr;
  }
}

char* feq_instance_digest(const feq_instance* ins) {
  if (!ins) return nullptr;
  try {
    return dup_cstr(feq::instance_digest(ins->parsed));
  } catch (const std::exception&) {
    return nullptr;
  }
}

void feq_instance_free(feq_instance* ins) { delete ins; }

feq_status feq_run(const feq_instance* ins, const char* command, const feq_options* opt,
                   feq_result** out) {
  if (!out) return FEQ_ERR_INVALID;
  feq_result* res = new feq_result;
  *out = res;
  if (!ins || !command) {
    res->status = FEQ_ERR_INVALID;
    res->message = "null argument";
    return FEQ_ERR_INVALID;
  }
  try {
    feq::RunOptions ro;
    if (opt) {
      if (opt->side) ro.side = opt->side;
      if (opt->base) ro.base = std::string(opt->base);
      if (opt->tie_break) ro.tie_break = opt->tie_break;
      if (opt->enumerate_limit > 0) ro.enumerate_limit = opt->enumerate_limit;
      if (opt->format) ro.format = opt->format;
      if (opt->function_file) ro.function_file = std::string(opt->function_file);
      if (opt->function_json) ro.function_json = std::string(opt->function_json);
      if (opt->restrict_file) ro.restrict_file = std::string(opt->restrict_file);
      if (opt->restrict_json) ro.restrict_json = std::string(opt->restrict_json);
    }
    feq::RunOutcome outcome = feq::run_command(ins->parsed, command, ro);
    res->status = outcome.status;
    res->report = std::move(outcome.report);
    res->message = std::move(outcome.message);
  } catch (const std::exception& e) {
    res->status = FEQ_ERR_INTERNAL;
    res->message = e.what();
  }
  return static_cast<feq_status>(res->status);
}

int feq_result_status(const feq_result* res) { return res ? res->status : FEQ_ERR_INVALID; }

const char* feq_result_report(const feq_result* res) {
  return res && !res->report.empty() ? res->report.c_str() : nullptr;
}

const char* feq_result_message(const feq_result* res) {
  return res && !res->message.empty() ? res->message.c_str() : nullptr;
}

void feq_result_free(feq_result* res) { delete res; }

void feq_string_free(char* s) { delete[] s; }

const char* feq_version(void) { return "1.0.0"; }

} // extern "C"
