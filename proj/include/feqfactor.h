#ifndef FEQFACTOR_H
#define FEQFACTOR_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum feq_status {
  FEQ_OK = 0,
  FEQ_ERR_HYPOTHESIS = 1, /* a stated hypothesis fails; message names the witness */
  FEQ_ERR_INVALID = 2,    /* malformed input, unknown command, bad flag */
  FEQ_ERR_INTERNAL = 3    /* invariant violation; always a bug */
} feq_status;

typedef struct feq_instance feq_instance;
typedef struct feq_result feq_result;

/* NULL pointer fields mean "not given"; call feq_options_init first. */
typedef struct feq_options {
  const char* side;          /* "J" | "K" | "both"; default "K" */
  const char* base;          /* base element text, e.g. "0" or "1/2" */
  const char* tie_break;     /* "first" | "last"; default "first" */
  int64_t enumerate_limit;   /* 0 means the default 4096 */
  const char* format;        /* "text" | "json"; default "text" */
  const char* function_file; /* path to an F-function file */
  const char* function_json; /* inline F-function JSON */
  const char* restrict_file; /* path to a domain-restriction file */
  const char* restrict_json; /* inline domain-restriction JSON */
} feq_options;

void feq_options_init(feq_options* opt);

/* Parse an instance file / JSON text.  On failure *out is NULL and, when err
   is non-NULL, *err holds a message to release with feq_string_free. */
feq_status feq_instance_parse_file(const char* path, feq_instance** out, char** err);
feq_status feq_instance_parse_string(const char* text, feq_instance** out, char** err);

const char* feq_instance_name(const feq_instance* ins);
const char* feq_instance_kind(const feq_instance* ins);

/* Canonical form (builders expanded) and its digest; release the returned
   strings with feq_string_free. */
char* feq_instance_emit(const feq_instance* ins);
char* feq_instance_digest(const feq_instance* ins);

void feq_instance_free(feq_instance* ins);

/* command: solve | member | reduce | characterize | diagonal | qinv |
   partial-reduce | merge.  opt may be NULL for defaults.  *out is set on
   every return; it carries the rendered report and/or a failure message. */
feq_status feq_run(const feq_instance* ins, const char* command, const feq_options* opt,
                   feq_result** out);

int feq_result_status(const feq_result* res);
const char* feq_result_report(const feq_result* res);  /* NULL when none */
const char* feq_result_message(const feq_result* res); /* NULL when none */
void feq_result_free(feq_result* res);

void feq_string_free(char* s);
const char* feq_version(void);

#ifdef __cplusplus
}
#endif

#endif /* FEQFACTOR_H */
