#ifndef TPDL_TPDL_H
#define TPDL_TPDL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TPDL_BUILDING)
#    define TPDL_API __declspec(dllexport)
#  else
#    define TPDL_API __declspec(dllimport)
#  endif
#else
#  define TPDL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tpdl_status {
  TPDL_OK = 0,
  TPDL_ERR_PARSE = 1,
  TPDL_ERR_RESOURCE = 2,
  TPDL_ERR_INVALID_ARG = 3,
  TPDL_ERR_STATE = 4,
  TPDL_ERR_IO = 5,
  TPDL_ERR_INTERNAL = 6
} tpdl_status;

typedef enum tpdl_answer { TPDL_SAT = 0, TPDL_UNSAT = 1 } tpdl_answer;

/* Owns the formula store and the root set. Not safe for concurrent use. */
typedef struct tpdl_context tpdl_context;

/* A finished solver run. Must be freed before its context. */
typedef struct tpdl_result tpdl_result;

typedef struct tpdl_stats {
  size_t nodes_created;
  size_t cache_hits;
  size_t static_applications;
  size_t transitional_applications;
  size_t capability_applications;
  size_t edges;
  size_t fulfillment_size;
  double seconds;
} tpdl_stats;

typedef struct tpdl_verify_report {
  int ok;
  int extracted;
  int hintikka_ok;
  int model_built;
  int roots_hold;
  int omega_s4;
  size_t states;
  size_t shadows;
} tpdl_verify_report;

typedef struct tpdl_fuzz_options {
  uint64_t seed;
  size_t count;
  size_t max_size;
  size_t max_states;
  size_t threads;
  size_t atom_pool;
  size_t program_pool;
  size_t agent_pool;
  size_t search_steps;
} tpdl_fuzz_options;

typedef struct tpdl_fuzz_report {
  size_t total;
  size_t sat;
  size_t unsat;
  size_t violations;
  size_t inconclusive;
  size_t search_absent;
  size_t witness_verified;
  size_t resource_limits;
  double seconds;
} tpdl_fuzz_report;

TPDL_API const char* tpdl_version(void);
TPDL_API const char* tpdl_status_name(tpdl_status status);

/* Strings returned through char** parameters are released with tpdl_string_free. */
TPDL_API void tpdl_string_free(char* s);

TPDL_API tpdl_status tpdl_context_new(tpdl_context** out);
TPDL_API void tpdl_context_free(tpdl_context* ctx);

/* Message of the most recent failing call on ctx, or an empty string. */
TPDL_API const char* tpdl_last_error(const tpdl_context* ctx);
/* Position of the most recent parse error; zero when there is none. */
TPDL_API void tpdl_last_error_position(const tpdl_context* ctx, size_t* line, size_t* column);

TPDL_API tpdl_status tpdl_set_max_nodes(tpdl_context* ctx, size_t max_nodes);
/* Wall-clock limit in seconds; zero disables it. */
TPDL_API tpdl_status tpdl_set_time_limit(tpdl_context* ctx, double seconds);
TPDL_API tpdl_status tpdl_set_trace(tpdl_context* ctx, int enabled);

/* Adds one formula to the root set. */
TPDL_API tpdl_status tpdl_add_formula(tpdl_context* ctx, const char* text);
/* Adds every formula of a source text: one per line, '#' starts a comment. */
TPDL_API tpdl_status tpdl_add_source(tpdl_context* ctx, const char* text);
TPDL_API tpdl_status tpdl_clear(tpdl_context* ctx);
TPDL_API size_t tpdl_root_count(const tpdl_context* ctx);

TPDL_API tpdl_status tpdl_solve(tpdl_context* ctx, tpdl_result** out);
TPDL_API void tpdl_result_free(tpdl_result* result);

TPDL_API tpdl_status tpdl_result_answer(const tpdl_result* result, tpdl_answer* out);
TPDL_API tpdl_status tpdl_result_stats(const tpdl_result* result, tpdl_stats* out);
TPDL_API tpdl_status tpdl_result_tableau_json(const tpdl_result* result, char** out);
TPDL_API tpdl_status tpdl_result_tableau_dot(const tpdl_result* result, char** out);
/* Requires tracing to have been enabled before tpdl_solve. */
TPDL_API tpdl_status tpdl_result_trace_json(const tpdl_result* result, char** out);

/* Runs the witness pipeline on a satisfiable result. details may be NULL. */
TPDL_API tpdl_status tpdl_result_verify(const tpdl_result* result, tpdl_verify_report* out, char** details);
/* Model of a satisfiable result as JSON or DOT. */
TPDL_API tpdl_status tpdl_result_model_json(const tpdl_result* result, char** out);
TPDL_API tpdl_status tpdl_result_model_dot(const tpdl_result* result, char** out);

TPDL_API void tpdl_fuzz_options_default(tpdl_fuzz_options* opts);
/* Differential run over generated formulas. json may be NULL. */
TPDL_API tpdl_status tpdl_fuzz(const tpdl_fuzz_options* opts, tpdl_fuzz_report* out, char** json);

#ifdef __cplusplus
}
#endif

#endif
