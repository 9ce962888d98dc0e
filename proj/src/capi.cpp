#include "tpdl/tpdl.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "engine.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "parser.hpp"
#include "witness.hpp"

struct tpdl_context {
  tpdl::Store store;
  tpdl::Reducer reducer{store};
  tpdl::Config config;
  tpdl::FormulaSet roots;
  std::string error;
  std::size_t errorLine = 0;
  std::size_t errorColumn = 0;
};

struct tpdl_result {
  tpdl_context* ctx;
  tpdl::FormulaSet roots;
  tpdl::Verdict verdict;
  bool traced;
};

namespace {

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tpdl_status fail(tpdl_context* ctx, tpdl_status status, const std::string& msg) {
  if (ctx) {
    ctx->error = msg;
    ctx->errorLine = 0;
    ctx->errorColumn = 0;
  }
  return status;
}

template <class Fn>
tpdl_status guarded(tpdl_context* ctx, Fn&& fn) {
  try {
    if (ctx) ctx->error.clear();
    return fn();
  } catch (const tpdl::ParseError& e) {
    tpdl_status s = fail(ctx, TPDL_ERR_PARSE, e.what());
    if (ctx) {
      ctx->errorLine = e.line();
      ctx->errorColumn = e.column();
    }
    return s;
  } catch (const tpdl::ResourceLimit& e) {
    return fail(ctx, TPDL_ERR_RESOURCE, e.what());
  } catch (const tpdl::BudgetExceeded& e) {
    return fail(ctx, TPDL_ERR_RESOURCE, e.what());
  } catch (const tpdl::PreconditionError& e) {
    return fail(ctx, TPDL_ERR_STATE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ctx, TPDL_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(ctx, TPDL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ctx, TPDL_ERR_INTERNAL, "unknown error");
  }
}

tpdl_status emit(tpdl_context* ctx, char** out, const std::string& s) {
  *out = dup(s);
  return *out ? TPDL_OK : fail(ctx, TPDL_ERR_RESOURCE, "out of memory");
}

}  // namespace

extern "C" {

const char* tpdl_version(void) { return "1.0.0"; }

const char* tpdl_status_name(tpdl_status status) {
  switch (status) {
    case TPDL_OK: return "ok";
    case TPDL_ERR_PARSE: return "parse error";
    case TPDL_ERR_RESOURCE: return "resource limit";
    case TPDL_ERR_INVALID_ARG: return "invalid argument";
    case TPDL_ERR_STATE: return "invalid state";
    case TPDL_ERR_IO: return "i/o error";
    case TPDL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void tpdl_string_free(char* s) { std::free(s); }

tpdl_status tpdl_context_new(tpdl_context** out) {
  if (!out) return TPDL_ERR_INVALID_ARG;
  *out = new (std::nothrow) tpdl_context();
  return *out ? TPDL_OK : TPDL_ERR_RESOURCE;
}

void tpdl_context_free(tpdl_context* ctx) { delete ctx; }

const char* tpdl_last_error(const tpdl_context* ctx) { return ctx ? ctx->error.c_str() : ""; }

void tpdl_last_error_position(const tpdl_context* ctx, size_t* line, size_t* column) {
  if (line) *line = ctx ? ctx->errorLine : 0;
  if (column) *column = ctx ? ctx->errorColumn : 0;
}

tpdl_status tpdl_set_max_nodes(tpdl_context* ctx, size_t max_nodes) {
  if (!ctx) return TPDL_ERR_INVALID_ARG;
  if (max_nodes == 0) return fail(ctx, TPDL_ERR_INVALID_ARG, "node limit must be positive");
  ctx->config.maxNodes = max_nodes;
  return TPDL_OK;
}

tpdl_status tpdl_set_time_limit(tpdl_context* ctx, double seconds) {
  if (!ctx) return TPDL_ERR_INVALID_ARG;
  if (!(seconds >= 0)) return fail(ctx, TPDL_ERR_INVALID_ARG, "time limit must be non-negative");
  ctx->config.timeLimit = seconds;
  return TPDL_OK;
}

tpdl_status tpdl_set_trace(tpdl_context* ctx, int enabled) {
  if (!ctx) return TPDL_ERR_INVALID_ARG;
  ctx->config.traceEvents = enabled != 0;
  return TPDL_OK;
}

tpdl_status tpdl_add_formula(tpdl_context* ctx, const char* text) {
  if (!ctx || !text) return fail(ctx, TPDL_ERR_INVALID_ARG, "null argument");
  return guarded(ctx, [&] {
    tpdl::fset::insert(ctx->roots, tpdl::parseFormula(ctx->store, text));
    return TPDL_OK;
  });
}

tpdl_status tpdl_add_source(tpdl_context* ctx, const char* text) {
  if (!ctx || !text) return fail(ctx, TPDL_ERR_INVALID_ARG, "null argument");
  return guarded(ctx, [&] {
    for (tpdl::F f : tpdl::parseSource(ctx->store, text)) tpdl::fset::insert(ctx->roots, f);
    return TPDL_OK;
  });
}

tpdl_status tpdl_clear(tpdl_context* ctx) {
  if (!ctx) return TPDL_ERR_INVALID_ARG;
  ctx->roots.clear();
  return TPDL_OK;
}

size_t tpdl_root_count(const tpdl_context* ctx) { return ctx ? ctx->roots.size() : 0; }

tpdl_status tpdl_solve(tpdl_context* ctx, tpdl_result** out) {
  if (!ctx || !out) return fail(ctx, TPDL_ERR_INVALID_ARG, "null argument");
  *out = nullptr;
  if (ctx->roots.empty()) return fail(ctx, TPDL_ERR_STATE, "no formulas to solve");
  return guarded(ctx, [&] {
    auto verdict = tpdl::solve(ctx->reducer, ctx->roots, ctx->config);
    *out = new tpdl_result{ctx, ctx->roots, std::move(verdict), ctx->config.traceEvents};
    return TPDL_OK;
  });
}

void tpdl_result_free(tpdl_result* result) { delete result; }

tpdl_status tpdl_result_answer(const tpdl_result* result, tpdl_answer* out) {
  if (!result || !out) return TPDL_ERR_INVALID_ARG;
  *out = result->verdict.sat() ? TPDL_SAT : TPDL_UNSAT;
  return TPDL_OK;
}

tpdl_status tpdl_result_stats(const tpdl_result* result, tpdl_stats* out) {
  if (!result || !out) return TPDL_ERR_INVALID_ARG;
  const tpdl::Stats& s = result->verdict.stats;
  *out = tpdl_stats{s.nodesCreated,
                    s.cacheHits,
                    s.staticApplications,
                    s.transitionalApplications,
                    s.capabilityApplications,
                    s.edges,
                    s.fulfillmentSize,
                    s.seconds};
  return TPDL_OK;
}

tpdl_status tpdl_result_tableau_json(const tpdl_result* result, char** out) {
  if (!result || !out) return TPDL_ERR_INVALID_ARG;
  return guarded(result->ctx, [&] { return emit(result->ctx, out, result->verdict.tableau->toJson()); });
}

tpdl_status tpdl_result_tableau_dot(const tpdl_result* result, char** out) {
  if (!result || !out) return TPDL_ERR_INVALID_ARG;
  return guarded(result->ctx, [&] { return emit(result->ctx, out, result->verdict.tableau->toDot()); });
}

tpdl_status tpdl_result_trace_json(const tpdl_result* result, char** out) {
  if (!result || !out) return TPDL_ERR_INVALID_ARG;
  if (!result->traced) return fail(result->ctx, TPDL_ERR_STATE, "tracing was not enabled for this run");
  return guarded(result->ctx, [&] {
    return emit(result->ctx, out, tpdl::traceToJson(result->ctx->store, result->verdict.trace));
  });
}

tpdl_status tpdl_result_verify(const tpdl_result* result, tpdl_verify_report* out, char** details) {
  if (!result || !out) return TPDL_ERR_INVALID_ARG;
  if (!result->verdict.sat()) return fail(result->ctx, TPDL_ERR_STATE, "verification needs a satisfiable result");
  return guarded(result->ctx, [&] {
    tpdl::WitnessReport r = tpdl::verifyWitness(*result->verdict.tableau, result->roots);
    *out = tpdl_verify_report{r.ok(), r.extracted, r.hintikka.ok(), r.modelBuilt, r.rootsHold, r.omegaS4,
                              r.states, r.shadows};
    if (details) {
      std::string text = r.hintikka.summary();
      if (!r.error.empty()) text += "error: " + r.error + "\n";
      return emit(result->ctx, details, text);
    }
    return TPDL_OK;
  });
}

namespace {

tpdl_status modelText(const tpdl_result* result, char** out, bool json) {
  if (!result || !out) return TPDL_ERR_INVALID_ARG;
  if (!result->verdict.sat()) return fail(result->ctx, TPDL_ERR_STATE, "a model needs a satisfiable result");
  return guarded(result->ctx, [&] {
    tpdl::Reducer& red = result->ctx->reducer;
    tpdl::HintikkaStructure h = tpdl::extractHintikka(*result->verdict.tableau);
    if (!json) return emit(result->ctx, out, tpdl::structureToDot(red.store(), h));
    tpdl::Model m = tpdl::buildModel(red, h);
    return emit(result->ctx, out, m.toJson(h));
  });
}

}  // namespace

tpdl_status tpdl_result_model_json(const tpdl_result* result, char** out) { return modelText(result, out, true); }

tpdl_status tpdl_result_model_dot(const tpdl_result* result, char** out) { return modelText(result, out, false); }

void tpdl_fuzz_options_default(tpdl_fuzz_options* opts) {
  if (!opts) return;
  tpdl::GenConfig g;
  tpdl::SearchConfig s;
  *opts = tpdl_fuzz_options{42, 100, g.maxSize, s.maxStates, 1, g.atomPool, g.progPool, g.agentPool, s.stepBudget};
}

tpdl_status tpdl_fuzz(const tpdl_fuzz_options* opts, tpdl_fuzz_report* out, char** json) {
  if (!opts || !out) return TPDL_ERR_INVALID_ARG;
  if (opts->max_states == 0 || opts->atom_pool == 0 || opts->program_pool == 0 || opts->agent_pool == 0) {
    return TPDL_ERR_INVALID_ARG;
  }
  return guarded(nullptr, [&] {
    tpdl::GenConfig g;
    g.seed = opts->seed;
    g.maxSize = opts->max_size;
    g.atomPool = opts->atom_pool;
    g.progPool = opts->program_pool;
    g.agentPool = opts->agent_pool;
    tpdl::DiffOptions d;
    d.search.maxStates = opts->max_states;
    d.search.stepBudget = opts->search_steps;
    d.threads = opts->threads;
    tpdl::DiffReport r = tpdl::differentialRun(opts->count, g, d);
    *out = tpdl_fuzz_report{r.total,        r.sat,          r.unsat,           r.violations, r.inconclusive,
                            r.searchAbsent, r.witnessVerified, r.resourceLimits, r.seconds};
    if (json) {
      *json = dup(r.toJson());
      if (!*json) return TPDL_ERR_RESOURCE;
    }
    return TPDL_OK;
  });
}

}  // extern "C"
