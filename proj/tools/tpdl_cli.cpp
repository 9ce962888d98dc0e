#include <sys/resource.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tpdl/tpdl.h"

namespace {

enum Exit { kSat = 0, kUnsat = 1, kInputError = 2, kResourceLimit = 3, kVerifyFailed = 4 };

struct Input {
  std::string file;
  std::string expr;
};

struct CheckOptions {
  Input input;
  std::string modelOut;
  std::string dotOut;
  std::string traceOut;
  std::optional<std::size_t> maxNodes;
  double timeLimit = 0.0;
  bool stats = false;
};

class Context {
public:
  Context() {
    if (tpdl_context_new(&ctx_) != TPDL_OK) throw std::runtime_error("cannot allocate solver context");
  }
  ~Context() {
    tpdl_result_free(result_);
    tpdl_context_free(ctx_);
  }
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  tpdl_context* get() const { return ctx_; }
  tpdl_result* result() const { return result_; }
  tpdl_result** resultSlot() { return &result_; }
  const char* error() const { return tpdl_last_error(ctx_); }

private:
  tpdl_context* ctx_ = nullptr;
  tpdl_result* result_ = nullptr;
};

int statusExit(tpdl_status s) {
  switch (s) {
    case TPDL_ERR_RESOURCE: return kResourceLimit;
    case TPDL_ERR_PARSE:
    case TPDL_ERR_IO:
    case TPDL_ERR_INVALID_ARG:
    case TPDL_ERR_STATE: return kInputError;
    default: return kInputError;
  }
}

bool readFile(const std::string& path, std::string& out) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    out = ss.str();
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool writeFile(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

// Writes a library string to a file and frees it.
bool writeOwned(const std::string& path, char* text) {
  bool ok = writeFile(path, text);
  tpdl_string_free(text);
  if (!ok) std::cerr << "error: cannot write " << path << "\n";
  return ok;
}

std::optional<std::size_t> envMaxNodes() {
  const char* v = std::getenv("TPDL_MAX_NODES");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0) {
    std::cerr << "warning: ignoring invalid TPDL_MAX_NODES value '" << v << "'\n";
    return std::nullopt;
  }
  return static_cast<std::size_t>(n);
}

// Loads the input into ctx and runs the solver. Returns an exit code on failure.
std::optional<int> loadAndSolve(Context& ctx, const Input& input, std::optional<std::size_t> maxNodes,
                                double timeLimit, bool trace) {
  if (input.file.empty() == input.expr.empty()) {
    std::cerr << "error: give exactly one of FILE or -e FORMULA\n";
    return kInputError;
  }
  std::string text = input.expr;
  if (!input.file.empty() && !readFile(input.file, text)) {
    std::cerr << "error: cannot read " << input.file << "\n";
    return kInputError;
  }
  if (!maxNodes) maxNodes = envMaxNodes();
  if (maxNodes && tpdl_set_max_nodes(ctx.get(), *maxNodes) != TPDL_OK) {
    std::cerr << "error: " << ctx.error() << "\n";
    return kInputError;
  }
  if (tpdl_set_time_limit(ctx.get(), timeLimit) != TPDL_OK) {
    std::cerr << "error: " << ctx.error() << "\n";
    return kInputError;
  }
  tpdl_set_trace(ctx.get(), trace);
  tpdl_status s = tpdl_add_source(ctx.get(), text.c_str());
  if (s != TPDL_OK) {
    std::cerr << "error: " << (input.file.empty() ? "<expr>" : input.file) << ":" << ctx.error() << "\n";
    return statusExit(s);
  }
  if (tpdl_root_count(ctx.get()) == 0) {
    std::cerr << "error: input contains no formulas\n";
    return kInputError;
  }
  s = tpdl_solve(ctx.get(), ctx.resultSlot());
  if (s != TPDL_OK) {
    std::cerr << "error: " << ctx.error() << "\n";
    return statusExit(s);
  }
  return std::nullopt;
}

bool isSat(const Context& ctx) {
  tpdl_answer a;
  tpdl_result_answer(ctx.result(), &a);
  return a == TPDL_SAT;
}

void printStats(const Context& ctx) {
  tpdl_stats s;
  tpdl_result_stats(ctx.result(), &s);
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  std::cerr << "nodes created: " << s.nodes_created << "\n"
            << "cache hits: " << s.cache_hits << "\n"
            << "static rule applications: " << s.static_applications << "\n"
            << "transitional rule applications: " << s.transitional_applications << "\n"
            << "capability rule applications: " << s.capability_applications << "\n"
            << "edges: " << s.edges << "\n"
            << "fulfillment pairs: " << s.fulfillment_size << "\n"
            << "peak memory: " << usage.ru_maxrss << " KiB\n"
            << "seconds: " << s.seconds << "\n";
}

int runCheck(const CheckOptions& o) {
  Context ctx;
  if (auto code = loadAndSolve(ctx, o.input, o.maxNodes, o.timeLimit, !o.traceOut.empty())) return *code;
  bool sat = isSat(ctx);
  std::cout << (sat ? "SAT" : "UNSAT") << std::endl;
  if (o.stats) printStats(ctx);
  bool ioOk = true;
  char* text = nullptr;
  if (!o.dotOut.empty()) {
    if (tpdl_result_tableau_dot(ctx.result(), &text) == TPDL_OK) ioOk &= writeOwned(o.dotOut, text);
    else ioOk = false;
  }
  if (!o.traceOut.empty()) {
    if (tpdl_result_trace_json(ctx.result(), &text) == TPDL_OK) ioOk &= writeOwned(o.traceOut, text);
    else ioOk = false;
  }
  if (!o.modelOut.empty()) {
    if (!sat) {
      std::cerr << "note: no model for an unsatisfiable input; " << o.modelOut << " not written\n";
    } else if (tpdl_result_model_json(ctx.result(), &text) == TPDL_OK) {
      ioOk &= writeOwned(o.modelOut, text);
    } else {
      std::cerr << "error: " << ctx.error() << "\n";
      ioOk = false;
    }
  }
  if (!ioOk) return kInputError;
  return sat ? kSat : kUnsat;
}

int runVerify(const CheckOptions& o) {
  Context ctx;
  if (auto code = loadAndSolve(ctx, o.input, o.maxNodes, o.timeLimit, false)) return *code;
  bool sat = isSat(ctx);
  std::cout << (sat ? "SAT" : "UNSAT") << std::endl;
  if (o.stats) printStats(ctx);
  if (!sat) return kUnsat;
  tpdl_verify_report r;
  char* details = nullptr;
  if (tpdl_result_verify(ctx.result(), &r, &details) != TPDL_OK) {
    std::cerr << "error: " << ctx.error() << "\n";
    return kVerifyFailed;
  }
  std::cerr << details << "states: " << r.states << " (shadows: " << r.shadows << ")\n"
            << "model built: " << (r.model_built ? "yes" : "no") << "\n"
            << "omega reflexive and transitive: " << (r.omega_s4 ? "yes" : "no") << "\n"
            << "root formulas hold: " << (r.roots_hold ? "yes" : "no") << "\n";
  tpdl_string_free(details);
  if (!o.modelOut.empty()) {
    char* text = nullptr;
    if (tpdl_result_model_json(ctx.result(), &text) == TPDL_OK && !writeOwned(o.modelOut, text)) return kInputError;
  }
  return r.ok ? kSat : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satisfiability checker for type PDL with capabilities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tpdl_version()));

  CheckOptions check;
  auto addSolveOptions = [](CLI::App* cmd, CheckOptions& o) {
    cmd->add_option("FILE", o.input.file, "Input file, one formula per line ('-' reads stdin)");
    cmd->add_option("-e,--expr", o.input.expr, "Formula given inline");
    cmd->add_option("--max-nodes", o.maxNodes, "Node limit (default from TPDL_MAX_NODES, else 2000000)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--time-limit", o.timeLimit, "Wall-clock limit in seconds, 0 for none")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--stats", o.stats, "Print solver statistics to stderr");
    cmd->add_option("--model-out", o.modelOut, "Write the model of a satisfiable input as JSON");
  };
  CLI::App* checkCmd = app.add_subcommand("check", "Decide satisfiability of the conjunction of the input formulas");
  addSolveOptions(checkCmd, check);
  checkCmd->add_option("--dot", check.dotOut, "Write the tableau as Graphviz DOT");
  checkCmd->add_option("--trace", check.traceOut, "Write the solver event trace as JSON");

  CheckOptions verify;
  CLI::App* verifyCmd = app.add_subcommand("verify", "Solve and check the extracted witness of a satisfiable input");
  addSolveOptions(verifyCmd, verify);

  tpdl_fuzz_options fuzz;
  tpdl_fuzz_options_default(&fuzz);
  std::string fuzzJson;
  CLI::App* fuzzCmd = app.add_subcommand("fuzz", "Differential run over generated formulas");
  fuzzCmd->add_option("--n", fuzz.count, "Number of formulas");
  fuzzCmd->add_option("--seed", fuzz.seed, "Generator seed");
  fuzzCmd->add_option("--max-size", fuzz.max_size, "Largest formula size")->check(CLI::PositiveNumber);
  fuzzCmd->add_option("--max-states", fuzz.max_states, "State bound of the structure search")
      ->check(CLI::PositiveNumber);
  fuzzCmd->add_option("--threads", fuzz.threads, "Worker threads")->check(CLI::PositiveNumber);
  fuzzCmd->add_option("--json", fuzzJson, "Write the full report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*checkCmd) return runCheck(check);
    if (*verifyCmd) return runVerify(verify);
    tpdl_fuzz_report r;
    char* json = nullptr;
    tpdl_status s = tpdl_fuzz(&fuzz, &r, fuzzJson.empty() ? nullptr : &json);
    if (s != TPDL_OK) {
      std::cerr << "error: " << tpdl_status_name(s) << "\n";
      return statusExit(s);
    }
    std::cout << "total " << r.total << ", sat " << r.sat << ", unsat " << r.unsat << ", violations " << r.violations
              << ", inconclusive " << r.inconclusive << ", search absent " << r.search_absent
              << ", witness verified " << r.witness_verified << ", resource limits " << r.resource_limits << ", "
              << r.seconds << " s" << std::endl;
    if (json && !writeOwned(fuzzJson, json)) return kInputError;
    return r.violations == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
