#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "engine.hpp"
#include "witness.hpp"

namespace tpdl {

struct Weights {
  double atom = 4.0;
  double top = 0.2;
  double bottom = 0.2;
  double neg = 2.0;
  double box = 3.0;
  double cap = 0.8;
  double conj = 2.0;
  double disj = 1.0;
  double atomic = 4.0;
  double test = 0.6;
  double arrow = 1.0;
  double seq = 1.0;
  double choice = 1.0;
  double star = 1.5;
  double omega = 0.6;
};

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t maxSize = 15;
  std::size_t atomPool = 3;
  std::size_t progPool = 2;
  std::size_t agentPool = 1;
  Weights weights;
};

// Deterministic in cfg.seed; the result has size at most cfg.maxSize.
F randomFormula(Store& st, const GenConfig& cfg);

struct SearchConfig {
  std::size_t maxStates = 3;
  // Search nodes visited before BudgetExceeded is thrown.
  std::size_t stepBudget = 20000;
  // Largest closure accepted for the input.
  std::size_t closureBudget = 400;
};

// Depth-first search for a Hintikka structure with at most maxStates states whose
// first state carries f. Absence is inconclusive. Throws BudgetExceeded.
std::optional<HintikkaStructure> boundedSearch(Reducer& red, const FormulaSet& f, const SearchConfig& cfg = {});

struct DiffOptions {
  SearchConfig search;
  Config solve;
  std::size_t threads = 1;
  // Also run the bounded search on satisfiable inputs to measure its reach.
  bool searchSat = false;
};

struct DiffCase {
  std::string input;
  std::string kind;
  std::string detail;
};

struct DiffReport {
  std::size_t total = 0;
  std::size_t sat = 0;
  std::size_t unsat = 0;
  std::size_t violations = 0;
  // Unsatisfiable inputs whose search ran out of budget.
  std::size_t inconclusive = 0;
  // Unsatisfiable inputs whose search finished without a structure.
  std::size_t searchAbsent = 0;
  std::size_t witnessVerified = 0;
  std::size_t satSearchFound = 0;
  std::size_t satSearched = 0;
  std::size_t resourceLimits = 0;
  std::size_t maxNodes = 0;
  double seconds = 0.0;
  std::vector<DiffCase> cases;

  std::string toJson() const;
  std::string summary() const;
};

// Seed of the i-th formula of a run.
std::uint64_t caseSeed(std::uint64_t seed, std::size_t i);

DiffReport differentialRun(std::size_t n, const GenConfig& cfg, const DiffOptions& opt = {});

// Each entry is a source text in the input file format.
DiffReport differentialCorpus(const std::vector<std::string>& corpus, const DiffOptions& opt = {});

}  // namespace tpdl
