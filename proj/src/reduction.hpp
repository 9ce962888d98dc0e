#pragma once

#include <mutex>
#include <unordered_map>
#include <vector>

#include "syntax.hpp"

namespace tpdl {

struct FdPair {
  FormulaSet tests;
  F focus;
};

// Reduction machinery for alpha/beta formulas, memoized per formula handle.
// Safe to share between threads; results are immutable once computed.
class Reducer {
public:
  explicit Reducer(Store& st) : st_(st) {}

  Store& store() { return st_; }
  const Store& store() const { return st_; }

  Classification classification(F f);
  bool isAlphaBeta(F f) { return classification(f).isAlphaBeta(); }
  bool isEventuality(F f) const { return tpdl::isEventuality(st_, f); }

  // Finalized decomposition pairs in canonical order (focus first, then tests).
  const std::vector<FdPair>& finalizedDecomposition(F f);

  // Reduction sets in canonical order of their generating pairs or table components.
  const std::vector<FormulaSet>& reductionSets(F f);

  std::size_t degree(F f) { return reductionSets(f).size(); }

  bool vtrd(F f, F g);

  // True when some reduction set of f is a subset of phi.
  bool someReductionSetIn(F f, const FormulaSet& phi);

private:
  std::vector<FdPair> computeFd(F f);
  std::vector<FormulaSet> computeSets(F f);

  Store& st_;
  std::mutex mutex_;
  std::unordered_map<F, Classification> cls_;
  std::unordered_map<F, std::vector<FdPair>> fd_;
  std::unordered_map<F, std::vector<FormulaSet>> sets_;
};

}  // namespace tpdl
