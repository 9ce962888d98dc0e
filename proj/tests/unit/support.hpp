#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "engine.hpp"
#include "parser.hpp"
#include "syntax.hpp"

namespace tpdl::test {

inline FormulaSet parseSet(Store& st, std::initializer_list<const char*> texts) {
  std::vector<F> v;
  for (const char* t : texts) v.push_back(parseFormula(st, t));
  return fset::make(std::move(v));
}

inline FormulaSet parseSet(Store& st, const std::vector<std::string>& texts) {
  std::vector<F> v;
  for (const std::string& t : texts) v.push_back(parseFormula(st, t));
  return fset::make(std::move(v));
}

inline std::vector<FormulaSet> parseFamily(Store& st, const std::vector<std::vector<std::string>>& sets) {
  std::vector<FormulaSet> out;
  for (const auto& s : sets) out.push_back(parseSet(st, s));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<FormulaSet> sorted(std::vector<FormulaSet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline const char* kCapClash[] = {"cap(i, (p & q => r))", "~cap(i, (p => r))"};
inline const char* kArrowChoice[] = {"~[(p => r) + a]p", "[(p & q => r)]p"};
inline const char* kStarChoice[] = {"~[(a + b)*]p", "[a*]p"};

template <std::size_t N>
FormulaSet parseSet(Store& st, const char* const (&texts)[N]) {
  std::vector<F> v;
  for (const char* t : texts) v.push_back(parseFormula(st, t));
  return fset::make(std::move(v));
}

// Nodes whose static rule used the given principal formula.
inline std::vector<NodeId> nodesWithPrincipal(const Tableau& t, F principal) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < t.size(); ++v) {
    if (t.node(v).principal == principal) out.push_back(v);
  }
  return out;
}

}  // namespace tpdl::test
