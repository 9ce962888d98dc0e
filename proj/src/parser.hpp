#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "syntax.hpp"

namespace tpdl {

// Parses a single formula. Line numbers in errors start at firstLine.
F parseFormula(Store& st, std::string_view text, std::size_t firstLine = 1);
P parseProgram(Store& st, std::string_view text);

// One formula per non-empty line; '#' starts a comment.
std::vector<F> parseSource(Store& st, std::string_view text);

std::string print(const Store& st, F f);
std::string print(const Store& st, P p);
std::string printSet(const Store& st, const FormulaSet& s);

}  // namespace tpdl
