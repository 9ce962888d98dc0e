#pragma once

#include <cstdint>
#include <vector>

#include "reduction.hpp"
#include "syntax.hpp"

namespace tpdl {

// Least set containing the roots and closed under the closure rules, including the
// omega companion rule. cap = 0 selects the default of 64 * n * n where n is the summed size.
FormulaSet closure(Reducer& red, const FormulaSet& roots, std::uint64_t cap = 0);
FormulaSet closure(Reducer& red, F f, std::uint64_t cap = 0);

std::uint64_t defaultClosureCap(const Store& st, const FormulaSet& roots);

// Capability statements cap(agent, (phi => psi)) of phi for the agent, in canonical order.
std::vector<F> arrowCapabilities(const Store& st, const FormulaSet& phi, std::uint32_t agent);

// The label {phi_1..phi_k, ~[A][?~psi_1]...[?~psi_k]false} demanded by ~cap(i, A) given the
// arrow capabilities gamma (canonical order) for the same agent.
FormulaSet capabilityDemand(Store& st, F negCap, const std::vector<F>& gamma);

// The cpr set for negCap and gamma. Validates both against closure(f).
FormulaSet cprSet(Reducer& red, F f, F negCap, const std::vector<F>& gamma);

}  // namespace tpdl
