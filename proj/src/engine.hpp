#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tableau.hpp"

namespace tpdl {

struct Config {
  std::size_t maxNodes = 2'000'000;
  // Wall-clock limit in seconds; zero disables it.
  double timeLimit = 0.0;
  bool traceEvents = false;
  // Checks dependency sets against forward ancestry on every write.
  bool checkInvariants = false;
};

enum class TraceKind : std::uint8_t { NodeCreated, EdgeAdded, RuleApplied, StatusSet, DepsSet, FulfillEdge };

const char* traceKindName(TraceKind k);

struct TraceEvent {
  TraceKind kind;
  NodeId node = kNoNode;
  NodeId other = kNoNode;
  F formula;
  F otherFormula;
  Status status = Status::Undefined;
  EdgeKind edgeKind = EdgeKind::Forward;
  std::string rule;
  std::uint32_t index = 0;
  std::vector<NodeId> nodes;
};

struct Stats {
  std::size_t nodesCreated = 0;
  std::size_t cacheHits = 0;
  std::size_t staticApplications = 0;
  std::size_t transitionalApplications = 0;
  std::size_t capabilityApplications = 0;
  std::size_t edges = 0;
  std::size_t fulfillmentSize = 0;
  std::size_t invariantViolations = 0;
  double seconds = 0.0;
};

enum class Answer : std::uint8_t { Sat, Unsat };

struct Verdict {
  Answer answer;
  std::unique_ptr<Tableau> tableau;
  Stats stats;
  std::vector<TraceEvent> trace;
  bool sat() const { return answer == Answer::Sat; }
};

Verdict solve(Reducer& red, const FormulaSet& roots, const Config& cfg = {});

// Label of the successor demanded by a diamond over an atomic program or omega, given the
// active set of its state.
FormulaSet transitionalChild(Store& st, F diamond, const FormulaSet& active);

std::string traceToJson(const Store& st, const std::vector<TraceEvent>& trace);

struct InvariantReport {
  bool allDecided = true;       // every status is sat or unsat and every dependency set is empty
  bool satChildren = true;      // sat partial has a sat child, sat state has only sat children
  bool noPartialCycle = true;   // no cycle made only of partial nodes
  bool uniqueLabels = true;     // no two nodes carry similar labels
  bool fulfillmentShape = true; // fulfillment pairs link a node to one of its children
  std::vector<std::string> failures;
  bool ok() const { return allDecided && satChildren && noPartialCycle && uniqueLabels && fulfillmentShape; }
};

InvariantReport checkInvariants(const Tableau& t);

}  // namespace tpdl
