#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "reduction.hpp"
#include "syntax.hpp"

namespace tpdl {

using NodeId = std::uint32_t;
constexpr NodeId kNoNode = UINT32_MAX;

enum class Status : std::uint8_t { Undefined, Sat, TempSat, Unsat };
enum class EdgeKind : std::uint8_t { Forward, Backward, Cyclic };

const char* statusName(Status s);
const char* edgeKindName(EdgeKind k);

// A formula set with the alpha/beta eventualities whose reduction flag is 1.
struct Label {
  FormulaSet phi;
  FormulaSet rdOne;
};

struct LabelInfo {
  FormulaSet active;
  FormulaSet reduced;
  // Omega companions missing from phi for boxes over omega.
  FormulaSet pendingCompanions;
  bool partial = false;
};

LabelInfo analyzeLabel(Reducer& red, const Label& l);

// Reflexive-companion formulas required by the boxes over omega in phi but absent from it.
FormulaSet pendingCompanions(Store& st, const FormulaSet& phi);

bool similar(Reducer& red, const Label& a, const Label& b);

// Fully reduced chains from f through reduced eventualities of the label.
FormulaSet reach(Reducer& red, F f, const Label& l, const LabelInfo& info);

struct Edge {
  NodeId from;
  NodeId to;
  EdgeKind kind;
  F tag;
};

struct Node {
  Label label;
  LabelInfo info;
  std::optional<std::vector<NodeId>> deps;
  Status status = Status::Undefined;
  NodeId forwardParent = kNoNode;
  std::vector<std::uint32_t> out;
  std::vector<std::uint32_t> in;
  // Static rule bookkeeping: principal formula (invalid for the companion step),
  // number of reduction sets and how many of them produced a child.
  F principal;
  bool companionStep = false;
  std::uint32_t degree = 0;
  std::uint32_t expanded = 0;
};

struct PairRef {
  NodeId node;
  F formula;
  bool operator==(const PairRef&) const = default;
  auto operator<=>(const PairRef&) const = default;
};

struct PairHash {
  std::size_t operator()(const PairRef& p) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{p.node} << 32) | p.formula.id);
  }
};

class Tableau {
public:
  explicit Tableau(Reducer& red) : red_(&red) {}

  Reducer& reducer() const { return *red_; }
  Store& store() const { return red_->store(); }

  std::size_t size() const { return nodes_.size(); }
  const Node& node(NodeId v) const { return nodes_[v]; }
  Node& node(NodeId v) { return nodes_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::uint32_t e) const { return edges_[e]; }
  NodeId root() const { return root_; }

  NodeId addNode(Label label, LabelInfo info, NodeId forwardParent);
  std::uint32_t addEdge(NodeId from, NodeId to, EdgeKind kind, F tag);

  // Distinct targets of all outgoing edges, in creation order.
  std::vector<NodeId> children(NodeId v) const;
  std::vector<NodeId> parents(NodeId v) const;
  bool hasCyclicParent(NodeId v) const;
  std::optional<NodeId> taggedChild(NodeId v, F tag) const;

  // True when a is a proper ancestor of b along forward edges.
  bool isForwardAncestor(NodeId a, NodeId b) const;

  bool addFulfillment(PairRef from, PairRef to);
  const std::vector<PairRef>& fulfillmentFrom(PairRef p) const;
  std::size_t fulfillmentSize() const { return fulfillmentCount_; }
  std::vector<std::pair<PairRef, PairRef>> fulfillmentPairs() const;

  bool isFulfilled(NodeId v, F f) const;
  std::set<NodeId> dependentOn(NodeId v, F f) const;
  bool isUnfulfilled(NodeId v, F f) const;

  std::string toJson() const;
  std::string toDot() const;

private:
  Reducer* red_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  NodeId root_ = kNoNode;
  std::unordered_map<PairRef, std::vector<PairRef>, PairHash> ful_;
  std::set<std::array<std::uint32_t, 4>> fulSeen_;
  std::vector<std::pair<PairRef, PairRef>> fulOrder_;
  std::size_t fulfillmentCount_ = 0;
};

}  // namespace tpdl
