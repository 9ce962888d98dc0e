#include "tableau.hpp"

#include <algorithm>
#include <deque>

#include <json.hpp>

#include "errors.hpp"
#include "parser.hpp"

namespace tpdl {

const char* statusName(Status s) {
  switch (s) {
    case Status::Undefined: return "undefined";
    case Status::Sat: return "sat";
    case Status::TempSat: return "tempsat";
    case Status::Unsat: return "unsat";
  }
  return "?";
}

const char* edgeKindName(EdgeKind k) {
  switch (k) {
    case EdgeKind::Forward: return "forward";
    case EdgeKind::Backward: return "backward";
    case EdgeKind::Cyclic: return "cyclic";
  }
  return "?";
}

FormulaSet pendingCompanions(Store& st, const FormulaSet& phi) {
  FormulaSet out;
  for (F f : phi) {
    if (auto c = omegaCompanion(st, f); c && !fset::contains(phi, *c)) fset::insert(out, *c);
  }
  return out;
}

LabelInfo analyzeLabel(Reducer& red, const Label& l) {
  LabelInfo info;
  bool activeAlphaBeta = false;
  for (F f : l.phi) {
    Classification c = red.classification(f);
    bool active = true;
    if (c.isAlphaBeta()) {
      if (red.isEventuality(f)) {
        active = !fset::contains(l.rdOne, f);
      } else {
        active = !red.someReductionSetIn(f, l.phi);
      }
    }
    if (active) {
      info.active.push_back(f);
      if (c.isAlphaBeta()) activeAlphaBeta = true;
    } else {
      info.reduced.push_back(f);
    }
  }
  info.pendingCompanions = pendingCompanions(red.store(), l.phi);
  info.partial = activeAlphaBeta || !info.pendingCompanions.empty();
  return info;
}

bool similar(Reducer& red, const Label& a, const Label& b) {
  LabelInfo x = analyzeLabel(red, a);
  LabelInfo y = analyzeLabel(red, b);
  if (x.partial != y.partial || x.active != y.active) return false;
  return !x.partial || x.reduced == y.reduced;
}

FormulaSet reach(Reducer& red, F f, const Label& l, const LabelInfo& info) {
  if (!fset::contains(l.phi, f) || !red.isEventuality(f)) {
    throw PreconditionError("reach: formula must be an eventuality of the label");
  }
  if (fset::contains(info.active, f)) return {f};
  FormulaSet out;
  FormulaSet visited{f};
  std::deque<F> work{f};
  while (!work.empty()) {
    F cur = work.front();
    work.pop_front();
    for (const FormulaSet& r : red.reductionSets(cur)) {
      if (!fset::subset(r, l.phi)) continue;
      for (F g : r) {
        if (!red.vtrd(cur, g)) continue;
        bool ev = red.isEventuality(g);
        bool act = fset::contains(info.active, g);
        if (!ev || act) {
          fset::insert(out, g);
        } else if (fset::insert(visited, g)) {
          work.push_back(g);
        }
      }
    }
  }
  return out;
}

NodeId Tableau::addNode(Label label, LabelInfo info, NodeId forwardParent) {
  Node n;
  n.label = std::move(label);
  n.info = std::move(info);
  n.forwardParent = forwardParent;
  nodes_.push_back(std::move(n));
  auto id = static_cast<NodeId>(nodes_.size() - 1);
  if (root_ == kNoNode) root_ = id;
  return id;
}

std::uint32_t Tableau::addEdge(NodeId from, NodeId to, EdgeKind kind, F tag) {
  edges_.push_back({from, to, kind, tag});
  auto id = static_cast<std::uint32_t>(edges_.size() - 1);
  nodes_[from].out.push_back(id);
  nodes_[to].in.push_back(id);
  return id;
}

std::vector<NodeId> Tableau::children(NodeId v) const {
  std::vector<NodeId> out;
  for (auto e : nodes_[v].out) {
    NodeId c = edges_[e].to;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

std::vector<NodeId> Tableau::parents(NodeId v) const {
  std::vector<NodeId> out;
  for (auto e : nodes_[v].in) {
    NodeId p = edges_[e].from;
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

bool Tableau::hasCyclicParent(NodeId v) const {
  for (auto e : nodes_[v].in) {
    if (edges_[e].kind == EdgeKind::Cyclic) return true;
  }
  return false;
}

std::optional<NodeId> Tableau::taggedChild(NodeId v, F tag) const {
  for (auto e : nodes_[v].out) {
    if (edges_[e].tag == tag) return edges_[e].to;
  }
  return std::nullopt;
}

bool Tableau::isForwardAncestor(NodeId a, NodeId b) const {
  if (b == kNoNode) return false;
  for (NodeId cur = nodes_[b].forwardParent; cur != kNoNode; cur = nodes_[cur].forwardParent) {
    if (cur == a) return true;
  }
  return false;
}

bool Tableau::addFulfillment(PairRef from, PairRef to) {
  if (!fulSeen_.insert({from.node, from.formula.id, to.node, to.formula.id}).second) return false;
  ful_[from].push_back(to);
  fulOrder_.emplace_back(from, to);
  ++fulfillmentCount_;
  return true;
}

const std::vector<PairRef>& Tableau::fulfillmentFrom(PairRef p) const {
  static const std::vector<PairRef> kEmpty;
  auto it = ful_.find(p);
  return it == ful_.end() ? kEmpty : it->second;
}

std::vector<std::pair<PairRef, PairRef>> Tableau::fulfillmentPairs() const { return fulOrder_; }

bool Tableau::isFulfilled(NodeId v, F f) const {
  Store& st = store();
  if (!red_->isEventuality(f)) throw PreconditionError("isFulfilled: not an eventuality");
  F goal = eventualityGoal(st, f);
  PairRef start{v, f};
  std::set<PairRef> visited{start};
  std::deque<PairRef> work{start};
  while (!work.empty()) {
    PairRef cur = work.front();
    work.pop_front();
    for (const PairRef& nxt : fulfillmentFrom(cur)) {
      Status s = nodes_[nxt.node].status;
      if (nxt.node != v && s != Status::Sat && s != Status::TempSat) continue;
      if (nxt.formula == goal) return true;
      if (!red_->isEventuality(nxt.formula)) continue;
      if (visited.insert(nxt).second) work.push_back(nxt);
    }
  }
  return false;
}

std::set<NodeId> Tableau::dependentOn(NodeId v, F f) const {
  if (!red_->isEventuality(f)) throw PreconditionError("dependentOn: not an eventuality");
  std::set<NodeId> out;
  PairRef start{v, f};
  std::set<PairRef> visited{start};
  std::deque<PairRef> work{start};
  while (!work.empty()) {
    PairRef cur = work.front();
    work.pop_front();
    for (const PairRef& nxt : fulfillmentFrom(cur)) {
      if (!red_->isEventuality(nxt.formula)) continue;
      Status s = nodes_[nxt.node].status;
      if (s == Status::Undefined && fulfillmentFrom(nxt).empty()) out.insert(nxt.node);
      if (nxt.node != v && s != Status::TempSat) continue;
      if (visited.insert(nxt).second) work.push_back(nxt);
    }
  }
  return out;
}

bool Tableau::isUnfulfilled(NodeId v, F f) const { return !isFulfilled(v, f) && dependentOn(v, f).empty(); }

namespace {

nlohmann::json formulaList(const Store& st, const FormulaSet& s) {
  std::vector<F> v(s.begin(), s.end());
  sortCanonical(st, v);
  nlohmann::json arr = nlohmann::json::array();
  for (F f : v) arr.push_back(print(st, f));
  return arr;
}

std::string dotEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

const char* statusColor(Status s) {
  switch (s) {
    case Status::Sat: return "palegreen";
    case Status::Unsat: return "lightcoral";
    case Status::TempSat: return "khaki";
    case Status::Undefined: return "lightgray";
  }
  return "white";
}

}  // namespace

std::string Tableau::toJson() const {
  const Store& st = store();
  nlohmann::json j;
  j["root"] = root_;
  nlohmann::json nodes = nlohmann::json::array();
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    const Node& n = nodes_[v];
    nlohmann::json o;
    o["id"] = v;
    o["status"] = statusName(n.status);
    o["partial"] = n.info.partial;
    o["formulas"] = formulaList(st, n.label.phi);
    o["active"] = formulaList(st, n.info.active);
    o["reduced"] = formulaList(st, n.info.reduced);
    if (n.principal.valid()) o["principal"] = print(st, n.principal);
    else o["principal"] = nullptr;
    o["companion_step"] = n.companionStep;
    o["degree"] = n.degree;
    o["expanded"] = n.expanded;
    nodes.push_back(o);
  }
  j["nodes"] = nodes;
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : edges_) {
    nlohmann::json o{{"from", e.from}, {"to", e.to}, {"kind", edgeKindName(e.kind)}};
    if (e.tag.valid()) o["tag"] = print(st, e.tag);
    else o["tag"] = nullptr;
    edges.push_back(o);
  }
  j["edges"] = edges;
  nlohmann::json ful = nlohmann::json::array();
  for (const auto& [a, b] : fulOrder_) {
    ful.push_back({{"from", {{"node", a.node}, {"formula", print(st, a.formula)}}},
                   {"to", {{"node", b.node}, {"formula", print(st, b.formula)}}}});
  }
  j["fulfillment"] = ful;
  return j.dump(2);
}

std::string Tableau::toDot() const {
  const Store& st = store();
  std::string out = "digraph tableau {\n  node [shape=box, style=filled, fontname=\"monospace\"];\n";
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    const Node& n = nodes_[v];
    std::vector<F> fs(n.label.phi.begin(), n.label.phi.end());
    sortCanonical(st, fs);
    std::string label = "v" + std::to_string(v) + " [" + statusName(n.status) + "]";
    for (F f : fs) label += "\\n" + dotEscape(print(st, f));
    out += "  n" + std::to_string(v) + " [label=\"" + label + "\", fillcolor=" + statusColor(n.status);
    if (n.info.partial) out += ", style=\"filled,dashed\"";
    out += "];\n";
  }
  for (const Edge& e : edges_) {
    out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) + " [";
    if (e.kind == EdgeKind::Backward) out += "style=dashed";
    else if (e.kind == EdgeKind::Cyclic) out += "style=dotted";
    else out += "style=solid";
    if (e.tag.valid()) out += ", label=\"" + dotEscape(print(st, e.tag)) + "\"";
    out += "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace tpdl
