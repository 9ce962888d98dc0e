#include "engine.hpp"

#include <pthread.h>

#include <algorithm>
#include <deque>
#include <exception>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "closure.hpp"
#include "errors.hpp"
#include "parser.hpp"

namespace tpdl {

const char* traceKindName(TraceKind k) {
  switch (k) {
    case TraceKind::NodeCreated: return "NodeCreated";
    case TraceKind::EdgeAdded: return "EdgeAdded";
    case TraceKind::RuleApplied: return "RuleApplied";
    case TraceKind::StatusSet: return "StatusSet";
    case TraceKind::DepsSet: return "DepsSet";
    case TraceKind::FulfillEdge: return "FulfillEdge";
  }
  return "?";
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& k) const noexcept {
    std::size_t h = 0x84222325cbf29ce4ull;
    for (auto x : k) h = NodeKeyHash::mix(h, x, 0);
    return h;
  }
};

std::vector<std::uint32_t> similarityKey(const LabelInfo& info) {
  std::vector<std::uint32_t> key;
  key.reserve(info.active.size() + info.reduced.size() + 2);
  key.push_back(info.partial ? 1 : 0);
  key.push_back(static_cast<std::uint32_t>(info.active.size()));
  for (F f : info.active) key.push_back(f.id);
  if (info.partial) {
    for (F f : info.reduced) key.push_back(f.id);
  }
  return key;
}

// Runs fn on a thread with a large stack.
void runWithLargeStack(const std::function<void()>& fn) {
  constexpr std::size_t kStack = std::size_t{512} << 20;
  struct Payload {
    const std::function<void()>* fn;
    std::exception_ptr error;
  } payload{&fn, nullptr};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, kStack);
  pthread_t thread;
  auto body = [](void* arg) -> void* {
    auto* p = static_cast<Payload*>(arg);
    try {
      (*p->fn)();
    } catch (...) {
      p->error = std::current_exception();
    }
    return nullptr;
  };
  if (pthread_create(&thread, &attr, body, &payload) != 0) {
    pthread_attr_destroy(&attr);
    fn();
    return;
  }
  pthread_join(thread, nullptr);
  pthread_attr_destroy(&attr);
  if (payload.error) std::rethrow_exception(payload.error);
}

class Engine {
public:
  Engine(Reducer& red, const Config& cfg)
      : red_(red), st_(red.store()), cfg_(cfg), t_(std::make_unique<Tableau>(red)) {}

  Verdict run(const FormulaSet& roots) {
    if (roots.empty()) throw PreconditionError("solve: the root formula set is empty");
    start_ = std::chrono::steady_clock::now();
    Label root{roots, {}};
    runWithLargeStack([&] { construct(kNoNode, F{}, std::move(root)); });
    Verdict v;
    v.answer = t_->node(t_->root()).status == Status::Sat ? Answer::Sat : Answer::Unsat;
    stats_.nodesCreated = t_->size();
    stats_.edges = t_->edges().size();
    stats_.fulfillmentSize = t_->fulfillmentSize();
    stats_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    v.stats = stats_;
    v.trace = std::move(trace_);
    v.tableau = std::move(t_);
    return v;
  }

private:
  void emit(TraceEvent e) {
    if (cfg_.traceEvents) trace_.push_back(std::move(e));
  }

  void checkBudget() {
    if (t_->size() >= cfg_.maxNodes) {
      throw ResourceLimit("node limit of " + std::to_string(cfg_.maxNodes) + " reached");
    }
    if (cfg_.timeLimit > 0) {
      double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (s > cfg_.timeLimit) throw ResourceLimit("time limit reached");
    }
  }

  bool contradiction(const FormulaSet& phi) {
    for (F f : phi) {
      const FNode& n = st_.node(f);
      if (n.kind == FKind::False) return true;
      if (n.kind != FKind::Not) continue;
      F inner{n.a};
      if (fset::contains(phi, inner)) return true;
      const FNode& in = st_.node(inner);
      if (in.kind == FKind::True) return true;
      if (in.kind == FKind::Cap && st_.node(P{in.b}).kind == PKind::Test) return true;
    }
    return false;
  }

  void setStatus(NodeId v, Status s) {
    Node& n = t_->node(v);
    if (n.status == Status::Sat || n.status == Status::Unsat) {
      throw std::logic_error("status of a decided node was rewritten");
    }
    n.status = s;
    emit({TraceKind::StatusSet, v, kNoNode, F{}, F{}, s});
  }

  void setDeps(NodeId v, std::vector<NodeId> deps) {
    Node& n = t_->node(v);
    if (n.deps) {
      for (NodeId d : *n.deps) dependents_[d].erase(v);
    }
    std::sort(deps.begin(), deps.end());
    deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
    for (NodeId d : deps) dependents_[d].insert(v);
    if (cfg_.checkInvariants) {
      for (NodeId d : deps) {
        if (!t_->isForwardAncestor(d, v)) ++stats_.invariantViolations;
      }
    }
    TraceEvent e{TraceKind::DepsSet, v};
    e.nodes = deps;
    emit(std::move(e));
    n.deps = std::move(deps);
  }

  void addEdge(NodeId from, NodeId to, EdgeKind kind, F tag) {
    t_->addEdge(from, to, kind, tag);
    TraceEvent e{TraceKind::EdgeAdded, from, to, tag};
    e.edgeKind = kind;
    emit(std::move(e));
  }

  void addFulfillment(PairRef a, PairRef b) {
    if (t_->addFulfillment(a, b)) emit({TraceKind::FulfillEdge, a.node, b.node, a.formula, b.formula});
  }

  std::vector<F> activeEventualities(NodeId v) {
    std::vector<F> out;
    for (F f : t_->node(v).info.active) {
      if (red_.isEventuality(f)) out.push_back(f);
    }
    return out;
  }

  bool hasUnfulfilled(NodeId v) {
    for (F f : activeEventualities(v)) {
      if (t_->isUnfulfilled(v, f)) return true;
    }
    return false;
  }

  bool anyChildWithStatus(NodeId v, Status s) {
    for (NodeId c : t_->children(v)) {
      if (t_->node(c).status == s) return true;
    }
    return false;
  }

  NodeId construct(NodeId parent, F tag, Label label) {
    LabelInfo info = analyzeLabel(red_, label);
    auto key = similarityKey(info);
    if (auto it = cache_.find(key); it != cache_.end()) {
      NodeId hit = it->second;
      ++stats_.cacheHits;
      EdgeKind kind = t_->isForwardAncestor(hit, parent) ? EdgeKind::Cyclic : EdgeKind::Backward;
      addEdge(parent, hit, kind, tag);
      Node& h = t_->node(hit);
      if (info.reduced != h.info.reduced) {
        h.label.phi = fset::unite(h.label.phi, info.reduced);
        for (F f : h.label.phi) {
          if (red_.isEventuality(f) && red_.isAlphaBeta(f)) fset::insert(h.label.rdOne, f);
        }
        h.info = analyzeLabel(red_, h.label);
        if (similarityKey(h.info) != key) {
          throw std::logic_error("merging reduced sets changed a cached node's similarity class");
        }
      }
      return hit;
    }
    checkBudget();
    NodeId v = t_->addNode(std::move(label), std::move(info), parent);
    dependents_.emplace_back();
    cache_.emplace(std::move(key), v);
    emit({TraceKind::NodeCreated, v});
    if (parent != kNoNode) addEdge(parent, v, EdgeKind::Forward, tag);

    if (contradiction(t_->node(v).label.phi)) {
      setDeps(v, {});
      setStatus(v, Status::Unsat);
    } else if (t_->node(v).info.partial) {
      applyStaticRule(v);
      calcStsPartial(v);
    } else {
      applyNonStaticRules(v);
      calcStsState(v);
    }
    if (t_->hasCyclicParent(v)) updDepNodes(v);
    return v;
  }

  F choosePrincipal(NodeId v) {
    F best;
    std::size_t bestDegree = 0;
    for (F f : t_->node(v).info.active) {
      if (!red_.isAlphaBeta(f)) continue;
      std::size_t d = red_.degree(f);
      if (!best.valid() || d < bestDegree || (d == bestDegree && compareTerms(st_, f, best) < 0)) {
        best = f;
        bestDegree = d;
      }
    }
    return best;
  }

  void applyStaticRule(NodeId v) {
    ++stats_.staticApplications;
    std::vector<FormulaSet> sets;
    F principal;
    FormulaSet companions = t_->node(v).info.pendingCompanions;
    if (!companions.empty()) {
      sets.push_back(companions);
      t_->node(v).companionStep = true;
    } else {
      principal = choosePrincipal(v);
      sets = red_.reductionSets(principal);
    }
    t_->node(v).principal = principal;
    t_->node(v).degree = static_cast<std::uint32_t>(sets.size());
    bool principalEv = principal.valid() && red_.isEventuality(principal);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (anyChildWithStatus(v, Status::Sat)) break;
      const Node& n = t_->node(v);
      Label child;
      child.phi = fset::unite(n.label.phi, sets[i]);
      child.rdOne = n.label.rdOne;
      if (principal.valid()) {
        fset::erase(child.rdOne, principal);
        if (principalEv) fset::insert(child.rdOne, principal);
      }
      ++t_->node(v).expanded;
      TraceEvent e{TraceKind::RuleApplied, v, kNoNode, principal};
      e.rule = principal.valid() ? "static" : "companion";
      e.index = static_cast<std::uint32_t>(i);
      emit(std::move(e));
      construct(v, F{}, std::move(child));
    }
  }

  std::vector<NodeId> unionDeps(NodeId v, const std::vector<NodeId>& selected) {
    std::vector<NodeId> d;
    for (NodeId c : selected) {
      const Node& n = t_->node(c);
      if (n.deps) d.insert(d.end(), n.deps->begin(), n.deps->end());
      else d.push_back(c);
    }
    d.erase(std::remove(d.begin(), d.end(), v), d.end());
    return d;
  }

  void finishStatus(NodeId v, std::vector<NodeId> deps) {
    if (hasUnfulfilled(v)) {
      setDeps(v, {});
      setStatus(v, Status::Unsat);
      return;
    }
    bool empty = deps.empty();
    setDeps(v, std::move(deps));
    setStatus(v, empty ? Status::Sat : Status::TempSat);
  }

  void calcStsPartial(NodeId v) {
    auto kids = t_->children(v);
    std::vector<NodeId> selected;
    for (NodeId c : kids) {
      if (t_->node(c).status == Status::Sat) selected.push_back(c);
    }
    if (selected.empty()) {
      for (NodeId c : kids) {
        Status s = t_->node(c).status;
        if (s == Status::Undefined || s == Status::TempSat) {
          if (s == Status::Undefined && c != v && !t_->isForwardAncestor(c, v)) {
            throw std::logic_error("child with undefined status is not an ancestor");
          }
          selected.push_back(c);
        }
      }
    }
    if (selected.empty()) {
      setDeps(v, {});
      setStatus(v, Status::Unsat);
      return;
    }
    auto deps = unionDeps(v, selected);
    for (F f : activeEventualities(v)) {
      for (NodeId c : selected) {
        const Node& cn = t_->node(c);
        for (F g : reach(red_, f, cn.label, cn.info)) addFulfillment({v, f}, {c, g});
      }
    }
    finishStatus(v, std::move(deps));
  }

  void applyNonStaticRules(NodeId v) {
    std::vector<F> diamonds;
    std::vector<F> negCaps;
    for (F f : t_->node(v).label.phi) {
      if (auto d = asDiamond(st_, f); d && st_.isAtPOmega(d->first)) {
        diamonds.push_back(f);
        continue;
      }
      const FNode& n = st_.node(f);
      if (n.kind == FKind::Not) {
        const FNode& in = st_.node(F{n.a});
        if (in.kind == FKind::Cap && st_.isSigmaTilde(P{in.b})) negCaps.push_back(f);
      }
    }
    sortCanonical(st_, diamonds);
    sortCanonical(st_, negCaps);
    std::vector<F> order = diamonds;
    order.insert(order.end(), negCaps.begin(), negCaps.end());
    for (F f : order) {
      if (anyChildWithStatus(v, Status::Unsat)) break;
      Label child;
      const Node& n = t_->node(v);
      TraceEvent e{TraceKind::RuleApplied, v, kNoNode, f};
      if (auto d = asDiamond(st_, f); d && st_.isAtPOmega(d->first)) {
        ++stats_.transitionalApplications;
        e.rule = "transitional";
        child.phi = transitionalChild(st_, f, n.info.active);
      } else {
        ++stats_.capabilityApplications;
        e.rule = "capability";
        std::uint32_t agent = st_.node(F{st_.node(f).a}).a;
        child.phi = capabilityDemand(st_, f, arrowCapabilities(st_, n.label.phi, agent));
      }
      emit(std::move(e));
      construct(v, f, std::move(child));
    }
  }

  void calcStsState(NodeId v) {
    auto kids = t_->children(v);
    for (NodeId c : kids) {
      if (t_->node(c).status == Status::Unsat) {
        setDeps(v, {});
        setStatus(v, Status::Unsat);
        return;
      }
    }
    auto deps = unionDeps(v, kids);
    for (F f : activeEventualities(v)) {
      auto d = asDiamond(st_, f);
      if (!d || !st_.isAtPOmega(d->first)) continue;
      auto c = t_->taggedChild(v, f);
      if (!c) throw std::logic_error("state lacks the child for an active diamond eventuality");
      addFulfillment({v, f}, {*c, st_.neg(d->second)});
    }
    finishStatus(v, std::move(deps));
  }

  std::optional<NodeId> firstDependent(NodeId v, bool needUnfulfilled) {
    for (NodeId w : dependents_[v]) {
      if (t_->node(w).status != Status::TempSat) continue;
      if (needUnfulfilled && !hasUnfulfilled(w)) continue;
      return w;
    }
    return std::nullopt;
  }

  void updDepNodes(NodeId v) {
    Status s = t_->node(v).status;
    if (s == Status::Sat || s == Status::Unsat) propagateSts(v, v);
    while (auto w = firstDependent(v, true)) {
      setDeps(*w, {});
      setStatus(*w, Status::Unsat);
      propagateSts(v, *w);
    }
    while (auto w = firstDependent(v, false)) {
      std::vector<NodeId> d = *t_->node(*w).deps;
      d.erase(std::remove(d.begin(), d.end(), v), d.end());
      if (const auto& dv = t_->node(v).deps) d.insert(d.end(), dv->begin(), dv->end());
      bool empty = d.empty();
      setDeps(*w, std::move(d));
      if (empty) {
        setStatus(*w, Status::Sat);
        propagateSts(v, *w);
      } else {
        setStatus(*w, Status::TempSat);
      }
    }
  }

  bool allChildren(NodeId v, Status s) {
    for (NodeId c : t_->children(v)) {
      if (t_->node(c).status != s) return false;
    }
    return true;
  }

  void propagateSts(NodeId v0, NodeId v1) {
    std::deque<NodeId> work{v1};
    while (!work.empty()) {
      NodeId v = work.front();
      work.pop_front();
      Status sv = t_->node(v).status;
      for (NodeId p : t_->parents(v)) {
        const Node& pn = t_->node(p);
        if (pn.status != Status::TempSat || !pn.deps) continue;
        if (!std::binary_search(pn.deps->begin(), pn.deps->end(), v0)) continue;
        bool partial = pn.info.partial;
        if (sv == Status::Sat && (partial || allChildren(p, Status::Sat))) {
          setDeps(p, {});
          setStatus(p, Status::Sat);
          work.push_back(p);
        } else if (sv == Status::Unsat && (!partial || allChildren(p, Status::Unsat))) {
          setDeps(p, {});
          setStatus(p, Status::Unsat);
          work.push_back(p);
        }
      }
    }
  }

  Reducer& red_;
  Store& st_;
  Config cfg_;
  std::unique_ptr<Tableau> t_;
  Stats stats_;
  std::vector<TraceEvent> trace_;
  std::unordered_map<std::vector<std::uint32_t>, NodeId, KeyHash> cache_;
  std::vector<std::set<NodeId>> dependents_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

FormulaSet transitionalChild(Store& st, F diamond, const FormulaSet& active) {
  auto d = asDiamond(st, diamond);
  if (!d || !st.isAtPOmega(d->first)) throw PreconditionError("transitionalChild: not a diamond over an atomic program or omega");
  P a = d->first;
  std::vector<F> phi{st.neg(d->second)};
  for (F g : active) {
    auto b = asBox(st, g);
    if (!b) continue;
    if (b->first == st.omega() || (!st.isOmega(a) && b->first == a)) phi.push_back(b->second);
  }
  return fset::make(std::move(phi));
}

Verdict solve(Reducer& red, const FormulaSet& roots, const Config& cfg) { return Engine(red, cfg).run(roots); }

std::string traceToJson(const Store& st, const std::vector<TraceEvent>& trace) {
  nlohmann::json arr = nlohmann::json::array();
  for (const TraceEvent& e : trace) {
    nlohmann::json o;
    o["event"] = traceKindName(e.kind);
    o["node"] = e.node;
    switch (e.kind) {
      case TraceKind::NodeCreated:
        break;
      case TraceKind::EdgeAdded:
        o["to"] = e.other;
        o["kind"] = edgeKindName(e.edgeKind);
        o["tag"] = e.formula.valid() ? nlohmann::json(print(st, e.formula)) : nlohmann::json(nullptr);
        break;
      case TraceKind::RuleApplied:
        o["rule"] = e.rule;
        o["formula"] = e.formula.valid() ? nlohmann::json(print(st, e.formula)) : nlohmann::json(nullptr);
        o["index"] = e.index;
        break;
      case TraceKind::StatusSet:
        o["status"] = statusName(e.status);
        break;
      case TraceKind::DepsSet:
        o["deps"] = e.nodes;
        break;
      case TraceKind::FulfillEdge:
        o["formula"] = print(st, e.formula);
        o["to"] = e.other;
        o["to_formula"] = print(st, e.otherFormula);
        break;
    }
    arr.push_back(o);
  }
  return arr.dump(2);
}

InvariantReport checkInvariants(const Tableau& t) {
  InvariantReport r;
  Reducer& red = t.reducer();
  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    if (r.failures.size() < 20) r.failures.push_back(msg);
  };
  std::unordered_map<std::vector<std::uint32_t>, NodeId, KeyHash> keys;
  for (NodeId v = 0; v < t.size(); ++v) {
    const Node& n = t.node(v);
    std::string id = "v" + std::to_string(v);
    if (n.status != Status::Sat && n.status != Status::Unsat) fail(r.allDecided, id + " is " + statusName(n.status));
    if (n.deps && !n.deps->empty()) fail(r.allDecided, id + " has a non-empty dependency set");
    auto kids = t.children(v);
    if (n.status == Status::Sat) {
      bool anySat = false;
      bool allSat = true;
      for (NodeId c : kids) {
        bool s = t.node(c).status == Status::Sat;
        anySat = anySat || s;
        allSat = allSat && s;
      }
      if (n.info.partial && !anySat) fail(r.satChildren, id + " is a sat partial node without a sat child");
      if (!n.info.partial && !allSat) fail(r.satChildren, id + " is a sat state with a child that is not sat");
    }
    if (!keys.emplace(similarityKey(analyzeLabel(red, n.label)), v).second) {
      fail(r.uniqueLabels, id + " repeats a similarity class");
    }
  }
  // Cycle detection restricted to partial nodes.
  std::vector<std::uint8_t> color(t.size(), 0);
  for (NodeId s = 0; s < t.size(); ++s) {
    if (!t.node(s).info.partial || color[s]) continue;
    std::vector<std::pair<NodeId, std::size_t>> stack{{s, 0}};
    color[s] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      auto kids = t.children(v);
      if (i >= kids.size()) {
        color[v] = 2;
        stack.pop_back();
        continue;
      }
      NodeId c = kids[i++];
      if (!t.node(c).info.partial) continue;
      if (color[c] == 1) {
        fail(r.noPartialCycle, "partial cycle through v" + std::to_string(c));
      } else if (color[c] == 0) {
        color[c] = 1;
        stack.push_back({c, 0});
      }
    }
  }
  for (const auto& [a, b] : t.fulfillmentPairs()) {
    auto kids = t.children(a.node);
    if (std::find(kids.begin(), kids.end(), b.node) == kids.end()) {
      fail(r.fulfillmentShape, "fulfillment pair from v" + std::to_string(a.node) + " skips a child");
    }
  }
  return r;
}

}  // namespace tpdl
