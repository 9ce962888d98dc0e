#include "witness.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "closure.hpp"
#include "errors.hpp"
#include "parser.hpp"

namespace tpdl {

StateId HintikkaStructure::addState(FormulaSet label, NodeId node, bool isShadow) {
  labels.push_back(std::move(label));
  trans.emplace_back();
  origin.push_back(node);
  shadow.push_back(isShadow);
  return static_cast<StateId>(labels.size() - 1);
}

bool HintikkaStructure::hasTransition(StateId from, P program, StateId to) const {
  for (const Transition& t : trans[from]) {
    if (t.program == program && t.to == to) return true;
  }
  return false;
}

void HintikkaStructure::addTransition(StateId from, P program, StateId to) {
  if (!hasTransition(from, program, to)) trans[from].push_back({program, to});
}

namespace {

void requireSatRoot(const Tableau& t) {
  if (t.root() == kNoNode || t.node(t.root()).status != Status::Sat) {
    throw PreconditionError("tableau root is not sat");
  }
}

std::vector<NodeId> satChildren(const Tableau& t, NodeId v) {
  std::vector<NodeId> out;
  for (NodeId c : t.children(v)) {
    if (t.node(c).status == Status::Sat) out.push_back(c);
  }
  return out;
}

// States reached from u by following sat children through partial nodes, in breadth-first order.
std::vector<NodeId> reachStates(const Tableau& t, NodeId u) {
  std::vector<NodeId> out;
  std::set<NodeId> seen{u};
  std::deque<NodeId> work{u};
  while (!work.empty()) {
    NodeId v = work.front();
    work.pop_front();
    if (!t.node(v).info.partial) {
      out.push_back(v);
      continue;
    }
    for (NodeId c : satChildren(t, v)) {
      if (seen.insert(c).second) work.push_back(c);
    }
  }
  return out;
}

std::string stateText(StateId s) { return "state " + std::to_string(s); }

}  // namespace

std::vector<bool> fatPath(const Tableau& t) {
  requireSatRoot(t);
  std::vector<bool> in(t.size(), false);
  std::deque<NodeId> work{t.root()};
  in[t.root()] = true;
  while (!work.empty()) {
    NodeId v = work.front();
    work.pop_front();
    auto next = t.node(v).info.partial ? satChildren(t, v) : t.children(v);
    for (NodeId c : next) {
      if (!in[c]) {
        in[c] = true;
        work.push_back(c);
      }
    }
  }
  return in;
}

HintikkaStructure extractHintikka(const Tableau& t, ShadowStats* stats, bool repair) {
  const Store& st = t.store();
  std::vector<bool> fat = fatPath(t);
  HintikkaStructure h;
  std::vector<StateId> stateOf(t.size(), UINT32_MAX);
  for (NodeId v = 0; v < t.size(); ++v) {
    if (fat[v] && !t.node(v).info.partial) stateOf[v] = h.addState(t.node(v).label.phi, v, false);
  }
  for (NodeId v = 0; v < t.size(); ++v) {
    if (stateOf[v] == UINT32_MAX) continue;
    for (auto e : t.node(v).out) {
      const Edge& edge = t.edge(e);
      if (!edge.tag.valid()) continue;
      auto d = asDiamond(st, edge.tag);
      if (!d || !st.isAtPOmega(d->first)) continue;
      for (NodeId r : reachStates(t, edge.to)) h.addTransition(stateOf[v], d->first, stateOf[r]);
    }
  }
  auto first = reachStates(t, t.root());
  if (first.empty()) throw std::logic_error("sat root reaches no state");
  h.witness = stateOf[first.front()];
  ShadowStats ss;
  if (repair) ss = repairShadows(st, h);
  if (stats) *stats = ss;
  return h;
}

namespace {

struct Conflict {
  StateId from;
  StateId to;
  std::vector<P> programs;
};

std::vector<Conflict> findConflicts(const Store& st, const HintikkaStructure& h) {
  std::vector<Conflict> out;
  for (StateId s = 0; s < h.size(); ++s) {
    std::map<StateId, std::vector<P>> byTarget;
    for (const Transition& tr : h.trans[s]) byTarget[tr.to].push_back(tr.program);
    for (auto& [to, progs] : byTarget) {
      if (progs.size() < 2) continue;
      std::sort(progs.begin(), progs.end(), [&](P a, P b) { return compareTerms(st, a, b) < 0; });
      out.push_back({s, to, progs});
    }
  }
  return out;
}

}  // namespace

ShadowStats repairShadows(const Store& st, HintikkaStructure& h) {
  ShadowStats stats;
  std::size_t previous = SIZE_MAX;
  for (;;) {
    auto conflicts = findConflicts(st, h);
    if (conflicts.empty()) break;
    if (conflicts.size() >= previous) throw std::logic_error("shadow repair made no progress");
    previous = conflicts.size();
    ++stats.passes;
    std::vector<std::pair<StateId, StateId>> fresh;
    for (const Conflict& c : conflicts) {
      for (std::size_t i = 1; i < c.programs.size(); ++i) {
        FormulaSet label = h.labels[c.to];
        StateId sh = h.addState(std::move(label), h.origin[c.to], true);
        for (Transition& tr : h.trans[c.from]) {
          if (tr.program == c.programs[i] && tr.to == c.to) tr.to = sh;
        }
        fresh.emplace_back(sh, c.to);
        ++stats.shadows;
      }
    }
    for (auto [sh, orig] : fresh) h.trans[sh] = h.trans[orig];
  }
  return stats;
}

bool HintikkaReport::ok() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.pass; });
}

std::string HintikkaReport::summary() const {
  std::string out;
  for (const ConditionResult& c : conditions) {
    out += c.name + (c.pass ? " pass" : " FAIL: " + c.counterexample) + "\n";
  }
  return out;
}

namespace {

class Checker {
public:
  Checker(Reducer& red, const HintikkaStructure& h) : red_(red), st_(red.store()), h_(h) {}

  HintikkaReport run() {
    HintikkaReport r;
    r.conditions = {check("H1", &Checker::h1), check("H2", &Checker::h2), check("H3", &Checker::h3),
                    check("H4", &Checker::h4), check("H5", &Checker::h5), check("H6", &Checker::h6),
                    check("H7", &Checker::h7), check("H8", &Checker::h8), h9()};
    return r;
  }

private:
  using Rule = std::optional<std::string> (Checker::*)(StateId, F);

  ConditionResult check(const char* name, Rule rule) {
    ConditionResult res{name, true, ""};
    for (StateId s = 0; s < h_.size() && res.pass; ++s) {
      for (F f : h_.labels[s]) {
        if (auto why = (this->*rule)(s, f)) {
          res.pass = false;
          res.counterexample = stateText(s) + ": " + print(st_, f) + ": " + *why;
          break;
        }
      }
    }
    return res;
  }

  bool has(StateId s, F f) const { return fset::contains(h_.labels[s], f); }

  std::optional<std::string> h1(StateId s, F f) {
    const FNode& n = st_.node(f);
    if (n.kind == FKind::False) return "false in label";
    if (n.kind != FKind::Not) return std::nullopt;
    F g{n.a};
    const FNode& gn = st_.node(g);
    if (gn.kind == FKind::True) return "negated true in label";
    if (gn.kind == FKind::Atom && has(s, g)) return "atom and its negation";
    if (gn.kind == FKind::Cap && st_.isSigmaTilde(P{gn.b}) && has(s, g)) return "capability and its negation";
    return std::nullopt;
  }

  std::optional<std::string> h2(StateId, F f) {
    const FNode& n = st_.node(f);
    if (n.kind != FKind::Not) return std::nullopt;
    const FNode& g = st_.node(F{n.a});
    if (g.kind == FKind::Cap && st_.node(P{g.b}).kind == PKind::Test) return "negated test capability";
    return std::nullopt;
  }

  std::optional<std::string> h3(StateId s, F f) {
    if (!red_.isAlphaBeta(f)) return std::nullopt;
    if (red_.someReductionSetIn(f, h_.labels[s])) return std::nullopt;
    return "no reduction set in label";
  }

  std::optional<std::string> h4(StateId s, F f) {
    const FNode& n = st_.node(f);
    if (n.kind != FKind::Not) return std::nullopt;
    const FNode& g = st_.node(F{n.a});
    if (g.kind != FKind::Cap || !st_.isSigmaTilde(P{g.b})) return std::nullopt;
    FormulaSet demand = capabilityDemand(st_, f, arrowCapabilities(st_, h_.labels[s], g.a));
    for (StateId t = 0; t < h_.size(); ++t) {
      if (fset::subset(demand, h_.labels[t])) return std::nullopt;
    }
    return "no state holds " + printSet(st_, demand);
  }

  std::optional<std::string> h5(StateId s, F f) {
    auto b = asBox(st_, f);
    if (!b || st_.node(b->first).kind != PKind::Atomic) return std::nullopt;
    for (const Transition& tr : h_.trans[s]) {
      if (tr.program == b->first && !has(tr.to, b->second)) return "body missing at " + stateText(tr.to);
    }
    return std::nullopt;
  }

  std::optional<std::string> h6(StateId s, F f) {
    auto b = asBox(st_, f);
    if (!b || !st_.isOmega(b->first)) return std::nullopt;
    F body = b->second;
    P os = st_.star(st_.omega());
    auto inner = asBox(st_, body);
    bool starred = inner && inner->first == os && has(s, body);
    if (!starred && !has(s, st_.box(os, body))) return "reflexive companion missing";
    for (const Transition& tr : h_.trans[s]) {
      if (!has(tr.to, body)) return "body missing at " + stateText(tr.to);
    }
    return std::nullopt;
  }

  std::optional<std::string> h7(StateId s, F f) {
    auto d = asDiamond(st_, f);
    if (!d || !st_.isAtPOmega(d->first)) return std::nullopt;
    F want = st_.neg(d->second);
    for (const Transition& tr : h_.trans[s]) {
      if (tr.program == d->first && has(tr.to, want)) return std::nullopt;
    }
    return "no successor";
  }

  std::optional<std::string> h8(StateId s, F f) {
    if (!red_.isAlphaBeta(f) || !red_.isEventuality(f)) return std::nullopt;
    F goal = eventualityGoal(st_, f);
    std::set<std::pair<StateId, F>> seen{{s, f}};
    std::deque<std::pair<StateId, F>> work{{s, f}};
    auto visit = [&](StateId u, F g) {
      if (seen.insert({u, g}).second) work.emplace_back(u, g);
    };
    while (!work.empty()) {
      auto [u, g] = work.front();
      work.pop_front();
      auto d = asDiamond(st_, g);
      if (d && st_.isAtPOmega(d->first)) {
        F next = st_.neg(d->second);
        for (const Transition& tr : h_.trans[u]) {
          if (tr.program != d->first || !has(tr.to, next)) continue;
          if (next == goal) return std::nullopt;
          visit(tr.to, next);
        }
        continue;
      }
      if (!red_.isAlphaBeta(g)) continue;
      for (const FormulaSet& r : red_.reductionSets(g)) {
        if (!fset::subset(r, h_.labels[u])) continue;
        for (F x : r) {
          if (!red_.vtrd(g, x)) continue;
          if (x == goal) return std::nullopt;
          visit(u, x);
        }
      }
    }
    return "no structure path to " + print(st_, goal);
  }

  ConditionResult h9() {
    ConditionResult res{"H9", true, ""};
    auto conflicts = findConflicts(st_, h_);
    if (!conflicts.empty()) {
      const Conflict& c = conflicts.front();
      res.pass = false;
      res.counterexample = stateText(c.from) + " reaches " + stateText(c.to) + " by " + print(st_, c.programs[0]) +
                           " and " + print(st_, c.programs[1]);
    }
    return res;
  }

  Reducer& red_;
  Store& st_;
  const HintikkaStructure& h_;
};

}  // namespace

HintikkaReport checkHintikka(Reducer& red, const HintikkaStructure& h) { return Checker(red, h).run(); }

Relation Relation::identity(std::size_t n) {
  Relation r(n);
  for (std::size_t i = 0; i < n; ++i) r.set(i, i);
  return r;
}

void Relation::orRow(std::size_t dst, const Relation& src, std::size_t row) {
  for (std::size_t w = 0; w < words_; ++w) bits_[dst * words_ + w] |= src.bits_[row * words_ + w];
}

Relation Relation::unite(const Relation& o) const {
  Relation r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= o.bits_[i];
  return r;
}

Relation Relation::compose(const Relation& o) const {
  Relation r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (get(i, j)) r.orRow(i, o, j);
    }
  }
  return r;
}

Relation Relation::transitive() const {
  Relation r = *this;
  for (std::size_t k = 0; k < n_; ++k) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (r.get(i, k)) r.orRow(i, r, k);
    }
  }
  return r;
}

Relation Relation::reflexiveTransitive() const { return identity(n_).unite(transitive()); }

bool Relation::subsetOf(const Relation& o) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & ~o.bits_[i]) return false;
  }
  return true;
}

bool Relation::reflexive() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!get(i, i)) return false;
  }
  return true;
}

bool Relation::isTransitive() const { return compose(*this).subsetOf(*this); }

Model::Model(Store& st, const HintikkaStructure& h) : st_(st), labels_(h.labels) {
  std::size_t n = h.size();
  Relation step(n);
  for (StateId s = 0; s < n; ++s) {
    for (const Transition& tr : h.trans[s]) {
      step.set(s, tr.to);
      const PNode& pn = st_.node(tr.program);
      if (pn.kind == PKind::Atomic) {
        auto it = atomic_.try_emplace(pn.a, n).first;
        it->second.set(s, tr.to);
      }
    }
  }
  omega_ = Relation::identity(n).unite(step.transitive());
}

const Relation& Model::relation(P p) {
  if (auto it = rels_.find(p); it != rels_.end()) return it->second;
  if (relBusy_[p]) throw ModelError("cyclic dependency while interpreting " + print(st_, p));
  relBusy_[p] = true;
  struct Release {
    bool& flag;
    ~Release() { flag = false; }
  } release{relBusy_[p]};
  std::size_t n = size();
  const PNode pn = st_.node(p);
  Relation r(n);
  switch (pn.kind) {
    case PKind::Atomic:
      if (auto it = atomic_.find(pn.a); it != atomic_.end()) r = it->second;
      break;
    case PKind::Test:
      for (StateId u = 0; u < n; ++u) {
        if (eval(u, F{pn.a})) r.set(u, u);
      }
      break;
    case PKind::Arrow:
      if (st_.isOmega(p)) {
        r = omega_;
        break;
      }
      for (StateId u = 0; u < n; ++u) {
        bool pre = eval(u, F{pn.a});
        for (StateId v = 0; v < n; ++v) {
          if (omega_.get(u, v) && (!pre || eval(v, F{pn.b}))) r.set(u, v);
        }
      }
      break;
    case PKind::Seq: {
      Relation a = relation(P{pn.a});
      r = a.compose(relation(P{pn.b}));
      break;
    }
    case PKind::Choice: {
      Relation a = relation(P{pn.a});
      r = a.unite(relation(P{pn.b}));
      break;
    }
    case PKind::Star:
      r = relation(P{pn.a}).reflexiveTransitive();
      break;
  }
  return rels_.emplace(p, std::move(r)).first->second;
}

const Relation& Model::capsOf(std::uint32_t agent, StateId s) {
  auto key = std::make_pair(agent, s);
  if (auto it = caps_.find(key); it != caps_.end()) return it->second;
  Relation r(size());
  for (F f : labels_[s]) {
    const FNode& n = st_.node(f);
    if (n.kind != FKind::Cap || n.a != agent || !st_.isSigmaTilde(P{n.b})) continue;
    r = r.unite(relation(P{n.b}));
  }
  for (const auto& [key, value] : guesses_) {
    const FNode& n = st_.node(key.first);
    if (value && key.second == s && n.a == agent) r = r.unite(relation(P{n.b}));
  }
  return caps_.emplace(key, std::move(r)).first->second;
}

bool Model::evalCap(StateId s, F f) {
  const FNode n = st_.node(f);
  P prog{n.b};
  const PNode pn = st_.node(prog);
  switch (pn.kind) {
    case PKind::Test:
      return true;
    case PKind::Atomic:
    case PKind::Arrow:
      if (fset::contains(labels_[s], f)) return true;
      if (auto g = guesses_.find({f, s}); g != guesses_.end()) {
        used_.insert({f, s});
        return g->second;
      }
      try {
        return relation(prog).subsetOf(capsOf(n.a, s));
      } catch (const ModelError&) {
        // Cyclic through capability sets. A true guess adds the program to the capability set;
        // a false guess, taken when the label negates the statement, is verified afterwards.
        bool guess = !fset::contains(labels_[s], st_.neg(f));
        guesses_[{f, s}] = guess;
        fresh_ = true;
        used_.insert({f, s});
        return guess;
      }
    case PKind::Seq: {
      P a{pn.a};
      return eval(s, st_.capById(n.a, a)) && eval(s, st_.box(a, st_.capById(n.a, P{pn.b})));
    }
    case PKind::Choice:
      return eval(s, st_.capById(n.a, P{pn.a})) && eval(s, st_.capById(n.a, P{pn.b}));
    case PKind::Star:
      return eval(s, st_.box(prog, st_.capById(n.a, P{pn.a})));
  }
  return false;
}

bool Model::eval(StateId s, F f) {
  auto& row = memo_[f];
  if (row.empty()) row.assign(size(), -1);
  if (row[s] == 2) throw ModelError("cyclic dependency while evaluating " + print(st_, f));
  if (row[s] >= 0) return row[s] == 1;
  row[s] = 2;
  struct Reset {
    std::unordered_map<F, std::vector<std::int8_t>>& memo;
    F f;
    StateId s;
    bool armed = true;
    ~Reset() {
      if (armed) memo[f][s] = -1;
    }
  } reset{memo_, f, s};
  const FNode n = st_.node(f);
  bool v = false;
  switch (n.kind) {
    case FKind::Atom: v = fset::contains(labels_[s], f); break;
    case FKind::True: v = true; break;
    case FKind::False: v = false; break;
    case FKind::Not: v = !eval(s, F{n.a}); break;
    case FKind::Box: {
      v = true;
      const Relation& r = relation(P{n.a});
      for (StateId t = 0; t < size() && v; ++t) {
        if (r.get(s, t) && !eval(t, F{n.b})) v = false;
      }
      break;
    }
    case FKind::Cap: v = evalCap(s, f); break;
  }
  reset.armed = false;
  memo_[f][s] = v ? 1 : 0;
  return v;
}

bool Model::settle() {
  std::set<std::pair<F, StateId>> checked;
  std::vector<std::pair<F, StateId>> wrong;
  for (bool grew = true; grew;) {
    grew = false;
    auto pending = used_;
    for (const auto& key : pending) {
      if (guesses_.at(key) || !checked.insert(key).second) continue;
      grew = true;
      const FNode n = st_.node(key.first);
      if (relation(P{n.b}).subsetOf(capsOf(n.a, key.second))) wrong.push_back(key);
    }
  }
  if (!fresh_ && wrong.empty()) return true;
  for (const auto& key : wrong) guesses_[key] = true;
  fresh_ = false;
  rels_.clear();
  relBusy_.clear();
  memo_.clear();
  caps_.clear();
  used_.clear();
  return false;
}

std::vector<bool> Model::holdsAll(StateId s, const std::vector<F>& fs) {
  if (s >= size()) throw ModelError("unknown state " + std::to_string(s));
  for (int round = 0; round < kMaxRounds; ++round) {
    std::vector<bool> out;
    for (F f : fs) out.push_back(eval(s, f));
    if (settle()) return out;
  }
  throw ModelError("no consistent capability assignment found");
}

bool Model::holds(StateId s, F f) { return holdsAll(s, {f}).front(); }

Model buildModel(Reducer& red, const HintikkaStructure& h) {
  HintikkaReport r = checkHintikka(red, h);
  if (!r.ok()) throw ModelError("invalid Hintikka structure\n" + r.summary());
  return Model(red.store(), h);
}

bool modelCheck(Model& m, StateId s, F f) { return m.holds(s, f); }

WitnessReport verifyWitness(const Tableau& t, const FormulaSet& roots) {
  WitnessReport r;
  Reducer& red = t.reducer();
  try {
    ShadowStats ss;
    HintikkaStructure h = extractHintikka(t, &ss);
    r.extracted = true;
    r.states = h.size();
    r.shadows = ss.shadows;
    r.hintikka = checkHintikka(red, h);
    if (!r.hintikka.ok()) {
      r.error = "structure check failed";
      return r;
    }
    Model m = buildModel(red, h);
    r.modelBuilt = true;
    r.omegaS4 = m.omega().reflexive() && m.omega().isTransitive();
    StateId w = h.witness;
    if (!fset::subset(roots, h.labels[w])) {
      w = UINT32_MAX;
      for (StateId s = 0; s < h.size() && w == UINT32_MAX; ++s) {
        if (fset::subset(roots, h.labels[s])) w = s;
      }
      if (w == UINT32_MAX) {
        r.error = "no state carries the root formulas";
        return r;
      }
    }
    auto values = m.holdsAll(w, std::vector<F>(roots.begin(), roots.end()));
    r.rootsHold = std::all_of(values.begin(), values.end(), [](bool b) { return b; });
    if (!r.rootsHold) r.error = "a root formula fails at the witnessing state";
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

namespace {

nlohmann::json structureJson(const Store& st, const HintikkaStructure& h) {
  nlohmann::json j;
  j["witness"] = h.witness;
  nlohmann::json states = nlohmann::json::array();
  for (StateId s = 0; s < h.size(); ++s) {
    std::vector<F> fs(h.labels[s].begin(), h.labels[s].end());
    sortCanonical(st, fs);
    nlohmann::json label = nlohmann::json::array();
    for (F f : fs) label.push_back(print(st, f));
    states.push_back({{"id", s}, {"node", h.origin[s]}, {"shadow", static_cast<bool>(h.shadow[s])}, {"label", label}});
  }
  j["states"] = states;
  nlohmann::json trans = nlohmann::json::array();
  for (StateId s = 0; s < h.size(); ++s) {
    for (const Transition& tr : h.trans[s]) {
      trans.push_back({{"from", s}, {"program", print(st, tr.program)}, {"to", tr.to}});
    }
  }
  j["transitions"] = trans;
  return j;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string structureToJson(const Store& st, const HintikkaStructure& h) { return structureJson(st, h).dump(2); }

std::string structureToDot(const Store& st, const HintikkaStructure& h) {
  std::string out = "digraph model {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (StateId s = 0; s < h.size(); ++s) {
    std::vector<F> fs(h.labels[s].begin(), h.labels[s].end());
    sortCanonical(st, fs);
    std::string label = "s" + std::to_string(s) + (h.shadow[s] ? " (shadow)" : "");
    for (F f : fs) label += "\\n" + escape(print(st, f));
    out += "  s" + std::to_string(s) + " [label=\"" + label + "\"";
    if (s == h.witness) out += ", penwidth=2";
    out += "];\n";
  }
  for (StateId s = 0; s < h.size(); ++s) {
    for (const Transition& tr : h.trans[s]) {
      out += "  s" + std::to_string(s) + " -> s" + std::to_string(tr.to) + " [label=\"" +
             escape(print(st, tr.program)) + "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

std::string Model::toJson(const HintikkaStructure& h) {
  nlohmann::json j = structureJson(st_, h);
  nlohmann::json valuation = nlohmann::json::array();
  for (StateId s = 0; s < size(); ++s) {
    nlohmann::json atoms = nlohmann::json::array();
    for (F f : labels_[s]) {
      if (st_.node(f).kind == FKind::Atom) atoms.push_back(print(st_, f));
    }
    std::sort(atoms.begin(), atoms.end());
    valuation.push_back(atoms);
  }
  j["valuation"] = valuation;
  nlohmann::json omega = nlohmann::json::array();
  for (StateId u = 0; u < size(); ++u) {
    for (StateId v = 0; v < size(); ++v) {
      if (omega_.get(u, v)) omega.push_back({u, v});
    }
  }
  j["omega"] = omega;
  return j.dump(2);
}

}  // namespace tpdl
