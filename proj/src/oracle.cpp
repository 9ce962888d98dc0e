#include "oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

#include <json.hpp>

#include "closure.hpp"
#include "errors.hpp"
#include "parser.hpp"

namespace tpdl {

namespace {

std::string poolName(const char* letters, char fallback, std::size_t i) {
  std::string base(letters);
  if (i < base.size()) return std::string(1, base[i]);
  return std::string(1, fallback) + std::to_string(i);
}

class Generator {
public:
  Generator(Store& st, const GenConfig& cfg) : st_(st), cfg_(cfg), rng_(cfg.seed) {}

  F formula(std::size_t b) {
    const Weights& w = cfg_.weights;
    enum K { Atom, Top, Bottom, Neg, Box, Cap, Conj, Disj };
    // Leaves become less likely as the remaining budget grows.
    double leaf = 1.0 / static_cast<double>(b);
    std::vector<std::pair<double, int>> opts{{w.atom * leaf, Atom}, {w.top * leaf, Top}, {w.bottom * leaf, Bottom}};
    if (b >= 2) opts.insert(opts.end(), {{w.neg, Neg}, {w.cap, Cap}});
    if (b >= 3) opts.push_back({w.box, Box});
    if (b >= 5) opts.push_back({w.disj, Disj});
    if (b >= 6) opts.push_back({w.conj, Conj});
    switch (choose(opts, Atom)) {
      case Top: return st_.top();
      case Bottom: return st_.bottom();
      case Neg: return st_.neg(formula(b - 1));
      case Cap: return st_.cap(poolName("ijk", 'i', pick(cfg_.agentPool)), program(b - 1));
      case Box: {
        P p = program(between(1, b - 2));
        return st_.box(p, formula(b - 1 - st_.size(p)));
      }
      case Conj: {
        auto [x, y] = pair(b - 4);
        return st_.conj(x, y);
      }
      case Disj: {
        auto [x, y] = pair(b - 3);
        return st_.disj(x, y);
      }
      default: return st_.atom(poolName("pqrstuvw", 'p', pick(cfg_.atomPool)));
    }
  }

  P program(std::size_t b) {
    const Weights& w = cfg_.weights;
    enum K { Atomic, Test, Arrow, Seq, Choice, Star, Omega };
    std::vector<std::pair<double, int>> opts{{w.atomic, Atomic}};
    if (b >= 2) opts.push_back({w.test, Test});
    if (b >= 3) opts.insert(opts.end(), {{w.arrow, Arrow}, {w.choice, Choice}, {w.star, Star}, {w.omega, Omega}});
    if (b >= 4) opts.push_back({w.seq, Seq});
    switch (choose(opts, Atomic)) {
      case Test: return st_.test(formula(b - 1));
      case Omega: return st_.omega();
      case Arrow: {
        auto [x, y] = pair(b - 1);
        return st_.arrow(x, y);
      }
      case Choice: {
        P x = program(between(1, b - 2));
        return st_.choice(x, program(b - 1 - st_.size(x)));
      }
      case Star: return st_.star(program((b - 1) / 2));
      case Seq: {
        P x = program(between(1, (b - 2) / 2));
        return st_.seq(x, program(b - 1 - 2 * st_.size(x)));
      }
      default: return st_.atomic(poolName("abcd", 'a', pick(cfg_.progPool)));
    }
  }

private:
  std::pair<F, F> pair(std::size_t r) {
    F x = formula(between(1, r - 1));
    return {x, formula(r - st_.size(x))};
  }

  std::size_t pick(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return hi <= lo ? lo : lo + pick(hi - lo + 1); }

  int choose(const std::vector<std::pair<double, int>>& opts, int fallback) {
    double total = 0;
    for (const auto& o : opts) total += std::max(0.0, o.first);
    if (total <= 0) return fallback;
    double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53 * total;
    for (const auto& o : opts) {
      double w = std::max(0.0, o.first);
      if (u < w) return o.second;
      u -= w;
    }
    for (auto it = opts.rbegin(); it != opts.rend(); ++it) {
      if (it->first > 0) return it->second;
    }
    return fallback;
  }

  Store& st_;
  const GenConfig& cfg_;
  std::mt19937_64 rng_;
};

}  // namespace

F randomFormula(Store& st, const GenConfig& cfg) {
  if (cfg.atomPool == 0 || cfg.progPool == 0 || cfg.agentPool == 0) {
    throw PreconditionError("generator pools must be non-empty");
  }
  return Generator(st, cfg).formula(std::max<std::size_t>(cfg.maxSize, 1));
}

namespace {

class Searcher {
public:
  Searcher(Reducer& red, const SearchConfig& cfg) : red_(red), st_(red.store()), cfg_(cfg) {}

  std::optional<HintikkaStructure> run(const FormulaSet& roots) {
    closure(red_, roots, cfg_.closureBudget);
    HintikkaStructure h;
    h.addState(roots, kNoNode, false);
    return dfs(std::move(h));
  }

private:
  bool has(const HintikkaStructure& h, StateId s, F f) const { return fset::contains(h.labels[s], f); }

  bool contradictory(const FormulaSet& l) const {
    for (F f : l) {
      const FNode& n = st_.node(f);
      if (n.kind == FKind::False) return true;
      if (n.kind != FKind::Not) continue;
      F g{n.a};
      const FNode& gn = st_.node(g);
      if (gn.kind == FKind::True) return true;
      if (gn.kind == FKind::Atom && fset::contains(l, g)) return true;
      if (gn.kind == FKind::Cap) {
        PKind pk = st_.node(P{gn.b}).kind;
        if (pk == PKind::Test) return true;
        if (st_.isSigmaTilde(P{gn.b}) && fset::contains(l, g)) return true;
      }
    }
    return false;
  }

  // Adds every formula whose presence is forced: single reduction sets, omega companions and box bodies.
  bool saturate(HintikkaStructure& h) {
    P os = st_.star(st_.omega());
    for (bool changed = true; changed;) {
      changed = false;
      for (StateId s = 0; s < h.size(); ++s) {
        std::vector<std::pair<StateId, F>> add;
        for (F f : h.labels[s]) {
          if (red_.isAlphaBeta(f) && !red_.someReductionSetIn(f, h.labels[s])) {
            const auto& sets = red_.reductionSets(f);
            if (sets.size() == 1) {
              for (F g : sets.front()) add.emplace_back(s, g);
            }
          }
          auto b = asBox(st_, f);
          if (!b) continue;
          if (st_.isOmega(b->first)) {
            auto inner = asBox(st_, b->second);
            bool starred = inner && inner->first == os && has(h, s, b->second);
            if (!starred && !has(h, s, st_.box(os, b->second))) add.emplace_back(s, *omegaCompanion(st_, f));
            for (const Transition& tr : h.trans[s]) add.emplace_back(tr.to, b->second);
          } else if (st_.node(b->first).kind == PKind::Atomic) {
            for (const Transition& tr : h.trans[s]) {
              if (tr.program == b->first) add.emplace_back(tr.to, b->second);
            }
          }
        }
        for (auto [t, g] : add) changed |= fset::insert(h.labels[t], g);
      }
      for (StateId s = 0; s < h.size(); ++s) {
        if (contradictory(h.labels[s])) return false;
      }
    }
    return true;
  }

  bool conflicts(const HintikkaStructure& h, StateId s, P program, StateId t) const {
    for (const Transition& tr : h.trans[s]) {
      if (tr.to == t && tr.program != program) return true;
    }
    return false;
  }

  std::optional<HintikkaStructure> dfs(HintikkaStructure h) {
    if (++steps_ > cfg_.stepBudget) throw BudgetExceeded("bounded search exceeded its step budget");
    if (!saturate(h)) return std::nullopt;

    for (StateId s = 0; s < h.size(); ++s) {
      for (F f : h.labels[s]) {
        if (!red_.isAlphaBeta(f) || red_.someReductionSetIn(f, h.labels[s])) continue;
        for (const FormulaSet& r : red_.reductionSets(f)) {
          HintikkaStructure next = h;
          next.labels[s] = fset::unite(next.labels[s], r);
          if (auto found = dfs(std::move(next))) return found;
        }
        return std::nullopt;
      }
    }

    for (StateId s = 0; s < h.size(); ++s) {
      for (F f : h.labels[s]) {
        auto d = asDiamond(st_, f);
        if (!d || !st_.isAtPOmega(d->first)) continue;
        F want = st_.neg(d->second);
        bool met = std::any_of(h.trans[s].begin(), h.trans[s].end(), [&](const Transition& tr) {
          return tr.program == d->first && has(h, tr.to, want);
        });
        if (met) continue;
        for (StateId t = 0; t < h.size(); ++t) {
          if (conflicts(h, s, d->first, t)) continue;
          HintikkaStructure next = h;
          next.addTransition(s, d->first, t);
          fset::insert(next.labels[t], want);
          if (auto found = dfs(std::move(next))) return found;
        }
        if (h.size() < cfg_.maxStates) {
          HintikkaStructure next = h;
          StateId t = next.addState({want}, kNoNode, false);
          next.addTransition(s, d->first, t);
          if (auto found = dfs(std::move(next))) return found;
        }
        return std::nullopt;
      }
    }

    for (StateId s = 0; s < h.size(); ++s) {
      for (F f : h.labels[s]) {
        const FNode& n = st_.node(f);
        if (n.kind != FKind::Not) continue;
        const FNode& g = st_.node(F{n.a});
        if (g.kind != FKind::Cap || !st_.isSigmaTilde(P{g.b})) continue;
        FormulaSet demand = capabilityDemand(st_, f, arrowCapabilities(st_, h.labels[s], g.a));
        bool met = false;
        for (StateId t = 0; t < h.size() && !met; ++t) met = fset::subset(demand, h.labels[t]);
        if (met) continue;
        for (StateId t = 0; t < h.size(); ++t) {
          HintikkaStructure next = h;
          next.labels[t] = fset::unite(next.labels[t], demand);
          if (auto found = dfs(std::move(next))) return found;
        }
        if (h.size() < cfg_.maxStates) {
          HintikkaStructure next = h;
          next.addState(demand, kNoNode, false);
          if (auto found = dfs(std::move(next))) return found;
        }
        return std::nullopt;
      }
    }

    if (checkHintikka(red_, h).ok()) return h;
    return std::nullopt;
  }

  Reducer& red_;
  Store& st_;
  SearchConfig cfg_;
  std::size_t steps_ = 0;
};

}  // namespace

std::optional<HintikkaStructure> boundedSearch(Reducer& red, const FormulaSet& f, const SearchConfig& cfg) {
  if (cfg.maxStates < 1) throw PreconditionError("bounded search needs at least one state");
  return Searcher(red, cfg).run(f);
}

std::uint64_t caseSeed(std::uint64_t seed, std::size_t i) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

struct Outcome {
  bool sat = false;
  bool resource = false;
  bool witnessOk = false;
  bool violation = false;
  bool inconclusive = false;
  bool absent = false;
  bool satSearched = false;
  bool satFound = false;
  std::size_t nodes = 0;
  std::optional<DiffCase> record;
};

Outcome runCase(Reducer& red, const FormulaSet& roots, const std::string& text, const DiffOptions& opt) {
  Outcome o;
  std::optional<Verdict> v;
  try {
    v.emplace(solve(red, roots, opt.solve));
  } catch (const ResourceLimit& e) {
    o.resource = true;
    o.record = DiffCase{text, "resource-limit", e.what()};
    return o;
  }
  o.nodes = v->stats.nodesCreated;
  if (v->sat()) {
    o.sat = true;
    WitnessReport w = verifyWitness(*v->tableau, roots);
    o.witnessOk = w.ok();
    if (!o.witnessOk) {
      o.violation = true;
      o.record = DiffCase{text, "witness-failure", w.error + "\n" + w.hintikka.summary()};
    }
    if (opt.searchSat) {
      o.satSearched = true;
      try {
        o.satFound = boundedSearch(red, roots, opt.search).has_value();
      } catch (const BudgetExceeded&) {
      }
    }
    return o;
  }
  try {
    if (auto h = boundedSearch(red, roots, opt.search)) {
      o.violation = true;
      o.record = DiffCase{text, "structure-for-unsat", structureToJson(red.store(), *h)};
    } else {
      o.absent = true;
    }
  } catch (const BudgetExceeded&) {
    o.inconclusive = true;
  }
  return o;
}

using CaseSource = std::function<std::pair<FormulaSet, std::string>(Store&, std::size_t)>;

DiffReport runAll(std::size_t n, const CaseSource& source, const DiffOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  std::vector<Outcome> outcomes(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    Store st;
    Reducer red(st);
    for (std::size_t i = next++; i < n; i = next++) {
      auto [roots, text] = source(st, i);
      outcomes[i] = runCase(red, roots, text, opt);
    }
  };
  std::size_t threads = std::max<std::size_t>(1, std::min(opt.threads, n));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  DiffReport r;
  r.total = n;
  for (const Outcome& o : outcomes) {
    r.sat += o.sat;
    r.unsat += !o.sat && !o.resource;
    r.resourceLimits += o.resource;
    r.witnessVerified += o.witnessOk;
    r.violations += o.violation;
    r.inconclusive += o.inconclusive;
    r.searchAbsent += o.absent;
    r.satSearched += o.satSearched;
    r.satSearchFound += o.satFound;
    r.maxNodes = std::max(r.maxNodes, o.nodes);
    if (o.record) r.cases.push_back(*o.record);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

DiffReport differentialRun(std::size_t n, const GenConfig& cfg, const DiffOptions& opt) {
  return runAll(
      n,
      [&](Store& st, std::size_t i) {
        GenConfig c = cfg;
        c.seed = caseSeed(cfg.seed, i);
        F f = randomFormula(st, c);
        return std::make_pair(FormulaSet{f}, print(st, f));
      },
      opt);
}

DiffReport differentialCorpus(const std::vector<std::string>& corpus, const DiffOptions& opt) {
  return runAll(
      corpus.size(),
      [&](Store& st, std::size_t i) { return std::make_pair(fset::make(parseSource(st, corpus[i])), corpus[i]); },
      opt);
}

std::string DiffReport::toJson() const {
  nlohmann::json j{{"total", total},
                   {"sat", sat},
                   {"unsat", unsat},
                   {"violations", violations},
                   {"inconclusive", inconclusive},
                   {"search_absent", searchAbsent},
                   {"witness_verified", witnessVerified},
                   {"sat_searched", satSearched},
                   {"sat_search_found", satSearchFound},
                   {"resource_limits", resourceLimits},
                   {"max_nodes", maxNodes},
                   {"seconds", seconds}};
  nlohmann::json cs = nlohmann::json::array();
  for (const DiffCase& c : cases) cs.push_back({{"input", c.input}, {"kind", c.kind}, {"detail", c.detail}});
  j["cases"] = cs;
  return j.dump(2);
}

std::string DiffReport::summary() const {
  std::string out = "total " + std::to_string(total) + ", sat " + std::to_string(sat) + ", unsat " +
                    std::to_string(unsat) + ", violations " + std::to_string(violations) + ", inconclusive " +
                    std::to_string(inconclusive) + ", search absent " + std::to_string(searchAbsent) +
                    ", witness verified " + std::to_string(witnessVerified) + ", resource limits " +
                    std::to_string(resourceLimits);
  if (satSearched) out += ", structures found for sat " + std::to_string(satSearchFound) + "/" + std::to_string(satSearched);
  return out;
}

}  // namespace tpdl
