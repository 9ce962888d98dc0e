#include "reduction.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"

namespace tpdl {

Classification Reducer::classification(F f) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cls_.find(f);
    if (it != cls_.end()) return it->second;
  }
  Classification c = classify(st_, f);
  std::lock_guard<std::mutex> lock(mutex_);
  cls_.emplace(f, c);
  return c;
}

const std::vector<FdPair>& Reducer::finalizedDecomposition(F f) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = fd_.find(f);
    if (it != fd_.end()) return it->second;
  }
  if (!isEventuality(f) || !isAlphaBeta(f)) {
    throw PreconditionError("finalizedDecomposition: not an alpha/beta eventuality");
  }
  auto pairs = computeFd(f);
  std::lock_guard<std::mutex> lock(mutex_);
  return fd_.emplace(f, std::move(pairs)).first->second;
}

std::vector<FdPair> Reducer::computeFd(F f) {
  struct Triple {
    FormulaSet principals;
    FormulaSet tests;
    F focus;
  };
  std::set<std::tuple<FormulaSet, FormulaSet, F>> seen;
  std::set<std::pair<FormulaSet, F>> finals;
  std::vector<Triple> stack{{{}, {}, f}};
  seen.insert({{}, {}, f});
  auto push = [&](Triple t) {
    if (seen.insert({t.principals, t.tests, t.focus}).second) stack.push_back(std::move(t));
  };
  while (!stack.empty()) {
    Triple t = std::move(stack.back());
    stack.pop_back();
    F theta = t.focus;
    bool inP = fset::contains(t.principals, theta);
    bool applicable = false;
    if (isEventuality(theta) && !inP) {
      auto d = asDiamond(st_, theta);
      P prog = d->first;
      F chi = d->second;
      const PNode pn = st_.node(prog);
      FormulaSet np = t.principals;
      fset::insert(np, theta);
      auto next = [&](F focus, FormulaSet tests) {
        applicable = true;
        push({np, std::move(tests), focus});
      };
      switch (pn.kind) {
        case PKind::Star:
          next(st_.neg(chi), t.tests);
          next(st_.neg(st_.box(P{pn.a}, st_.box(prog, chi))), t.tests);
          break;
        case PKind::Seq:
          next(st_.neg(st_.box(P{pn.a}, st_.box(P{pn.b}, chi))), t.tests);
          break;
        case PKind::Choice:
          next(st_.neg(st_.box(P{pn.a}, chi)), t.tests);
          next(st_.neg(st_.box(P{pn.b}, chi)), t.tests);
          break;
        case PKind::Test: {
          FormulaSet nt = t.tests;
          fset::insert(nt, F{pn.a});
          next(st_.neg(chi), std::move(nt));
          break;
        }
        case PKind::Arrow:
          if (!st_.isOmega(prog)) {
            P om = st_.omega();
            next(st_.neg(st_.box(st_.test(st_.neg(F{pn.a})), st_.box(om, chi))), t.tests);
            next(st_.neg(st_.box(om, st_.box(st_.test(F{pn.b}), chi))), t.tests);
          }
          break;
        case PKind::Atomic:
          break;
      }
    }
    if (!applicable && !inP) finals.insert({t.tests, theta});
  }
  std::vector<FdPair> out;
  for (auto& [tests, focus] : finals) out.push_back({tests, focus});
  auto canon = [&](const FormulaSet& s) {
    std::vector<F> v(s.begin(), s.end());
    sortCanonical(st_, v);
    return v;
  };
  std::stable_sort(out.begin(), out.end(), [&](const FdPair& a, const FdPair& b) {
    if (int c = compareTerms(st_, a.focus, b.focus)) return c < 0;
    auto ca = canon(a.tests);
    auto cb = canon(b.tests);
    for (std::size_t i = 0; i < ca.size() && i < cb.size(); ++i) {
      if (int c = compareTerms(st_, ca[i], cb[i])) return c < 0;
    }
    return ca.size() < cb.size();
  });
  return out;
}

const std::vector<FormulaSet>& Reducer::reductionSets(F f) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = sets_.find(f);
    if (it != sets_.end()) return it->second;
  }
  auto sets = computeSets(f);
  std::lock_guard<std::mutex> lock(mutex_);
  return sets_.emplace(f, std::move(sets)).first->second;
}

std::vector<FormulaSet> Reducer::computeSets(F f) {
  Classification c = classification(f);
  if (!c.isAlphaBeta()) throw PreconditionError("reductionSets: not an alpha/beta formula");
  std::vector<FormulaSet> out;
  if (isEventuality(f)) {
    for (const FdPair& p : finalizedDecomposition(f)) {
      FormulaSet s = p.tests;
      fset::insert(s, p.focus);
      out.push_back(std::move(s));
    }
  } else if (c.isAlpha()) {
    std::vector<F> v{c.c1};
    if (c.c2.valid()) v.push_back(c.c2);
    out.push_back(fset::make(std::move(v)));
  } else {
    out.push_back({c.c1});
    out.push_back({c.c2});
  }
  return out;
}

bool Reducer::vtrd(F f, F g) {
  auto d = asDiamond(st_, f);
  if (!d) return false;
  Classification c = classification(f);
  if (!c.isAlphaBeta()) return false;
  if (isEventuality(f)) {
    for (const FdPair& p : finalizedDecomposition(f)) {
      if (p.focus == g) return true;
    }
    return false;
  }
  if (c.isAlpha()) return g == c.c1;
  return g == c.c1 || g == c.c2;
}

bool Reducer::someReductionSetIn(F f, const FormulaSet& phi) {
  for (const FormulaSet& r : reductionSets(f)) {
    if (fset::subset(r, phi)) return true;
  }
  return false;
}

}  // namespace tpdl
