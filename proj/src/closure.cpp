#include "closure.hpp"

#include <deque>

#include "errors.hpp"

namespace tpdl {

std::uint64_t defaultClosureCap(const Store& st, const FormulaSet& roots) {
  std::uint64_t n = 0;
  for (F f : roots) n += st.size(f);
  return 64 * n * n;
}

FormulaSet closure(Reducer& red, const FormulaSet& roots, std::uint64_t cap) {
  Store& st = red.store();
  if (cap == 0) cap = defaultClosureCap(st, roots);
  FormulaSet out;
  std::deque<F> work;
  auto add = [&](F g) {
    if (fset::insert(out, g)) {
      if (out.size() > cap) {
        throw BudgetExceeded("closure exceeds cardinality cap of " + std::to_string(cap));
      }
      work.push_back(g);
    }
  };
  for (F f : roots) add(f);
  while (!work.empty()) {
    F g = work.front();
    work.pop_front();
    if (red.isAlphaBeta(g)) {
      for (const FormulaSet& r : red.reductionSets(g)) {
        for (F h : r) add(h);
      }
    }
    if (auto d = asDiamond(st, g); d && st.isAtPOmega(d->first)) add(st.neg(d->second));
    if (auto b = asBox(st, g); b && st.isAtPOmega(b->first)) add(b->second);
    if (auto c = omegaCompanion(st, g)) add(*c);
    const FNode n = st.node(g);
    if (n.kind == FKind::Cap && st.node(P{n.b}).kind == PKind::Arrow) {
      const PNode pn = st.node(P{n.b});
      add(F{pn.a});
      add(st.neg(F{pn.b}));
    }
    if (n.kind == FKind::Not) {
      const FNode in = st.node(F{n.a});
      if (in.kind == FKind::Cap && st.node(P{in.b}).kind == PKind::Arrow) {
        const PNode pn = st.node(P{in.b});
        add(st.neg(F{pn.a}));
        add(F{pn.b});
      }
    }
  }
  return out;
}

FormulaSet closure(Reducer& red, F f, std::uint64_t cap) { return closure(red, FormulaSet{f}, cap); }

std::vector<F> arrowCapabilities(const Store& st, const FormulaSet& phi, std::uint32_t agent) {
  std::vector<F> out;
  for (F f : phi) {
    const FNode& n = st.node(f);
    if (n.kind == FKind::Cap && n.a == agent && st.node(P{n.b}).kind == PKind::Arrow) out.push_back(f);
  }
  sortCanonical(st, out);
  return out;
}

namespace {

struct CapParts {
  std::uint32_t agent;
  P prog;
};

CapParts checkNegCap(const Store& st, F negCap) {
  const FNode& n = st.node(negCap);
  if (n.kind == FKind::Not) {
    const FNode& in = st.node(F{n.a});
    if (in.kind == FKind::Cap && st.isSigmaTilde(P{in.b})) return {in.a, P{in.b}};
  }
  throw PreconditionError("expected a negated capability over an atomic or arrow program");
}

// Returns the effects psi_1..psi_k and checks every member is an arrow capability of the agent.
std::vector<F> effects(const Store& st, std::uint32_t agent, const std::vector<F>& gamma) {
  std::vector<F> out;
  for (F g : gamma) {
    const FNode& n = st.node(g);
    if (n.kind != FKind::Cap || n.a != agent || st.node(P{n.b}).kind != PKind::Arrow) {
      throw PreconditionError("gamma must hold arrow capabilities of the same agent");
    }
    out.push_back(F{st.node(P{n.b}).b});
  }
  return out;
}

// tails[j] = [?~psi_j]...[?~psi_k]false, with tails[k] = false.
std::vector<F> tails(Store& st, const std::vector<F>& psis) {
  std::vector<F> out(psis.size() + 1);
  out[psis.size()] = st.bottom();
  for (std::size_t j = psis.size(); j-- > 0;) out[j] = st.box(st.test(st.neg(psis[j])), out[j + 1]);
  return out;
}

}  // namespace

FormulaSet capabilityDemand(Store& st, F negCap, const std::vector<F>& gamma) {
  CapParts parts = checkNegCap(st, negCap);
  auto psis = effects(st, parts.agent, gamma);
  auto t = tails(st, psis);
  std::vector<F> out;
  for (F g : gamma) out.push_back(F{st.node(P{st.node(g).b}).a});
  out.push_back(st.neg(st.box(parts.prog, t[0])));
  return fset::make(std::move(out));
}

FormulaSet cprSet(Reducer& red, F f, F negCap, const std::vector<F>& gamma) {
  Store& st = red.store();
  CapParts parts = checkNegCap(st, negCap);
  auto psis = effects(st, parts.agent, gamma);
  FormulaSet cl = closure(red, f);
  if (!fset::contains(cl, negCap)) throw PreconditionError("negated capability is not in the closure");
  for (F g : gamma) {
    if (!fset::contains(cl, g)) throw PreconditionError("capability statement is not in the closure");
  }
  auto t = tails(st, psis);
  std::vector<F> out;
  out.push_back(st.neg(st.box(parts.prog, t[0])));
  for (F tail : t) out.push_back(st.neg(tail));
  const PNode pn = st.node(parts.prog);
  if (pn.kind == PKind::Arrow) {
    F chi1{pn.a};
    F chi2{pn.b};
    P om = st.omega();
    out.push_back(st.neg(st.box(st.test(st.neg(chi1)), st.box(om, t[0]))));
    out.push_back(st.neg(st.box(om, t[0])));
    out.push_back(st.neg(st.box(om, st.box(st.test(chi2), t[0]))));
    out.push_back(st.neg(st.box(st.test(chi2), t[0])));
  }
  return fset::make(std::move(out));
}

}  // namespace tpdl
