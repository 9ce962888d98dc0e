#include "syntax.hpp"

#include <algorithm>
#include <limits>

#include "errors.hpp"

namespace tpdl {

template <class T>
std::size_t ChunkedVector<T>::push(const T& v) {
  std::size_t i = size_.load(std::memory_order_relaxed);
  std::size_t chunk = i >> kChunkBits;
  if (chunk >= kMaxChunks) throw BudgetExceeded("term store capacity exhausted");
  if (!chunks_[chunk]) chunks_[chunk].reset(new T[kChunkSize]);
  chunks_[chunk][i & (kChunkSize - 1)] = v;
  size_.store(i + 1, std::memory_order_release);
  return i;
}

template class ChunkedVector<std::string>;
template class ChunkedVector<FNode>;
template class ChunkedVector<PNode>;
template class ChunkedVector<TermInfo>;

namespace {

std::uint64_t satAdd(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

std::uint64_t satMul2(std::uint64_t a) { return satAdd(a, a); }

}  // namespace

Store::Store() {
  top_ = makeF({FKind::True, 0, 0});
  bottom_ = makeF({FKind::False, 0, 0});
  omega_ = makeP({PKind::Arrow, top_.id, top_.id});
}

std::uint32_t Store::intern(std::string_view name) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = nameIds_.find(std::string(name));
  if (it != nameIds_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(names_.push(std::string(name)));
  nameIds_.emplace(std::string(name), id);
  return id;
}

const std::string& Store::name(std::uint32_t id) const { return names_[id]; }

F Store::makeF(const FNode& n) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = fids_.find(n);
  if (it != fids_.end()) return F{it->second};
  TermInfo info;
  switch (n.kind) {
    case FKind::Atom:
    case FKind::True:
    case FKind::False:
      info.size = 1;
      break;
    case FKind::Not:
      info.size = satAdd(1, finfo_[n.a].size);
      break;
    case FKind::Box:
      info.size = satAdd(satAdd(1, pinfo_[n.a].size), finfo_[n.b].size);
      break;
    case FKind::Cap:
      info.size = satAdd(1, pinfo_[n.b].size);
      break;
  }
  auto id = static_cast<std::uint32_t>(fnodes_.push(n));
  finfo_.push(info);
  fids_.emplace(n, id);
  return F{id};
}

P Store::makeP(const PNode& n) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = pids_.find(n);
  if (it != pids_.end()) return P{it->second};
  TermInfo info;
  switch (n.kind) {
    case PKind::Atomic:
      info.size = 1;
      break;
    case PKind::Test:
      info.size = satAdd(1, finfo_[n.a].size);
      break;
    case PKind::Arrow:
      info.size = satAdd(satAdd(1, finfo_[n.a].size), finfo_[n.b].size);
      break;
    case PKind::Seq:
      info.size = satAdd(satAdd(1, satMul2(pinfo_[n.a].size)), pinfo_[n.b].size);
      break;
    case PKind::Choice:
      info.size = satAdd(satAdd(1, pinfo_[n.a].size), pinfo_[n.b].size);
      break;
    case PKind::Star:
      info.size = satAdd(1, satMul2(pinfo_[n.a].size));
      break;
  }
  auto id = static_cast<std::uint32_t>(pnodes_.push(n));
  pinfo_.push(info);
  pids_.emplace(n, id);
  return P{id};
}

F Store::atom(std::string_view name) { return makeF({FKind::Atom, intern(name), 0}); }
F Store::top() { return top_; }
F Store::bottom() { return bottom_; }
F Store::neg(F f) { return makeF({FKind::Not, f.id, 0}); }
F Store::box(P p, F f) { return makeF({FKind::Box, p.id, f.id}); }
F Store::cap(std::string_view agent, P p) { return capById(intern(agent), p); }
F Store::capById(std::uint32_t agent, P p) { return makeF({FKind::Cap, agent, p.id}); }

P Store::atomic(std::string_view name) { return atomicById(intern(name)); }
P Store::atomicById(std::uint32_t name) { return makeP({PKind::Atomic, name, 0}); }
P Store::test(F f) { return makeP({PKind::Test, f.id, 0}); }
P Store::arrow(F pre, F post) { return makeP({PKind::Arrow, pre.id, post.id}); }
P Store::seq(P a, P b) { return makeP({PKind::Seq, a.id, b.id}); }
P Store::choice(P a, P b) { return makeP({PKind::Choice, a.id, b.id}); }
P Store::star(P a) { return makeP({PKind::Star, a.id, 0}); }
P Store::omega() { return omega_; }

F Store::conj(F a, F b) { return neg(box(test(a), neg(b))); }
F Store::disj(F a, F b) { return box(test(neg(a)), b); }
F Store::impl(F a, F b) { return box(test(a), b); }
F Store::dia(P p, F f) { return neg(box(p, neg(f))); }

bool Store::isAtPOmega(P p) const { return p == omega_ || node(p).kind == PKind::Atomic; }

bool Store::isSigma(P p) const {
  auto k = node(p).kind;
  return k == PKind::Atomic || k == PKind::Test || k == PKind::Arrow;
}

bool Store::isSigmaTilde(P p) const {
  auto k = node(p).kind;
  return k == PKind::Atomic || k == PKind::Arrow;
}

namespace fset {

FormulaSet make(std::vector<F> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool contains(const FormulaSet& s, F f) { return std::binary_search(s.begin(), s.end(), f); }

bool insert(FormulaSet& s, F f) {
  auto it = std::lower_bound(s.begin(), s.end(), f);
  if (it != s.end() && *it == f) return false;
  s.insert(it, f);
  return true;
}

bool erase(FormulaSet& s, F f) {
  auto it = std::lower_bound(s.begin(), s.end(), f);
  if (it == s.end() || *it != f) return false;
  s.erase(it);
  return true;
}

FormulaSet unite(const FormulaSet& a, const FormulaSet& b) {
  FormulaSet r;
  r.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

FormulaSet minus(const FormulaSet& a, const FormulaSet& b) {
  FormulaSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

bool subset(const FormulaSet& a, const FormulaSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::size_t hash(const FormulaSet& s) {
  std::size_t h = 0xcbf29ce484222325ull;
  for (F f : s) h = NodeKeyHash::mix(h, f.id, s.size());
  return h;
}

}  // namespace fset

namespace {

int cmp3(std::uint64_t a, std::uint64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }

int compareNames(const Store& st, std::uint32_t a, std::uint32_t b) {
  if (a == b) return 0;
  int c = st.name(a).compare(st.name(b));
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace

int compareTerms(const Store& st, F a, F b) {
  if (a == b) return 0;
  if (int c = cmp3(st.size(a), st.size(b))) return c;
  const FNode& x = st.node(a);
  const FNode& y = st.node(b);
  if (int c = cmp3(static_cast<int>(x.kind), static_cast<int>(y.kind))) return c;
  switch (x.kind) {
    case FKind::Atom:
      return compareNames(st, x.a, y.a);
    case FKind::True:
    case FKind::False:
      return 0;
    case FKind::Not:
      return compareTerms(st, F{x.a}, F{y.a});
    case FKind::Box:
      if (int c = compareTerms(st, P{x.a}, P{y.a})) return c;
      return compareTerms(st, F{x.b}, F{y.b});
    case FKind::Cap:
      if (int c = compareNames(st, x.a, y.a)) return c;
      return compareTerms(st, P{x.b}, P{y.b});
  }
  return 0;
}

int compareTerms(const Store& st, P a, P b) {
  if (a == b) return 0;
  if (int c = cmp3(st.size(a), st.size(b))) return c;
  const PNode& x = st.node(a);
  const PNode& y = st.node(b);
  if (int c = cmp3(static_cast<int>(x.kind), static_cast<int>(y.kind))) return c;
  switch (x.kind) {
    case PKind::Atomic:
      return compareNames(st, x.a, y.a);
    case PKind::Test:
      return compareTerms(st, F{x.a}, F{y.a});
    case PKind::Star:
      return compareTerms(st, P{x.a}, P{y.a});
    case PKind::Arrow:
      if (int c = compareTerms(st, F{x.a}, F{y.a})) return c;
      return compareTerms(st, F{x.b}, F{y.b});
    case PKind::Seq:
    case PKind::Choice:
      if (int c = compareTerms(st, P{x.a}, P{y.a})) return c;
      return compareTerms(st, P{x.b}, P{y.b});
  }
  return 0;
}

void sortCanonical(const Store& st, std::vector<F>& v) {
  std::sort(v.begin(), v.end(), [&](F a, F b) { return compareTerms(st, a, b) < 0; });
}

void sortCanonical(const Store& st, std::vector<FormulaSet>& v) {
  auto canon = [&](const FormulaSet& s) {
    std::vector<F> c(s.begin(), s.end());
    sortCanonical(st, c);
    return c;
  };
  std::vector<std::pair<std::vector<F>, FormulaSet>> keyed;
  keyed.reserve(v.size());
  for (auto& s : v) keyed.emplace_back(canon(s), std::move(s));
  std::stable_sort(keyed.begin(), keyed.end(), [&](const auto& x, const auto& y) {
    const auto& a = x.first;
    const auto& b = y.first;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (int c = compareTerms(st, a[i], b[i])) return c < 0;
    }
    return a.size() < b.size();
  });
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::move(keyed[i].second);
}

Classification classify(Store& st, F f) {
  Classification r;
  auto alpha = [&](F a1, F a2 = F{}) {
    r.kind = AbKind::Alpha;
    r.c1 = a1;
    r.c2 = a2;
  };
  auto beta = [&](F b1, F b2) {
    r.kind = AbKind::Beta;
    r.c1 = b1;
    r.c2 = b2;
  };
  const FNode n = st.node(f);
  if (n.kind == FKind::Box) {
    P prog{n.a};
    F phi{n.b};
    const PNode pn = st.node(prog);
    switch (pn.kind) {
      case PKind::Seq:
        alpha(st.box(P{pn.a}, st.box(P{pn.b}, phi)));
        break;
      case PKind::Choice:
        alpha(st.box(P{pn.a}, phi), st.box(P{pn.b}, phi));
        break;
      case PKind::Star:
        alpha(phi, st.box(P{pn.a}, st.box(prog, phi)));
        break;
      case PKind::Test:
        beta(st.neg(F{pn.a}), phi);
        break;
      case PKind::Arrow:
        if (!st.isOmega(prog)) {
          P os = st.star(st.omega());
          beta(st.conj(F{pn.a}, st.box(os, st.box(st.test(F{pn.b}), phi))), st.box(os, phi));
        }
        break;
      case PKind::Atomic:
        break;
    }
    return r;
  }
  if (n.kind == FKind::Cap) {
    std::uint32_t agent = n.a;
    const PNode pn = st.node(P{n.b});
    switch (pn.kind) {
      case PKind::Seq:
        alpha(st.capById(agent, P{pn.a}), st.box(P{pn.a}, st.capById(agent, P{pn.b})));
        break;
      case PKind::Choice:
        alpha(st.capById(agent, P{pn.a}), st.capById(agent, P{pn.b}));
        break;
      case PKind::Star:
        alpha(st.box(P{n.b}, st.capById(agent, P{pn.a})));
        break;
      default:
        break;
    }
    return r;
  }
  if (n.kind != FKind::Not) return r;
  const FNode inner = st.node(F{n.a});
  if (inner.kind == FKind::Not) {
    alpha(F{inner.a});
    return r;
  }
  if (inner.kind == FKind::Box) {
    P prog{inner.a};
    F phi{inner.b};
    const PNode pn = st.node(prog);
    switch (pn.kind) {
      case PKind::Test:
        alpha(st.neg(phi), F{pn.a});
        break;
      case PKind::Seq:
        alpha(st.neg(st.box(P{pn.a}, st.box(P{pn.b}, phi))));
        break;
      case PKind::Choice:
        beta(st.neg(st.box(P{pn.a}, phi)), st.neg(st.box(P{pn.b}, phi)));
        break;
      case PKind::Star:
        beta(st.neg(phi), st.neg(st.box(P{pn.a}, st.box(prog, phi))));
        break;
      case PKind::Arrow:
        if (!st.isOmega(prog)) {
          P om = st.omega();
          beta(st.neg(st.box(st.test(st.neg(F{pn.a})), st.box(om, phi))),
               st.neg(st.box(om, st.box(st.test(F{pn.b}), phi))));
        }
        break;
      case PKind::Atomic:
        break;
    }
    return r;
  }
  if (inner.kind == FKind::Cap) {
    std::uint32_t agent = inner.a;
    P prog{inner.b};
    const PNode pn = st.node(prog);
    switch (pn.kind) {
      case PKind::Seq:
        beta(st.neg(st.capById(agent, P{pn.a})),
             st.neg(st.box(P{pn.a}, st.capById(agent, P{pn.b}))));
        break;
      case PKind::Choice:
        beta(st.neg(st.capById(agent, P{pn.a})), st.neg(st.capById(agent, P{pn.b})));
        break;
      case PKind::Star:
        alpha(st.neg(st.box(prog, st.capById(agent, P{pn.a}))));
        break;
      default:
        break;
    }
  }
  return r;
}

bool isAlphaBeta(Store& st, F f) { return classify(st, f).isAlphaBeta(); }

bool isEventuality(const Store& st, F f) {
  const FNode& n = st.node(f);
  if (n.kind != FKind::Not) return false;
  F g{n.a};
  while (st.node(g).kind == FKind::Box) {
    const FNode& b = st.node(g);
    if (st.node(P{b.a}).kind == PKind::Star) return true;
    g = F{b.b};
  }
  return false;
}

F eventualityGoal(Store& st, F f) {
  if (!isEventuality(st, f)) throw PreconditionError("eventualityGoal: not an eventuality");
  F g{st.node(f).a};
  F last;
  while (st.node(g).kind == FKind::Box) {
    const FNode b = st.node(g);
    if (st.node(P{b.a}).kind == PKind::Star) last = F{b.b};
    g = F{b.b};
  }
  return st.neg(last);
}

std::optional<std::pair<P, F>> asDiamond(const Store& st, F f) {
  const FNode& n = st.node(f);
  if (n.kind != FKind::Not) return std::nullopt;
  const FNode& b = st.node(F{n.a});
  if (b.kind != FKind::Box) return std::nullopt;
  return std::make_pair(P{b.a}, F{b.b});
}

std::optional<std::pair<P, F>> asBox(const Store& st, F f) {
  const FNode& n = st.node(f);
  if (n.kind != FKind::Box) return std::nullopt;
  return std::make_pair(P{n.a}, F{n.b});
}

std::optional<F> omegaCompanion(Store& st, F f) {
  auto b = asBox(st, f);
  if (!b || !st.isOmega(b->first)) return std::nullopt;
  F body = b->second;
  auto inner = asBox(st, body);
  P os = st.star(st.omega());
  if (inner && inner->first == os) return body;
  return st.box(os, body);
}

bool isLiteralLike(const Store& st, F f) {
  const FNode& n = st.node(f);
  switch (n.kind) {
    case FKind::Atom:
    case FKind::True:
    case FKind::False:
      return true;
    case FKind::Not: {
      auto k = st.node(F{n.a}).kind;
      return k == FKind::Atom || k == FKind::True || k == FKind::False;
    }
    default:
      return false;
  }
}

}  // namespace tpdl
