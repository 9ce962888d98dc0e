#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "engine.hpp"
#include "oracle.hpp"
#include "parser.hpp"
#include "witness.hpp"

using namespace tpdl;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Instance {
  std::string name;
  std::vector<std::string> formulas;
};

struct Outcome {
  bool pass = true;
  std::string detail;
};

void report(int n, const Outcome& o, bool blocking = true) {
  std::printf("criterion %d: %s %s\n", n, o.pass ? "PASS" : (blocking ? "FAIL" : "WARN"), o.detail.c_str());
  std::fflush(stdout);
}

FormulaSet parseAll(Store& st, const std::vector<std::string>& texts) {
  std::vector<F> v;
  for (const std::string& t : texts) v.push_back(parseFormula(st, t));
  return fset::make(std::move(v));
}

std::string iff(const std::string& a, const std::string& b) {
  return "((" + a + ") -> (" + b + ")) & ((" + b + ") -> (" + a + "))";
}

// Each entry is a pair of formulas that denote the same set of states in every model.
std::vector<Instance> equivalences() {
  struct Eq {
    const char* name;
    const char* lhs;
    const char* rhs;
  };
  static const Eq rows[] = {
      {"box seq", "[a;b]p", "[a][b]p"},
      {"box choice", "[a+b]p", "[a]p & [b]p"},
      {"box star", "[a*]p", "p & [a][a*]p"},
      {"box test", "[?(q)]p", "~q | p"},
      {"box arrow", "[(q => r)]p", "(q & [omega*][?(r)]p) | [omega*]p"},
      {"cap seq", "cap(i, (a;b))", "cap(i, a) & [a]cap(i, b)"},
      {"cap choice", "cap(i, (a+b))", "cap(i, a) & cap(i, b)"},
      {"cap star", "cap(i, a*)", "[a*]cap(i, a)"},
      {"double negation", "~~p", "p"},
      {"diamond test", "~[?(q)]p", "~p & q"},
      {"diamond seq", "~[a;b]p", "~[a][b]p"},
      {"diamond choice", "~[a+b]p", "~[a]p | ~[b]p"},
      {"diamond star", "~[a*]p", "~p | ~[a][a*]p"},
      {"diamond arrow", "~[(q => r)]p", "~[?(~q)][omega]p | ~[omega][?(r)]p"},
      {"negated cap seq", "~cap(i, (a;b))", "~cap(i, a) | ~[a]cap(i, b)"},
      {"negated cap choice", "~cap(i, (a+b))", "~cap(i, a) | ~cap(i, b)"},
      {"negated cap star", "~cap(i, a*)", "~[a*]cap(i, a)"},
      {"box star of seq", "[(a;b)*]p", "p & [a;b][(a;b)*]p"},
      {"diamond star of guarded choice", "~[(a+?(q))*]p", "~p | ~[a+?(q)][(a+?(q))*]p"},
      {"box seq of choice", "[(a+b);c]p", "[a+b][c]p"},
      {"cap star of seq", "cap(i, (a;b)*)", "[(a;b)*]cap(i, (a;b))"},
      {"diamond nested star", "~[a**]p", "~p | ~[a*][a**]p"},
      {"box arrow compound", "[(p & q => r)]s", "((p & q) & [omega*][?(r)]s) | [omega*]s"},
      {"diamond arrow compound", "~[(p & q => r)]s", "~[?(~(p & q))][omega]s | ~[omega][?(r)]s"},
      {"box arrow omega form", "[(q => r)]p", "(q & [omega][?(r)]p) | [omega]p"},
      {"diamond arrow omega form", "~[(q => r)]p", "(~q & ~[omega]p) | ~[omega][?(r)]p"},
      {"box arrow omega form compound", "[(p | q => ~r)][a]s",
       "((p | q) & [omega][?(~r)][a]s) | [omega][a]s"},
      {"diamond arrow omega form compound", "~[(p | q => ~r)][a]s",
       "(~(p | q) & ~[omega][a]s) | ~[omega][?(~r)][a]s"},
      {"cap seq equivalence", "cap(i, (a;(q => r)))", "cap(i, a) & [a]cap(i, (q => r))"},
      {"cap choice equivalence", "cap(i, (a+(q => r)))", "cap(i, a) & cap(i, (q => r))"},
      {"cap star equivalence", "cap(i, (q => r)*)", "[(q => r)*]cap(i, (q => r))"},
  };
  std::vector<Instance> out;
  for (const Eq& e : rows) out.push_back({e.name, {iff(e.lhs, e.rhs)}});
  out.push_back({"omega reflexive", {"[omega]p -> p"}});
  out.push_back({"omega transitive", {"[omega]p -> [omega][omega]p"}});
  out.push_back({"omega reflexive compound", {"[omega][a*]p -> [a*]p"}});
  out.push_back({"omega transitive compound", {"[omega](p | [a]q) -> [omega][omega](p | [a]q)"}});
  out.push_back({"stronger precondition capability", {"cap(i, (p & q => r)) -> cap(i, (p => r))"}});
  return out;
}

std::vector<Instance> negated(const std::vector<Instance>& valid) {
  std::vector<Instance> out;
  for (const Instance& v : valid) out.push_back({v.name, {"~(" + v.formulas[0] + ")"}});
  return out;
}

const Instance kCapClash{"cap_clash", {"cap(i, (p & q => r))", "~cap(i, (p => r))"}};
const Instance kArrowChoice{"arrow_choice", {"~[(p => r) + a]p", "[(p & q => r)]p"}};
const Instance kStarChoice{"star_choice", {"~[(a + b)*]p", "[a*]p"}};

constexpr std::uint64_t kSeed = 20240917;
constexpr double kComplexityC = 1.0;

struct Run {
  std::string name;
  FormulaSet roots;
  Verdict verdict;
  double seconds = 0.0;
};

class Harness {
public:
  Harness() : red_(st_) {}

  Store& store() { return st_; }
  Reducer& reducer() { return red_; }

  Run solveOne(const std::string& name, FormulaSet roots) {
    Config cfg;
    cfg.checkInvariants = true;
    auto t0 = Clock::now();
    Verdict v = solve(red_, roots, cfg);
    double s = since(t0);
    trackComplexity(roots, v);
    invariantViolations_ += v.stats.invariantViolations;
    InvariantReport inv = checkInvariants(*v.tableau);
    ++invariantChecks_;
    if (!inv.ok()) invariantFailures_.push_back(name + ": " + (inv.failures.empty() ? "" : inv.failures[0]));
    return Run{name, std::move(roots), std::move(v), s};
  }

  Run solveText(const Instance& in) { return solveOne(in.name, parseAll(st_, in.formulas)); }

  std::size_t invariantChecks() const { return invariantChecks_; }
  std::size_t invariantViolations() const { return invariantViolations_; }
  const std::vector<std::string>& invariantFailures() const { return invariantFailures_; }
  double worstRatio() const { return worstRatio_; }
  const std::string& worstName() const { return worstName_; }

private:
  void trackComplexity(const FormulaSet& roots, const Verdict& v) {
    double n = 0;
    for (F f : roots) n += static_cast<double>(st_.size(f));
    double nodes = static_cast<double>(std::max<std::size_t>(v.tableau->size(), 1));
    double ratio = std::log2(nodes) / (n * n);
    if (ratio > worstRatio_) {
      worstRatio_ = ratio;
      worstName_ = std::to_string(v.tableau->size()) + " nodes at size " + std::to_string(static_cast<int>(n));
    }
  }

  Store st_;
  Reducer red_;
  std::size_t invariantChecks_ = 0;
  std::size_t invariantViolations_ = 0;
  std::vector<std::string> invariantFailures_;
  double worstRatio_ = 0.0;
  std::string worstName_;
};

Outcome goldenVerdicts(Harness& h) {
  struct Golden {
    const Instance* in;
    bool sat;
  };
  const Golden cases[] = {{&kCapClash, false}, {&kArrowChoice, true}, {&kStarChoice, true}};
  Outcome o;
  for (const Golden& g : cases) {
    Run r = h.solveText(*g.in);
    bool ok = r.verdict.sat() == g.sat && r.seconds < 1.0;
    o.pass = o.pass && ok;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s%s=%s %.4fs", o.detail.empty() ? "" : ", ", g.in->name.c_str(),
                  r.verdict.sat() ? "SAT" : "UNSAT", r.seconds);
    o.detail += buf;
  }
  return o;
}

Outcome validitySuite(Harness& h, const std::vector<Instance>& suite) {
  Outcome o;
  double total = 0.0;
  std::vector<std::string> wrong;
  for (const Instance& in : suite) {
    Run r = h.solveText(in);
    total += r.seconds;
    if (r.verdict.sat()) wrong.push_back(in.name);
  }
  o.pass = suite.size() >= 30 && wrong.empty() && total < 30.0;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu instances, %zu not UNSAT, %.3fs total", suite.size(), wrong.size(), total);
  o.detail = buf;
  for (const std::string& w : wrong) o.detail += " [" + w + "]";
  return o;
}

std::vector<FormulaSet> randomInputs(Store& st, std::size_t n, std::uint64_t seed) {
  std::vector<FormulaSet> out;
  GenConfig cfg;
  cfg.maxSize = 15;
  for (std::size_t i = 0; i < n; ++i) {
    cfg.seed = caseSeed(seed, i);
    out.push_back({randomFormula(st, cfg)});
  }
  return out;
}

Outcome witnessSoundness(Harness& h, const std::vector<Instance>& satCorpus) {
  std::size_t checked = 0;
  std::size_t randomSat = 0;
  std::vector<std::string> failures;
  auto verify = [&](Run& r) {
    ++checked;
    WitnessReport w = verifyWitness(*r.verdict.tableau, r.roots);
    if (!w.ok()) failures.push_back(r.name + (w.error.empty() ? "" : ": " + w.error));
  };
  for (const Instance& in : satCorpus) {
    Run r = h.solveText(in);
    if (!r.verdict.sat()) {
      failures.push_back(in.name + ": not SAT");
      continue;
    }
    verify(r);
  }
  GenConfig cfg;
  cfg.maxSize = 15;
  for (std::size_t i = 0; randomSat < 200 && i < 10000; ++i) {
    cfg.seed = caseSeed(kSeed + 1, i);
    FormulaSet roots{randomFormula(h.store(), cfg)};
    Run r = h.solveOne("random " + std::to_string(i), roots);
    if (!r.verdict.sat()) continue;
    ++randomSat;
    verify(r);
  }
  Outcome o;
  o.pass = failures.empty() && randomSat == 200;
  o.detail = std::to_string(checked) + " witnesses (" + std::to_string(satCorpus.size()) + " corpus, " +
             std::to_string(randomSat) + " random), " + std::to_string(failures.size()) + " failures";
  for (std::size_t i = 0; i < failures.size() && i < 5; ++i) o.detail += " [" + failures[i] + "]";
  return o;
}

Outcome differential() {
  GenConfig cfg;
  cfg.seed = kSeed;
  cfg.maxSize = 15;
  DiffOptions opt;
  opt.search.maxStates = 3;
  opt.threads = 4;
  auto t0 = Clock::now();
  DiffReport r = differentialRun(500, cfg, opt);
  double s = since(t0);
  Outcome o;
  o.pass = r.total == 500 && r.violations == 0 && s < 600.0;
  o.detail = r.summary();
  return o;
}

Outcome orBranch(Harness& h) {
  Outcome o;
  Store& st = h.store();

  Run star_choice = h.solveText(kStarChoice);
  F ev = parseFormula(st, "~[(a + b)*]p");
  F boxA = parseFormula(st, "[a*]p");
  int v8 = -1;
  for (NodeId v = 0; v < star_choice.verdict.tableau->size(); ++v) {
    const Node& n = star_choice.verdict.tableau->node(v);
    if (n.principal == ev && !fset::contains(n.label.phi, boxA)) v8 = static_cast<int>(v);
  }
  bool ok3 = v8 >= 0 && star_choice.verdict.tableau->node(v8).degree == 3 && star_choice.verdict.tableau->node(v8).expanded == 1;

  Run arrow_choice = h.solveText(kArrowChoice);
  F beta = parseFormula(st, "[(p & q => r)]p");
  F dia = parseFormula(st, "~[a]p");
  int v20 = -1;
  for (NodeId v = 0; v < arrow_choice.verdict.tableau->size(); ++v) {
    const Node& n = arrow_choice.verdict.tableau->node(v);
    if (n.principal == beta && fset::contains(n.label.phi, dia)) v20 = static_cast<int>(v);
  }
  bool ok2 = v20 >= 0 && arrow_choice.verdict.tableau->node(v20).degree == 2 && arrow_choice.verdict.tableau->node(v20).expanded == 1;

  o.pass = ok3 && ok2;
  auto describe = [](const char* what, const Run& r, int v) {
    if (v < 0) return std::string(what) + " node missing";
    const Node& n = r.verdict.tableau->node(v);
    return std::string(what) + " node " + std::to_string(v) + " expanded " + std::to_string(n.expanded) + " of " +
           std::to_string(n.degree);
  };
  o.detail = describe("star_choice eventuality", star_choice, v8) + ", " + describe("arrow_choice beta", arrow_choice, v20);
  return o;
}

// ~[A1]...[An][A*]chi with ~chi not an eventuality; every focus is ~chi or ~[B1]...[Br][A*]chi, r >= 1, B1 atomic or omega.
bool shapeHolds(Reducer& red, F f, F tail, F goal, std::string& why) {
  Store& st = red.store();
  for (const FdPair& pr : red.finalizedDecomposition(f)) {
    F g = pr.focus;
    if (!red.vtrd(f, g)) {
      why = "focus not related: " + print(st, g);
      return false;
    }
    if (g == goal) continue;
    auto d = asDiamond(st, g);
    if (!d) {
      why = "focus is not a diamond: " + print(st, g);
      return false;
    }
    P first = d->first;
    F body = d->second;
    while (body != tail) {
      auto b = asBox(st, body);
      if (!b) {
        why = "focus does not end in the starred box: " + print(st, g);
        return false;
      }
      body = b->second;
    }
    if (!st.isAtPOmega(first)) {
      why = "focus starts with a compound program: " + print(st, g);
      return false;
    }
  }
  return true;
}

Outcome reductionShape() {
  Store st;
  Reducer red(st);
  GenConfig cfg;
  cfg.maxSize = 12;
  for (std::size_t i = 0; i < 400; ++i) {
    cfg.seed = caseSeed(kSeed + 2, i);
    randomFormula(st, cfg);
  }
  const std::size_t programs = st.programCount();
  const std::size_t formulas = st.formulaCount();
  std::mt19937_64 rng(kSeed + 3);
  auto pickP = [&] { return P{static_cast<std::uint32_t>(rng() % programs)}; };
  auto pickF = [&] { return F{static_cast<std::uint32_t>(rng() % formulas)}; };

  std::set<F> seen;
  std::size_t failures = 0;
  std::string firstFailure;
  for (std::size_t attempts = 0; seen.size() < 1000 && attempts < 200000; ++attempts) {
    F chi = pickF();
    if (isEventuality(st, st.neg(chi))) continue;
    P a = pickP();
    if (st.size(a) > 8 || st.size(chi) > 8) continue;
    F tail = st.box(st.star(a), chi);
    F g = tail;
    for (std::size_t k = rng() % 3; k > 0; --k) {
      P b = pickP();
      if (st.size(b) > 6) continue;
      g = st.box(b, g);
    }
    F f = st.neg(g);
    if (!red.isAlphaBeta(f) || !seen.insert(f).second) continue;
    std::string why;
    if (!shapeHolds(red, f, tail, st.neg(chi), why)) {
      if (failures++ == 0) firstFailure = print(st, f) + ": " + why;
    }
  }
  Outcome o;
  o.pass = seen.size() == 1000 && failures == 0;
  o.detail = std::to_string(seen.size()) + " eventualities, " + std::to_string(failures) + " shape failures";
  if (!firstFailure.empty()) o.detail += " [" + firstFailure + "]";
  return o;
}

}  // namespace

int main() {
  Harness h;
  bool ok = true;
  auto blocking = [&](int n, const Outcome& o) {
    report(n, o);
    ok = ok && o.pass;
  };

  blocking(1, goldenVerdicts(h));

  std::vector<Instance> valid = equivalences();
  blocking(2, validitySuite(h, negated(valid)));

  std::vector<Instance> satCorpus{kArrowChoice, kStarChoice};
  satCorpus.insert(satCorpus.end(), valid.begin(), valid.end());
  blocking(3, witnessSoundness(h, satCorpus));

  blocking(4, differential());
  blocking(5, orBranch(h));

  Outcome shape = reductionShape();
  std::size_t extra = 0;
  for (const FormulaSet& roots : randomInputs(h.store(), 300, kSeed + 4)) {
    h.solveOne("invariant input " + std::to_string(extra++), roots);
  }
  Outcome inv;
  inv.pass = shape.pass && h.invariantViolations() == 0 && h.invariantFailures().empty();
  inv.detail = shape.detail + "; " + std::to_string(h.invariantChecks()) + " tableaux checked, " +
               std::to_string(h.invariantFailures().size()) + " invariant failures, " +
               std::to_string(h.invariantViolations()) + " dependency violations";
  for (std::size_t i = 0; i < h.invariantFailures().size() && i < 5; ++i) inv.detail += " [" + h.invariantFailures()[i] + "]";
  blocking(6, inv);

  Outcome cx;
  cx.pass = h.worstRatio() <= kComplexityC;
  char buf[160];
  std::snprintf(buf, sizeof buf, "max log2(nodes)/n^2 = %.4f against c = %.1f (%s)", h.worstRatio(), kComplexityC,
                h.worstName().c_str());
  cx.detail = buf;
  report(7, cx, false);

  return ok ? 0 : 1;
}
