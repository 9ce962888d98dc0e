#include <doctest.h>

#include <json.hpp>

#include "engine.hpp"
#include "errors.hpp"
#include "support.hpp"
#include "witness.hpp"

using namespace tpdl;
using tpdl::test::parseSet;

namespace {

struct Fixture {
  Store st;
  Reducer red{st};
  F f(const char* text) { return parseFormula(st, text); }
  P prog(const char* text) { return parseProgram(st, text); }
};

bool conditionPasses(const HintikkaReport& r, const std::string& name) {
  for (const ConditionResult& c : r.conditions) {
    if (c.name == name) return c.pass;
  }
  FAIL("unknown condition " << name);
  return false;
}

std::vector<std::pair<std::size_t, std::size_t>> pairs(const Relation& r) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r.get(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("witness") {
  TEST_CASE("fat path") {
    Fixture x;
    Verdict single = solve(x.red, parseSet(x.st, {"p"}));
    CHECK(fatPath(*single.tableau) == std::vector<bool>{true});

    Verdict star_choice = solve(x.red, parseSet(x.st, test::kStarChoice));
    const Tableau& t = *star_choice.tableau;
    std::vector<bool> fat = fatPath(t);
    bool excludedUnsat = false;
    for (NodeId v = 0; v < t.size(); ++v) {
      if (fat[v]) CHECK(t.node(v).status == Status::Sat);
      if (t.node(v).status == Status::Unsat) excludedUnsat |= !fat[v];
    }
    CHECK(excludedUnsat);
    CHECK(fat[t.root()]);

    Verdict unsat = solve(x.red, parseSet(x.st, {"p", "~p"}));
    CHECK_THROWS_AS(fatPath(*unsat.tableau), PreconditionError);
  }

  TEST_CASE("extraction from the arrow choice tableau") {
    Fixture x;
    FormulaSet roots = parseSet(x.st, test::kArrowChoice);
    Verdict v = solve(x.red, roots);
    HintikkaStructure h = extractHintikka(*v.tableau);
    CHECK(checkHintikka(x.red, h).ok());
    CHECK(fset::subset(roots, h.labels[h.witness]));
    bool notP = false;
    for (const Transition& tr : h.trans[h.witness]) notP |= !fset::contains(h.labels[tr.to], x.f("p"));
    CHECK(notP);
    WitnessReport r = verifyWitness(*v.tableau, roots);
    CHECK(r.ok());
  }

  TEST_CASE("no tagged edges gives no transitions") {
    Fixture x;
    Verdict v = solve(x.red, parseSet(x.st, {"p", "[a]q"}));
    HintikkaStructure h = extractHintikka(*v.tableau);
    REQUIRE(h.size() == 1);
    CHECK(h.trans[0].empty());
  }

  TEST_CASE("shadow states separate programs sharing a target") {
    Fixture x;
    FormulaSet roots = parseSet(x.st, {"~[a]p", "~[omega]p"});
    Verdict v = solve(x.red, roots);
    ShadowStats stats;
    HintikkaStructure raw = extractHintikka(*v.tableau, nullptr, false);
    HintikkaStructure h = extractHintikka(*v.tableau, &stats);
    CHECK(stats.shadows >= 1);
    CHECK(h.size() == raw.size() + stats.shadows);
    for (StateId s = 0; s < h.size(); ++s) {
      for (const Transition& t1 : h.trans[s]) {
        for (const Transition& t2 : h.trans[s]) {
          if (t1.program != t2.program) CHECK(t1.to != t2.to);
        }
      }
    }
    StateId a = 0, o = 0;
    for (const Transition& t : h.trans[h.witness]) (t.program == x.prog("a") ? a : o) = t.to;
    CHECK(a != o);
    CHECK(h.labels[a] == h.labels[o]);
    CHECK(checkHintikka(x.red, h).ok());
    CHECK(verifyWitness(*v.tableau, roots).ok());
  }

  TEST_CASE("manual shadow repair") {
    Fixture x;
    HintikkaStructure h;
    h.addState(parseSet(x.st, {"~[a]p", "~[omega]p"}), 0, false);
    h.addState(parseSet(x.st, {"~p"}), 1, false);
    h.addState(parseSet(x.st, {"q"}), 2, false);
    h.addTransition(0, x.prog("a"), 1);
    h.addTransition(0, x.st.omega(), 1);
    h.addTransition(1, x.prog("b"), 2);
    ShadowStats s = repairShadows(x.st, h);
    CHECK(s.shadows == 1);
    REQUIRE(h.size() == 4);
    CHECK(h.shadow[3]);
    CHECK(h.labels[3] == h.labels[1]);
    CHECK(h.hasTransition(3, x.prog("b"), 2));
    CHECK(h.trans[0].size() == 2);
    CHECK(h.trans[0][0].to != h.trans[0][1].to);
  }

  TEST_CASE("structure conditions by hand") {
    Fixture x;
    HintikkaStructure ok;
    ok.addState(parseSet(x.st, {"p"}), 0, false);
    CHECK(checkHintikka(x.red, ok).ok());

    HintikkaStructure clash;
    clash.addState(parseSet(x.st, {"p", "~p"}), 0, false);
    HintikkaReport r1 = checkHintikka(x.red, clash);
    CHECK_FALSE(conditionPasses(r1, "H1"));

    HintikkaStructure missing;
    missing.addState(parseSet(x.st, {"~[a]p"}), 0, false);
    HintikkaReport r7 = checkHintikka(x.red, missing);
    CHECK_FALSE(conditionPasses(r7, "H7"));
    CHECK_FALSE(r7.ok());
    CHECK(r7.summary().find("H7 FAIL") != std::string::npos);
    CHECK_THROWS_AS(buildModel(x.red, missing), ModelError);
  }

  TEST_CASE("model relations") {
    Fixture x;
    HintikkaStructure one;
    one.addState(parseSet(x.st, {"p"}), 0, false);
    Model m1 = buildModel(x.red, one);
    CHECK(pairs(m1.omega()) == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}});

    HintikkaStructure two;
    two.addState(parseSet(x.st, {"~[a]~p", "~p"}), 0, false);
    two.addState(parseSet(x.st, {"~~p", "p"}), 1, false);
    two.addTransition(0, x.prog("a"), 1);
    Model m2 = buildModel(x.red, two);
    CHECK(pairs(m2.omega()) == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {0, 1}, {1, 1}});
    CHECK(m2.omega().reflexive());
    CHECK(m2.omega().isTransitive());
    CHECK(modelCheck(m2, 0, x.f("<a>p")));
    CHECK_FALSE(modelCheck(m2, 1, x.f("<a>p")));
    CHECK(modelCheck(m2, 1, x.f("p")));
    CHECK_FALSE(modelCheck(m2, 1, x.f("~p")));
    CHECK(modelCheck(m2, 0, x.f("cap(i, ?(q))")));
    CHECK(modelCheck(m2, 1, x.f("cap(j, ?(p & ~p))")));
    CHECK_THROWS_AS(modelCheck(m2, 7, x.f("p")), ModelError);
  }

  TEST_CASE("arrow relations are defined through omega") {
    Fixture x;
    HintikkaStructure h;
    h.addState(parseSet(x.st, {"p", "cap(i, (p => q))"}), 0, false);
    h.addState(parseSet(x.st, {"q"}), 1, false);
    h.addTransition(0, x.prog("a"), 1);
    Model m(x.st, h);
    auto arrow = pairs(m.relation(x.prog("(p => q)")));
    CHECK(arrow == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 1}});
    auto viaOmega = pairs(m.relation(x.prog("?(~p);omega + omega;?(q)")));
    CHECK(arrow == viaOmega);
    CHECK(m.holds(0, x.f("cap(i, (p => q))")));
    CHECK(m.holds(0, x.f("cap(i, ?(r))")));
  }

  TEST_CASE("capabilities over composite programs use the rewriting") {
    Fixture x;
    FormulaSet roots = parseSet(x.st, {"cap(i, a*)", "~[a]p", "~cap(i, b)"});
    Verdict v = solve(x.red, roots);
    REQUIRE(v.sat());
    HintikkaStructure h = extractHintikka(*v.tableau);
    Model m = buildModel(x.red, h);
    for (StateId s = 0; s < m.size(); ++s) {
      CHECK(m.holds(s, x.f("cap(i, a*)")) == m.holds(s, x.f("[a*]cap(i, a)")));
      CHECK(m.holds(s, x.f("cap(i, a;b)")) == m.holds(s, x.f("cap(i, a) & [a]cap(i, b)")));
      CHECK(m.holds(s, x.f("cap(i, a+b)")) == m.holds(s, x.f("cap(i, a) & cap(i, b)")));
    }
    CHECK(verifyWitness(*v.tableau, roots).ok());
  }

  TEST_CASE("serialization") {
    Fixture x;
    FormulaSet roots = parseSet(x.st, test::kStarChoice);
    Verdict v = solve(x.red, roots);
    HintikkaStructure h = extractHintikka(*v.tableau);
    auto j = nlohmann::json::parse(structureToJson(x.st, h));
    CHECK(j["states"].size() == h.size());
    CHECK(j["witness"] == h.witness);
    Model m = buildModel(x.red, h);
    auto mj = nlohmann::json::parse(m.toJson(h));
    CHECK(mj.contains("valuation"));
    CHECK(mj.contains("omega"));
    CHECK(structureToDot(x.st, h).rfind("digraph", 0) == 0);
  }
}
