#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "closure.hpp"
#include "engine.hpp"
#include "oracle.hpp"
#include "support.hpp"
#include "witness.hpp"

using namespace tpdl;
using nlohmann::json;

namespace {

json loadDerived() {
  std::ifstream in(std::string(TPDL_TEST_DIR) + "/oracle/derived.json");
  REQUIRE(in);
  return json::parse(in);
}

struct Fixture {
  Store st;
  Reducer red{st};
  json d = loadDerived();
  F f(const json& text) { return parseFormula(st, text.get<std::string>()); }
  FormulaSet set(const json& arr) { return test::parseSet(st, arr.get<std::vector<std::string>>()); }
  std::vector<FormulaSet> family(const json& arr) {
    return test::parseFamily(st, arr.get<std::vector<std::vector<std::string>>>());
  }
  std::vector<F> list(const json& arr) {
    std::vector<F> out;
    for (const json& t : arr) out.push_back(f(t));
    return out;
  }
};

}  // namespace

TEST_SUITE("derived") {
  TEST_CASE("sizes") {
    Fixture x;
    for (const auto& [text, size] : x.d["size"].items()) {
      if (text == "omega") {
        CHECK(x.st.size(x.st.omega()) == size.get<std::uint64_t>());
      } else {
        CHECK_MESSAGE(x.st.size(parseFormula(x.st, text)) == size.get<std::uint64_t>(), text);
      }
    }
  }

  TEST_CASE("reduction sets and eventualities") {
    Fixture x;
    for (const auto& [name, row] : x.d["reductionSets"].items()) {
      F f = x.f(row["formula"]);
      CHECK_MESSAGE(x.red.isEventuality(f) == row["eventuality"].get<bool>(), name);
      CHECK_MESSAGE(test::sorted(x.red.reductionSets(f)) == x.family(row["sets"]), name);
    }
  }

  TEST_CASE("closures contain the oracle closure") {
    Fixture x;
    for (const auto& [text, members] : x.d["closure"].items()) {
      FormulaSet mine = closure(x.red, parseFormula(x.st, text));
      FormulaSet theirs = x.set(members);
      CHECK_MESSAGE(fset::subset(theirs, mine), text);
      for (F g : fset::minus(mine, theirs)) {
        CHECK_MESSAGE(omegaCompanion(x.st, g).has_value(), print(x.st, g));
      }
    }
  }

  TEST_CASE("cpr sets") {
    Fixture x;
    for (const json& row : x.d["cpr"]) {
      F negCap = x.f(row["negCap"]);
      std::vector<F> gamma = x.list(row["gamma"]);
      F root = negCap;
      for (F g : gamma) root = x.st.conj(root, g);
      CHECK(cprSet(x.red, root, negCap, gamma) == x.set(row["set"]));
    }
  }

  TEST_CASE("vtrd") {
    Fixture x;
    for (const json& row : x.d["vtrd"]) {
      std::string pair = row["f"].get<std::string>() + " / " + row["g"].get<std::string>();
      CHECK_MESSAGE(x.red.vtrd(x.f(row["f"]), x.f(row["g"])) == row["value"].get<bool>(), pair);
    }
  }

  TEST_CASE("labels") {
    Fixture x;
    const json& a = x.d["analyze"];
    LabelInfo info = analyzeLabel(x.red, Label{x.set(a["phi"]), {}});
    CHECK(info.active == x.set(a["active"]));
    CHECK(info.reduced == x.set(a["reduced"]));
    for (const json& row : x.d["reach"]) {
      Label l{x.set(row["phi"]), x.set(row["rd"])};
      CHECK(reach(x.red, x.f(row["f"]), l, analyzeLabel(x.red, l)) == x.set(row["reach"]));
    }
  }

  TEST_CASE("children") {
    Fixture x;
    const json& s = x.d["staticChild"];
    Verdict v = solve(x.red, x.set(s["phi"]));
    std::vector<FormulaSet> kids;
    for (NodeId c : v.tableau->children(v.tableau->root())) kids.push_back(v.tableau->node(c).label.phi);
    CHECK(test::sorted(kids) == x.family(s["child"]));

    for (const json& row : x.d["transitional"]) {
      CHECK(transitionalChild(x.st, x.f(row["diamond"]), x.set(row["active"])) == x.set(row["child"]));
    }
    const json& c = x.d["capabilityChild"];
    CHECK(capabilityDemand(x.st, x.f(c["negCap"]), x.list(c["gamma"])) == x.set(c["child"]));
  }

  TEST_CASE("print") {
    Fixture x;
    CHECK(print(x.st, x.f(x.d["print"]["conj"])) == "p & q");
  }

  TEST_CASE("smallest structure for a diamond") {
    Fixture x;
    const json& s = x.d["search"];
    REQUIRE(s["models1"].get<int>() > 0);
    REQUIRE(s["emptyRelationModels"].get<int>() == 0);
    SearchConfig one;
    one.maxStates = 1;
    auto h = boundedSearch(x.red, FormulaSet{x.f(s["formula"])}, one);
    REQUIRE(h);
    CHECK(h->size() == 1);
    CHECK(h->hasTransition(0, x.st.atomic("a"), 0));
  }

  TEST_CASE("model semantics") {
    Fixture x;
    const json& m = x.d["model"];
    HintikkaStructure h;
    h.addState(test::parseSet(x.st, {"p"}), 0, false);
    h.addState(test::parseSet(x.st, {"q"}), 1, false);
    h.addTransition(0, x.st.atomic("a"), 1);
    Model model(x.st, h);
    auto pairsOf = [](const Relation& r) {
      std::vector<std::vector<int>> out;
      for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = 0; j < r.size(); ++j) {
          if (r.get(i, j)) out.push_back({static_cast<int>(i), static_cast<int>(j)});
        }
      }
      return out;
    };
    CHECK(pairsOf(model.omega()) == m["omega"].get<std::vector<std::vector<int>>>());
    CHECK(pairsOf(model.relation(parseProgram(x.st, "(p => q)"))) == m["arrowPairs"].get<std::vector<std::vector<int>>>());
    CHECK(m["arrowPairs"] == m["arrowViaOmega"]);

    HintikkaStructure g;
    g.addState(test::parseSet(x.st, {"~p"}), 0, false);
    g.addState(test::parseSet(x.st, {"p"}), 1, false);
    g.addTransition(0, x.st.atomic("a"), 1);
    Model chain(x.st, g);
    CHECK(chain.holds(0, parseFormula(x.st, "<a>p")) == m["diamondAP"].get<bool>());
  }
}
