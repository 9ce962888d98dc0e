#include <doctest.h>

#include <json.hpp>

#include "errors.hpp"
#include "support.hpp"
#include "tableau.hpp"

using namespace tpdl;
using tpdl::test::parseSet;

namespace {

struct Fixture {
  Store st;
  Reducer red{st};
  F f(const char* text) { return parseFormula(st, text); }
  Label label(std::initializer_list<const char*> phi, std::initializer_list<const char*> rd = {}) {
    return Label{parseSet(st, phi), parseSet(st, rd)};
  }
  NodeId add(Tableau& t, Label l, NodeId parent, Status s) {
    LabelInfo info = analyzeLabel(red, l);
    NodeId v = t.addNode(std::move(l), info, parent);
    t.node(v).status = s;
    return v;
  }
};

}  // namespace

TEST_SUITE("tableau") {
  TEST_CASE("active and reduced sets") {
    Fixture x;
    LabelInfo a = analyzeLabel(x.red, x.label({"p", "~[a]q"}));
    CHECK(a.active == parseSet(x.st, {"p", "~[a]q"}));
    CHECK(a.reduced.empty());
    CHECK_FALSE(a.partial);

    LabelInfo b = analyzeLabel(x.red, x.label({"[a+b]p", "[a]p", "[b]p"}));
    CHECK(b.active == parseSet(x.st, {"[a]p", "[b]p"}));
    CHECK(b.reduced == parseSet(x.st, {"[a+b]p"}));
    CHECK_FALSE(b.partial);

    LabelInfo c = analyzeLabel(x.red, x.label({"~[a*]p"}));
    CHECK(c.active == parseSet(x.st, {"~[a*]p"}));
    CHECK(c.partial);

    LabelInfo d = analyzeLabel(x.red, x.label({"~[a*]p", "~p"}, {"~[a*]p"}));
    CHECK(d.active == parseSet(x.st, {"~p"}));
    CHECK(d.reduced == parseSet(x.st, {"~[a*]p"}));
    CHECK_FALSE(d.partial);
  }

  TEST_CASE("similar labels") {
    Fixture x;
    Label s1 = x.label({"[a+b]p", "[a]p", "[b]p"});
    Label s2 = x.label({"[a;b]p", "[a+b]p", "[a]p", "[b]p"});
    CHECK_FALSE(similar(x.red, s1, s2));
    Label s3 = x.label({"[a]p", "[b]p", "[a+b]p"});
    CHECK(similar(x.red, s1, s3));

    Label sat1 = x.label({"~[a*]p", "~p"}, {"~[a*]p"});
    Label sat2 = x.label({"~p", "~~p", "p"});
    Label sat3 = x.label({"~p", "~~~p"});
    CHECK(similar(x.red, sat1, sat3));
    CHECK_FALSE(similar(x.red, sat1, sat2));

    Label p1 = x.label({"[a*]q", "~[a*]p", "~p"}, {"~[a*]p"});
    Label p2 = x.label({"[a*]q", "~~~p", "~[a*]p", "~p"}, {"~[a*]p"});
    CHECK(analyzeLabel(x.red, p1).partial);
    CHECK(analyzeLabel(x.red, p1).active == analyzeLabel(x.red, p2).active);
    CHECK_FALSE(similar(x.red, p1, p2));
    CHECK(similar(x.red, p1, p1));
  }

  TEST_CASE("reach") {
    Fixture x;
    Label active = x.label({"~[a*]p"});
    CHECK(reach(x.red, x.f("~[a*]p"), active, analyzeLabel(x.red, active)) == parseSet(x.st, {"~[a*]p"}));

    Label v1 = x.label({"~[(a+b)*]p", "~[a][(a+b)*]p"}, {"~[(a+b)*]p"});
    FormulaSet r1 = reach(x.red, x.f("~[(a+b)*]p"), v1, analyzeLabel(x.red, v1));
    CHECK(r1 == parseSet(x.st, {"~[a][(a+b)*]p"}));

    Label v2 = x.label({"~[(a+b)*]p", "~p"}, {"~[(a+b)*]p"});
    CHECK(reach(x.red, x.f("~[(a+b)*]p"), v2, analyzeLabel(x.red, v2)) == parseSet(x.st, {"~p"}));

    CHECK_THROWS_AS(reach(x.red, x.f("p"), v2, analyzeLabel(x.red, v2)), PreconditionError);
  }

  TEST_CASE("fulfilled chains") {
    Fixture x;
    Tableau t(x.red);
    F ev = x.f("~[a*]p");
    NodeId v = x.add(t, x.label({"~[a*]p"}), kNoNode, Status::Undefined);
    NodeId w = x.add(t, x.label({"~p"}), v, Status::Sat);
    CHECK_FALSE(t.isFulfilled(v, ev));
    t.addFulfillment({v, ev}, {w, x.f("~p")});
    CHECK(t.isFulfilled(v, ev));
    CHECK(t.dependentOn(v, ev).empty());
    CHECK_FALSE(t.isUnfulfilled(v, ev));

    Tableau u(x.red);
    F step = x.f("~[a][a*]p");
    NodeId u0 = x.add(u, x.label({"~[a*]p", "~[a][a*]p"}, {"~[a*]p"}), kNoNode, Status::Undefined);
    NodeId u1 = x.add(u, x.label({"~[a*]p", "q"}), u0, Status::Unsat);
    NodeId u2 = x.add(u, x.label({"~p", "q"}), u1, Status::Sat);
    u.addFulfillment({u0, step}, {u1, ev});
    u.addFulfillment({u1, ev}, {u2, x.f("~p")});
    CHECK_FALSE(u.isFulfilled(u0, step));
    u.node(u1).status = Status::TempSat;
    CHECK(u.isFulfilled(u0, step));
    CHECK_THROWS_AS(u.isFulfilled(u0, x.f("p")), PreconditionError);
  }

  TEST_CASE("dependent nodes") {
    Fixture x;
    Tableau t(x.red);
    F ev = x.f("~[a*]p");
    F step = x.f("~[a][a*]p");
    NodeId v = x.add(t, x.label({"~[a*]p", "~[a][a*]p"}, {"~[a*]p"}), kNoNode, Status::Undefined);
    NodeId v1 = x.add(t, x.label({"~[a*]p", "q"}), v, Status::Undefined);
    t.addFulfillment({v, step}, {v1, ev});
    CHECK(t.dependentOn(v, step) == std::set<NodeId>{v1});
    CHECK_FALSE(t.isFulfilled(v, step));
    CHECK_FALSE(t.isUnfulfilled(v, step));
  }

  TEST_CASE("graph queries and serialization") {
    Fixture x;
    Tableau t(x.red);
    NodeId r = x.add(t, x.label({"~[a]p"}), kNoNode, Status::Sat);
    NodeId c = x.add(t, x.label({"~p"}), r, Status::Sat);
    t.addEdge(r, c, EdgeKind::Forward, x.f("~[a]p"));
    t.addEdge(c, r, EdgeKind::Cyclic, x.f("~[a]p"));
    CHECK(t.root() == r);
    CHECK(t.children(r) == std::vector<NodeId>{c});
    CHECK(t.parents(r) == std::vector<NodeId>{c});
    CHECK(t.hasCyclicParent(r));
    CHECK(t.taggedChild(r, x.f("~[a]p")) == c);
    CHECK(t.isForwardAncestor(r, c));
    CHECK_FALSE(t.isForwardAncestor(c, r));

    auto j = nlohmann::json::parse(t.toJson());
    CHECK(j["nodes"].size() == 2);
    CHECK(j["edges"].size() == 2);
    std::string dot = t.toDot();
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("dotted") != std::string::npos);
  }
}
