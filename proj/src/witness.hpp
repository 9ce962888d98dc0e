#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "reduction.hpp"
#include "tableau.hpp"

namespace tpdl {

using StateId = std::uint32_t;

struct Transition {
  P program;  // atomic or omega
  StateId to;
};

struct HintikkaStructure {
  std::vector<FormulaSet> labels;
  std::vector<std::vector<Transition>> trans;
  // Tableau node behind each state; shadows share the node of their original.
  std::vector<NodeId> origin;
  std::vector<bool> shadow;
  // The first state reached from the tableau root; its label holds the root formulas.
  StateId witness = 0;

  std::size_t size() const { return labels.size(); }
  StateId addState(FormulaSet label, NodeId node, bool isShadow);
  void addTransition(StateId from, P program, StateId to);
  bool hasTransition(StateId from, P program, StateId to) const;
};

// Nodes of the fat path: root, sat children of partial members, all children of state members.
std::vector<bool> fatPath(const Tableau& t);

struct ShadowStats {
  std::size_t passes = 0;
  std::size_t shadows = 0;
};

// Without repair the result may violate the unique-program condition on state pairs.
HintikkaStructure extractHintikka(const Tableau& t, ShadowStats* stats = nullptr, bool repair = true);

// Splits every ordered state pair joined by several programs so that one program remains.
ShadowStats repairShadows(const Store& st, HintikkaStructure& h);

struct ConditionResult {
  std::string name;
  bool pass = true;
  std::string counterexample;
};

struct HintikkaReport {
  std::vector<ConditionResult> conditions;
  bool ok() const;
  std::string summary() const;
};

HintikkaReport checkHintikka(Reducer& red, const HintikkaStructure& h);

// Square boolean matrix over states.
class Relation {
public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u; }
  void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }

  static Relation identity(std::size_t n);
  Relation unite(const Relation& o) const;
  Relation compose(const Relation& o) const;
  Relation reflexiveTransitive() const;
  Relation transitive() const;
  bool subsetOf(const Relation& o) const;
  bool reflexive() const;
  bool isTransitive() const;

private:
  void orRow(std::size_t dst, const Relation& src, std::size_t row);

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

class Model {
public:
  Model(Store& st, const HintikkaStructure& h);

  std::size_t size() const { return labels_.size(); }
  const Relation& omega() const { return omega_; }
  const Relation& relation(P p);
  // Capability statements that depend on themselves through capability sets are guessed.
  // A true guess adds its program to the capability set of the state; false guesses are
  // verified, so the values returned come from a well-defined model.
  bool holds(StateId s, F f);
  std::vector<bool> holdsAll(StateId s, const std::vector<F>& fs);
  std::size_t guesses() const { return guesses_.size(); }

  // Atoms true at each state and the omega relation, next to the structure itself.
  std::string toJson(const HintikkaStructure& h);

private:
  static constexpr int kMaxRounds = 64;

  const Relation& capsOf(std::uint32_t agent, StateId s);
  bool eval(StateId s, F f);
  bool evalCap(StateId s, F f);
  bool settle();

  Store& st_;
  std::vector<FormulaSet> labels_;
  std::map<std::uint32_t, Relation> atomic_;
  Relation omega_;
  std::unordered_map<P, Relation> rels_;
  std::unordered_map<P, bool> relBusy_;
  std::unordered_map<F, std::vector<std::int8_t>> memo_;
  std::map<std::pair<std::uint32_t, StateId>, Relation> caps_;
  std::map<std::pair<F, StateId>, bool> guesses_;
  std::set<std::pair<F, StateId>> used_;
  bool fresh_ = false;
};

// Builds the model of a structure. Throws ModelError when the structure fails a condition.
Model buildModel(Reducer& red, const HintikkaStructure& h);

bool modelCheck(Model& m, StateId s, F f);

struct WitnessReport {
  bool extracted = false;
  HintikkaReport hintikka;
  bool modelBuilt = false;
  bool rootsHold = false;
  bool omegaS4 = false;
  std::size_t states = 0;
  std::size_t shadows = 0;
  std::string error;
  bool ok() const { return extracted && hintikka.ok() && modelBuilt && rootsHold && omegaS4; }
};

// Runs extraction, the structure check, model construction and model checking of the roots.
WitnessReport verifyWitness(const Tableau& t, const FormulaSet& roots);

std::string structureToJson(const Store& st, const HintikkaStructure& h);
std::string structureToDot(const Store& st, const HintikkaStructure& h);

}  // namespace tpdl
