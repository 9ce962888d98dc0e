#pragma once

#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tpdl {

// Handles into a Store. Equal handles denote syntactically identical terms.
struct F {
  std::uint32_t id = UINT32_MAX;
  bool valid() const { return id != UINT32_MAX; }
  auto operator<=>(const F&) const = default;
};

struct P {
  std::uint32_t id = UINT32_MAX;
  bool valid() const { return id != UINT32_MAX; }
  auto operator<=>(const P&) const = default;
};

enum class FKind : std::uint8_t { Atom, True, False, Not, Box, Cap };
enum class PKind : std::uint8_t { Atomic, Test, Arrow, Seq, Choice, Star };

// Atom: a = name. Not: a = body. Box: a = program, b = body. Cap: a = agent name, b = program.
struct FNode {
  FKind kind;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  bool operator==(const FNode&) const = default;
};

// Atomic: a = name. Test: a = formula. Arrow: a = pre, b = post. Seq/Choice: a, b. Star: a.
struct PNode {
  PKind kind;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  bool operator==(const PNode&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const FNode& n) const noexcept { return mix(static_cast<std::uint32_t>(n.kind), n.a, n.b); }
  std::size_t operator()(const PNode& n) const noexcept { return mix(static_cast<std::uint32_t>(n.kind) + 16, n.a, n.b); }
  static std::size_t mix(std::uint64_t k, std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t h = k * 0x9E3779B97F4A7C15ull;
    h ^= a + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h ^= b + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Append-only storage whose elements never move, so readers need no lock.
template <class T>
class ChunkedVector {
public:
  static constexpr std::size_t kChunkBits = 12;
  static constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
  static constexpr std::size_t kMaxChunks = std::size_t{1} << 15;

  ChunkedVector() : chunks_(new std::unique_ptr<T[]>[kMaxChunks]) {}

  const T& operator[](std::size_t i) const { return chunks_[i >> kChunkBits][i & (kChunkSize - 1)]; }
  std::size_t size() const { return size_.load(std::memory_order_acquire); }

  // Caller must serialize pushes.
  std::size_t push(const T& v);

private:
  std::unique_ptr<std::unique_ptr<T[]>[]> chunks_;
  std::atomic<std::size_t> size_{0};
};

struct TermInfo {
  std::uint64_t size = 0;
};

// Hash-consed, append-only store for formulas, programs and names.
// Construction is serialized by an internal lock; reads are lock-free.
class Store {
public:
  Store();
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  std::uint32_t intern(std::string_view name);
  const std::string& name(std::uint32_t id) const;

  F atom(std::string_view name);
  F top();
  F bottom();
  F neg(F f);
  F box(P p, F f);
  F cap(std::string_view agent, P p);
  F capById(std::uint32_t agent, P p);

  P atomic(std::string_view name);
  P atomicById(std::uint32_t name);
  P test(F f);
  P arrow(F pre, F post);
  P seq(P a, P b);
  P choice(P a, P b);
  P star(P a);
  P omega();

  // Derived connectives, fixed by the test-diamond encoding.
  F conj(F a, F b);
  F disj(F a, F b);
  F impl(F a, F b);
  F dia(P p, F f);

  const FNode& node(F f) const { return fnodes_[f.id]; }
  const PNode& node(P p) const { return pnodes_[p.id]; }
  std::size_t formulaCount() const { return fnodes_.size(); }
  std::size_t programCount() const { return pnodes_.size(); }

  std::uint64_t size(F f) const { return finfo_[f.id].size; }
  std::uint64_t size(P p) const { return pinfo_[p.id].size; }

  bool isOmega(P p) const { return p == omega_; }
  bool isAtPOmega(P p) const;
  bool isSigma(P p) const;
  bool isSigmaTilde(P p) const;

private:
  F makeF(const FNode& n);
  P makeP(const PNode& n);

  mutable std::mutex mutex_;
  ChunkedVector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> nameIds_;
  ChunkedVector<FNode> fnodes_;
  ChunkedVector<TermInfo> finfo_;
  std::unordered_map<FNode, std::uint32_t, NodeKeyHash> fids_;
  ChunkedVector<PNode> pnodes_;
  ChunkedVector<TermInfo> pinfo_;
  std::unordered_map<PNode, std::uint32_t, NodeKeyHash> pids_;
  F top_;
  F bottom_;
  P omega_;
};

// Sorted, duplicate-free vector of formula handles.
using FormulaSet = std::vector<F>;

namespace fset {
FormulaSet make(std::vector<F> v);
bool contains(const FormulaSet& s, F f);
bool insert(FormulaSet& s, F f);
bool erase(FormulaSet& s, F f);
FormulaSet unite(const FormulaSet& a, const FormulaSet& b);
FormulaSet minus(const FormulaSet& a, const FormulaSet& b);
bool subset(const FormulaSet& a, const FormulaSet& b);
std::size_t hash(const FormulaSet& s);
}  // namespace fset

// Structural order: size first, then constructor, then children; names compare as strings.
int compareTerms(const Store& st, F a, F b);
int compareTerms(const Store& st, P a, P b);
void sortCanonical(const Store& st, std::vector<F>& v);
void sortCanonical(const Store& st, std::vector<FormulaSet>& v);

enum class AbKind : std::uint8_t { None, Alpha, Beta };

struct Classification {
  AbKind kind = AbKind::None;
  F c1;
  F c2;  // invalid for single-component alpha rows
  bool isAlpha() const { return kind == AbKind::Alpha; }
  bool isBeta() const { return kind == AbKind::Beta; }
  bool isAlphaBeta() const { return kind != AbKind::None; }
};

Classification classify(Store& st, F f);
bool isAlphaBeta(Store& st, F f);
bool isEventuality(const Store& st, F f);

// For an eventuality ~[A1]...[Ak][A*]chi with ~chi not an eventuality, returns ~chi.
F eventualityGoal(Store& st, F f);

// Diamond view: for ~[A]chi returns (A, chi).
std::optional<std::pair<P, F>> asDiamond(const Store& st, F f);
std::optional<std::pair<P, F>> asBox(const Store& st, F f);

// Box over omega whose body lacks its reflexive companion in a label.
// Returns [omega*]X for [omega]X, or X itself when X is already [omega*]Y.
std::optional<F> omegaCompanion(Store& st, F f);

bool isLiteralLike(const Store& st, F f);

}  // namespace tpdl

template <>
struct std::hash<tpdl::F> {
  std::size_t operator()(tpdl::F f) const noexcept { return std::hash<std::uint32_t>{}(f.id); }
};
template <>
struct std::hash<tpdl::P> {
  std::size_t operator()(tpdl::P p) const noexcept { return std::hash<std::uint32_t>{}(p.id); }
};
