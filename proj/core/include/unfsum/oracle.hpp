#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "unfsum/model.hpp"

/// Explicit-state reference semantics.
///
/// Everything here works on the interleaving state graph of a Product and
/// shares no code with the unfolder. Finite-trace equality is enough to
/// certify full trace equality: both sides are finite-state and finitely
/// branching, so by König's lemma an infinite word is a trace iff all of
/// its finite prefixes are.
namespace unfsum::oracle {

using NodeId = std::uint32_t;

inline constexpr std::size_t kDefaultStateBound = 10'000'000;

/// Reachable part of the product, states interned as bit-packed vectors.
class ExplicitProduct {
public:
  struct Edge {
    NodeId from;
    ActionId action;
    NodeId to;
    Rational weight;
  };

  [[nodiscard]] std::size_t size() const { return count_; }
  [[nodiscard]] NodeId initial() const { return 0; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] bool has_edges() const { return keep_edges_; }
  /// Outgoing edges of `s` (requires has_edges()).
  [[nodiscard]] std::span<const Edge> out(NodeId s) const;
  [[nodiscard]] std::vector<StateId> state(NodeId s) const;
  [[nodiscard]] const std::vector<std::string>& actions() const { return actions_; }

private:
  friend ExplicitProduct explore(const Product&, std::size_t, bool);

  std::size_t count_ = 0;
  bool keep_edges_ = true;
  std::vector<unsigned> widths_;
  std::size_t words_ = 1;
  std::vector<std::uint64_t> arena_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_begin_;
  std::vector<std::string> actions_;
};

/// Breadth-first exploration from the initial global state.
/// With keep_edges=false only the state set is kept (for counting markings).
/// Throws StateBoundExceeded.
ExplicitProduct explore(const Product& product, std::size_t state_bound = kDefaultStateBound,
                        bool keep_edges = true);

inline constexpr NodeId kNoSink = std::numeric_limits<NodeId>::max();

/// Complete DFA whose every state except the sink accepts.
struct Dfa {
  std::vector<std::string> alphabet;
  /// delta[state][symbol]
  std::vector<std::vector<NodeId>> delta;
  NodeId initial = 0;
  NodeId sink = kNoSink;

  [[nodiscard]] std::size_t size() const { return delta.size(); }
  /// Number of accepting states; the figure reported as the minimal summary size.
  [[nodiscard]] std::size_t live_size() const { return size() - (sink == kNoSink ? 0 : 1); }
  [[nodiscard]] bool accepts(std::span<const std::string> word) const;
};

/// Hides every action outside `alphabet`, then ε-closure and subset construction.
Dfa project_determinize(const ExplicitProduct& ep, const Alphabet& alphabet);

/// Same for a single LTS (a summary, say): actions outside `alphabet` are silent.
Dfa determinize(const Lts& lts, const Alphabet& alphabet);

/// Hopcroft partition refinement; the result is the unique minimal DFA.
Dfa minimize(const Dfa& dfa);

struct Equivalence {
  bool equal = true;
  /// Shortest word accepted by exactly one side.
  std::optional<Word> counterexample;
};

/// Requires identical alphabets.
Equivalence equivalent(const Dfa& a, const Dfa& b);

/// States with an infinite silent path (all actions outside `alphabet` are silent).
std::vector<bool> divergent_states(const ExplicitProduct& ep, const Alphabet& alphabet);

/// For each trace of length <= max_len of the projection: whether some state
/// reached by it (silent moves interleaved) is divergent.
std::map<Word, bool> trace_divergence(const ExplicitProduct& ep, const Alphabet& alphabet,
                                      std::size_t max_len);

/// Least weight of a realisation of each projected trace of length <= max_len.
std::map<Word, Rational> min_weight_per_trace(const ExplicitProduct& ep, const Alphabet& alphabet,
                                              std::size_t max_len);

}  // namespace unfsum::oracle
