#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "unfsum/model.hpp"
#include "unfsum/unfolder.hpp"

namespace unfsum {

/// The interface projection of a prefix: interface conditions and the
/// events the interface takes part in. Each event has exactly one interface
/// input and one interface output, so the net reads as an LTS.
struct InterfaceNet {
  struct Arc {
    EventId event;
    ConditionId from;
    ConditionId to;
  };
  std::vector<ConditionId> conditions;
  std::vector<Arc> events;
};

using SummaryState = std::uint32_t;

struct SummaryTransition {
  SummaryState src = 0;
  std::string action;
  SummaryState dst = 0;
  std::optional<Rational> weight;

  friend auto operator<=>(const SummaryTransition&, const SummaryTransition&) = default;
};

/// Folded interface LTS. States are equivalence classes of interface
/// conditions, numbered in order of their smallest member.
struct Summary {
  std::string name;
  Alphabet alphabet;
  std::vector<std::vector<ConditionId>> classes;
  SummaryState initial = 0;
  std::vector<SummaryTransition> transitions;
  std::optional<std::set<SummaryState>> divergent;

  [[nodiscard]] std::size_t state_count() const { return classes.size(); }
  [[nodiscard]] bool weighted() const;
  /// States named S0, S1, ... as a plain component.
  [[nodiscard]] Lts to_lts() const;
};

InterfaceNet interface_projection(const Prefix& prefix);

/// Quotient of `net` by the cut-off equivalence; parallel duplicates collapse.
Summary fold(const Prefix& prefix, const InterfaceNet& net);

/// Classes of conditions concurrent with some final candidate and one of its
/// blockers, plus ip(e') for every interface blocker e'. Throws
/// StrategyMismatch unless the prefix was built with `full`.
std::set<SummaryState> divergent_classes(const Prefix& prefix, const Summary& summary);

/// Fold with event weights c([e]) - c([e']), e' producing e's interface input.
/// Parallel same-action transitions keep the minimum weight.
Summary weighted_fold(const Prefix& prefix, const InterfaceNet& net);

/// For every word of length <= max_len in the summary language: whether some
/// realisation ends in a divergent state. Requires `divergent`.
std::map<Word, bool> summary_divergence(const Summary& summary, std::size_t max_len);

/// Least realisation weight of every word of length <= max_len.
std::map<Word, Rational> summary_min_weights(const Summary& summary, std::size_t max_len);

}  // namespace unfsum
