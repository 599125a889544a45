#pragma once

// Slow reference implementations used to cross-check the library. They work
// from definitions only: causality is recomputed from producer/consumer
// links, never from the co-sets or walks the unfolder maintains.

#include <set>
#include <string>
#include <vector>

#include "unfsum/oracle.hpp"
#include "unfsum/unfolder.hpp"

namespace unfsum::brute {

class Relations {
public:
  explicit Relations(const Prefix& prefix);

  /// f <= e (reflexive).
  [[nodiscard]] bool event_leq(EventId f, EventId e) const { return leq_[e][f]; }
  /// b <= c (reflexive).
  [[nodiscard]] bool cond_leq(ConditionId b, ConditionId c) const;
  [[nodiscard]] bool cond_less(ConditionId b, ConditionId c) const { return b != c && cond_leq(b, c); }

  [[nodiscard]] bool events_conflict(EventId a, EventId b) const;
  [[nodiscard]] bool events_concurrent(EventId a, EventId b) const;
  [[nodiscard]] bool conds_concurrent(ConditionId a, ConditionId b) const;
  [[nodiscard]] bool cond_event_concurrent(ConditionId b, EventId e) const;

  [[nodiscard]] std::vector<EventId> past(EventId e) const;
  /// M(e) as a set: produced by [e] or initial, and not consumed by [e].
  [[nodiscard]] std::set<ConditionId> cut(EventId e) const;
  /// e' << e straight from the quantified definition.
  [[nodiscard]] bool strong_cause(EventId e_prime, EventId e) const;

  /// Non-cut-off interface events concurrent with e.
  [[nodiscard]] std::set<EventId> con_i(EventId e) const;

private:
  // Events whose past contains an event in direct conflict with some event of [e].
  [[nodiscard]] const std::vector<bool>& conflict_row(EventId e) const { return conflicts_[e]; }
  [[nodiscard]] bool pasts_conflict(EventId a, EventId b) const;

  const Prefix& p_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<bool>> conflicts_;
};

/// Every (transition, inputs) pair enabled by live, pairwise concurrent
/// conditions and not yet an event, by exhaustive enumeration.
std::set<std::pair<std::string, std::vector<ConditionId>>> possible_extensions(const Prefix& prefix);
std::pair<std::string, std::vector<ConditionId>> signature(const Product& product, const GlobalTransition& t,
                                                           const std::vector<ConditionId>& inputs);

/// All global transitions at `state` by enumerating every action and every
/// combination of local transitions, rendered as comparable strings.
std::set<std::string> successors(const Product& product, const std::vector<StateId>& state);
std::string describe(const Product& product, const GlobalTransition& t, const std::vector<StateId>& target);

/// A word is a trace iff its projection on every component is a trace of that component.
bool is_trace(const Product& product, const Word& word);

/// Moore partition refinement on the reachable part; number of non-sink classes.
std::size_t moore_live_size(const oracle::Dfa& dfa);

/// Post-hoc checks of statuses, companions and blockers; one message per violation.
std::vector<std::string> audit(const Prefix& prefix);

/// Triples (e', e, x) with e' << e, x concurrent with both, and ([e] \ [e']) meeting [x].
std::size_t strong_cause_violations(const Prefix& prefix);

}  // namespace unfsum::brute
