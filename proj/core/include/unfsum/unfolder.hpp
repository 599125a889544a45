#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "unfsum/model.hpp"

namespace unfsum {

using ConditionId = std::uint32_t;
using EventId = std::uint32_t;

/// Producer of the initial conditions.
inline constexpr EventId kInitial = std::numeric_limits<EventId>::max();
inline constexpr ConditionId kNoCondition = std::numeric_limits<ConditionId>::max();

/// Which cut-off notion drives the construction.
///   full: interface cut-offs plus cut-off candidates with freeing (always terminates, always correct)
///   def1: interface cut-offs only (diverges on systems with silent cycles)
///   def2: interface cut-offs plus permanent silent cut-offs on e' < e (terminates, may be wrong)
enum class Strategy { Full, Def1, Def2 };

std::string_view to_string(Strategy s);
/// Throws std::invalid_argument for anything but "full", "def1", "def2".
Strategy parse_strategy(std::string_view name);

/// Bitset over component indices.
class ComponentSet {
public:
  ComponentSet() = default;
  explicit ComponentSet(std::size_t components) : words_((components + 63) / 64, 0) {}

  void insert(ComponentId c) { words_[c / 64] |= std::uint64_t{1} << (c % 64); }
  [[nodiscard]] bool contains(ComponentId c) const { return (words_[c / 64] >> (c % 64)) & 1U; }
  [[nodiscard]] bool includes(const ComponentSet& other) const;
  ComponentSet& operator|=(const ComponentSet& other);
  [[nodiscard]] std::vector<ComponentId> elements() const;

  friend bool operator==(const ComponentSet&, const ComponentSet&) = default;

private:
  std::vector<std::uint64_t> words_;
};

struct Condition {
  ConditionId id = 0;
  ComponentId component = 0;
  StateId state = 0;
  EventId producer = kInitial;
  /// Conditions concurrent with this one, sorted by id.
  std::vector<ConditionId> co;
  std::vector<EventId> consumers;
  /// May feed new extensions (false for outputs of cut-offs and current candidates).
  bool live = true;
};

enum class EventStatus { Normal, Cutoff, Candidate, Freed };

std::string_view to_string(EventStatus s);

struct Event {
  EventId id = 0;
  GlobalTransition transition;
  /// One input and one output per participant, both ordered like transition.parts.
  std::vector<ConditionId> inputs;
  std::vector<ConditionId> outputs;
  std::uint32_t past_size = 0;
  /// M(e): one condition per component.
  std::vector<ConditionId> cut;
  /// Global state labelling cut.
  std::vector<StateId> st;
  /// Interface condition of cut.
  ConditionId ip = kNoCondition;
  bool is_interface = false;
  EventStatus status = EventStatus::Normal;
  /// Set for Cutoff.
  EventId companion = kInitial;
  /// Events currently blocking a Candidate; emptied when it becomes Freed.
  std::vector<EventId> blocks;
  /// Sum of transition weights over the past of the event.
  Rational cost;
};

/// A possible extension: a global transition together with a co-set of
/// live conditions carrying its source states.
struct Extension {
  GlobalTransition transition;
  std::vector<ConditionId> inputs;
  std::uint32_t past_size = 0;
  /// Producer of each input, shifted by one so that initial conditions rank first.
  std::vector<std::uint32_t> producer_rank;
  std::uint64_t tiebreak = 0;
};

/// Total order on extensions: past size, action, local transitions, input producers.
bool extension_before(const Extension& a, const Extension& b);

/// The branching process under construction, or a finished one.
///
/// Holds a non-owning pointer to the Product, which must outlive it.
class Prefix {
public:
  explicit Prefix(const Product& product, Strategy strategy = Strategy::Full);

  [[nodiscard]] const Product& product() const { return *product_; }
  [[nodiscard]] Strategy strategy() const { return strategy_; }
  [[nodiscard]] const std::vector<Condition>& conditions() const { return conditions_; }
  [[nodiscard]] const std::vector<Event>& events() const { return events_; }
  [[nodiscard]] const Condition& condition(ConditionId b) const { return conditions_[b]; }
  [[nodiscard]] const Event& event(EventId e) const { return events_[e]; }
  [[nodiscard]] const std::vector<ConditionId>& initial_conditions() const { return initial_; }

  [[nodiscard]] std::vector<EventId> cutoffs() const;
  /// Current cut-off candidates (coc), increasing.
  [[nodiscard]] std::vector<EventId> candidates() const;
  [[nodiscard]] std::size_t count(EventStatus status) const;

  /// Representative of the folding class of an interface condition.
  [[nodiscard]] ConditionId interface_class(ConditionId b) const;

  /// True when the builder ran out of extensions (as opposed to being a snapshot).
  [[nodiscard]] bool complete() const { return complete_; }

private:
  friend class Unfolder;

  const Product* product_;
  Strategy strategy_;
  std::vector<Condition> conditions_;
  std::vector<Event> events_;
  std::vector<ConditionId> initial_;
  std::vector<ConditionId> class_parent_;
  bool complete_ = false;
};

/// Cut M(e) and the ind annotation of every condition the traversal of [e] touched.
struct CutAndInd {
  std::vector<ConditionId> cut;
  /// (condition, { j | b <= M(e)_j }), sorted by condition.
  std::vector<std::pair<ConditionId, ComponentSet>> ind;

  [[nodiscard]] const ComponentSet* find(ConditionId b) const;
};

/// Reverse-topological walk of [e] computing M(e) and ind(b).
CutAndInd compute_cut_and_ind(const Prefix& prefix, EventId e);

/// e' << e, with `traversal` computed for e.
bool strong_cause(const Prefix& prefix, EventId e_prime, EventId e, const CutAndInd& traversal);
bool strong_cause(const Prefix& prefix, EventId e_prime, EventId e);

/// Events e1, e2 are concurrent: disjoint, pairwise concurrent presets.
bool event_concurrent(const Prefix& prefix, EventId e1, EventId e2);
/// Condition b is neither causally related to nor in conflict with e.
bool condition_concurrent(const Prefix& prefix, ConditionId b, EventId e);

/// Earliest non-cut-off interface event before e with the same global state.
/// Empty for non-interface events.
std::optional<EventId> is_cutoff(const Prefix& prefix, EventId e);

/// { e' in [e] | e' << e, st(e') = st(e), ip(e') = ip(e), Con_i(e) subset of Con_i(e') },
/// evaluated against the events inserted before e. Requires a non-interface e.
std::vector<EventId> candidate_blocks(const Prefix& prefix, EventId e);

/// Non-cut-off interface events inserted before `limit` that are concurrent with e.
std::vector<EventId> concurrent_interface_events(const Prefix& prefix, EventId e, EventId limit);

struct Limits {
  std::size_t max_events = 1'000'000;
  double max_seconds = 300.0;
};

struct UnfoldOptions {
  Strategy strategy = Strategy::Full;
  Limits limits;
  /// Seeds the permutation of equal-priority work. Any value yields the same prefix.
  std::uint64_t tiebreak_seed = 0;
};

struct StateHash {
  std::size_t operator()(const std::vector<StateId>& v) const noexcept;
};

/// Per-walk scratch arrays, reused across walks to avoid reallocation.
struct WalkScratch {
  std::uint32_t epoch = 0;
  std::vector<std::uint32_t> event_mark;
  std::vector<std::uint32_t> consumed_mark;
  std::vector<std::uint32_t> ind_stamp;
  std::vector<std::uint64_t> ind;
  std::vector<EventId> past;
  std::vector<EventId> stack;
};

/// Single-writer construction context for a Prefix.
class Unfolder {
public:
  /// Initial prefix: one condition per component, pending extensions seeded.
  Unfolder(const Product& product, UnfoldOptions options = {});

  [[nodiscard]] const Prefix& prefix() const { return prefix_; }
  [[nodiscard]] std::size_t pending_count() const { return pending_.size(); }
  [[nodiscard]] std::vector<Extension> pending_snapshot() const;

  /// Extensions whose input set contains `b` and otherwise only live conditions,
  /// excluding the ones already present as events.
  [[nodiscard]] std::vector<Extension> possible_extensions(ConditionId b) const;

  /// Materialises `ext`, classifies it, and updates cut-off, candidate and freeing state.
  EventId add_event(const Extension& ext);

  /// Pops and adds the least pending extension. False once nothing is pending.
  bool step();

  /// Steps until no extension is pending. Throws LimitExceeded.
  void run();

  /// Moves the finished prefix out.
  Prefix finish() &&;

private:
  struct Later {
    bool operator()(const Extension& a, const Extension& b) const { return extension_before(b, a); }
  };

  void enqueue_extensions_of(EventId e);
  void enqueue(std::vector<Extension> exts);
  std::vector<Extension> extensions_from(std::span<const ConditionId> outputs) const;
  std::uint32_t past_size_of(std::span<const ConditionId> inputs) const;
  std::vector<EventId> blocks_for(EventId e, const std::vector<ConditionId>& co_of_inputs);
  std::optional<EventId> def2_companion(EventId e) const;
  void refilter_candidates(EventId interface_event);
  std::vector<ConditionId> co_intersection(std::span<const ConditionId> inputs) const;

  Prefix prefix_;
  UnfoldOptions options_;
  std::size_t words_;
  std::priority_queue<Extension, std::vector<Extension>, Later> pending_;
  std::uint64_t pushed_ = 0;
  std::unordered_map<std::vector<StateId>, EventId, StateHash> first_interface_event_;
  std::vector<EventId> live_interface_events_;
  std::vector<EventId> coc_;
  std::chrono::steady_clock::time_point started_;
  mutable WalkScratch scratch_;
};

/// Runs the builder to completion.
Prefix unfold(const Product& product, const UnfoldOptions& options = {});

}  // namespace unfsum
