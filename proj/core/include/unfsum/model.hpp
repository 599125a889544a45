#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "unfsum/rational.hpp"

namespace unfsum {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;
using ComponentId = std::uint32_t;

using Word = std::vector<std::string>;
using Alphabet = std::set<std::string>;

struct LocalTransition {
  StateId src = 0;
  std::string label;
  StateId dst = 0;
  Rational weight;

  friend bool operator==(const LocalTransition&, const LocalTransition&) = default;
};

/// One sequential component: a finite labelled transition system.
///
/// Several transitions may connect the same pair of states as long as their
/// labels differ. The constructor validates every invariant and throws
/// ModelError on violation.
class Lts {
public:
  Lts(std::string name, std::vector<std::string> states, Alphabet actions,
      std::vector<LocalTransition> transitions, StateId initial = 0);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<std::string>& states() const { return states_; }
  [[nodiscard]] const Alphabet& actions() const { return actions_; }
  [[nodiscard]] const std::vector<LocalTransition>& transitions() const { return transitions_; }
  [[nodiscard]] StateId initial() const { return initial_; }
  [[nodiscard]] std::size_t state_count() const { return states_.size(); }

  /// Index of the state called `name`, if any.
  [[nodiscard]] std::optional<StateId> find_state(const std::string& name) const;

  friend bool operator==(const Lts&, const Lts&) = default;

private:
  std::string name_;
  std::vector<std::string> states_;
  Alphabet actions_;
  std::vector<LocalTransition> transitions_;
  StateId initial_ = 0;
};

/// A participant of a global transition: component `component` fires its
/// local transition number `transition`.
struct Part {
  ComponentId component = 0;
  std::uint32_t transition = 0;

  friend auto operator<=>(const Part&, const Part&) = default;
};

/// A synchronised step of the product. Non-participating components (the
/// "star" entries) are implicit; `parts` lists participants in increasing
/// component order.
struct GlobalTransition {
  ActionId action = 0;
  std::vector<Part> parts;
  Rational weight;

  /// Local transition index of `component`, or nullopt if it does not participate.
  [[nodiscard]] std::optional<std::uint32_t> part(ComponentId component) const;

  friend bool operator==(const GlobalTransition&, const GlobalTransition&) = default;
};

struct Successor {
  GlobalTransition transition;
  std::vector<StateId> target;
};

/// A finite word with an optional realisation weight (weighted mode only).
struct Trace {
  Word word;
  std::optional<Rational> weight;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Ordered components synchronising on shared action names, with one
/// distinguished interface component (0-based index).
class Product {
public:
  Product(std::vector<Lts> components, ComponentId interface, bool weighted = false,
          std::string name = "system");

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<Lts>& components() const { return components_; }
  [[nodiscard]] const Lts& component(ComponentId c) const { return components_[c]; }
  [[nodiscard]] std::size_t size() const { return components_.size(); }
  [[nodiscard]] ComponentId interface() const { return interface_; }
  [[nodiscard]] bool weighted() const { return weighted_; }

  /// Global alphabet, sorted by name; ActionId indexes into it.
  [[nodiscard]] const std::vector<std::string>& actions() const { return actions_; }
  [[nodiscard]] const std::string& action_name(ActionId a) const { return actions_[a]; }
  [[nodiscard]] std::optional<ActionId> find_action(const std::string& name) const;

  /// Components whose alphabet contains `a`, increasing.
  [[nodiscard]] const std::vector<ComponentId>& participants(ActionId a) const {
    return participants_[a];
  }
  [[nodiscard]] bool participates(ComponentId c, ActionId a) const;

  /// Local transitions of `c` leaving `s` labelled `a`.
  [[nodiscard]] std::span<const std::uint32_t> outgoing(ComponentId c, StateId s, ActionId a) const;
  /// Actions with at least one local transition of `c` leaving `s`, increasing.
  [[nodiscard]] std::span<const ActionId> enabled_actions(ComponentId c, StateId s) const;

  [[nodiscard]] const Alphabet& interface_alphabet() const { return component(interface_).actions(); }
  [[nodiscard]] std::vector<StateId> initial_state() const;

  /// Sum of part weights; the rule every GlobalTransition weight follows.
  [[nodiscard]] Rational weight_of(std::span<const Part> parts) const;

  friend bool operator==(const Product& a, const Product& b) {
    return a.name_ == b.name_ && a.components_ == b.components_ && a.interface_ == b.interface_ &&
           a.weighted_ == b.weighted_;
  }

private:
  struct StateIndex {
    // (action, transition) pairs leaving the state, sorted by action.
    std::vector<ActionId> actions;
    std::vector<std::vector<std::uint32_t>> transitions;
  };

  std::string name_;
  std::vector<Lts> components_;
  ComponentId interface_;
  bool weighted_;
  std::vector<std::string> actions_;
  std::vector<std::vector<ComponentId>> participants_;
  std::vector<std::vector<bool>> alphabet_;  // [component][action]
  std::vector<std::vector<StateIndex>> index_;
};

/// All global transitions enabled at `global_state` with their successors.
/// Successors differ from `global_state` only at participating coordinates.
std::vector<Successor> global_successors(const Product& product,
                                         std::span<const StateId> global_state);

/// Subsequence of `word` keeping exactly the actions in `alphabet`.
Word project_word(std::span<const std::string> word, const Alphabet& alphabet);

}  // namespace unfsum
