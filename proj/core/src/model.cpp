#include "unfsum/model.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_set>

#include "unfsum/errors.hpp"

namespace unfsum {

Lts::Lts(std::string name, std::vector<std::string> states, Alphabet actions,
         std::vector<LocalTransition> transitions, StateId initial)
    : name_(std::move(name)),
      states_(std::move(states)),
      actions_(std::move(actions)),
      transitions_(std::move(transitions)),
      initial_(initial) {
  if (states_.empty()) throw ModelError("component '" + name_ + "' has no states");
  if (initial_ >= states_.size()) throw ModelError("component '" + name_ + "': initial state out of range");

  std::unordered_set<std::string> seen_names;
  for (const auto& s : states_) {
    if (!seen_names.insert(s).second)
      throw ModelError("component '" + name_ + "': duplicate state '" + s + "'");
  }

  std::set<std::tuple<StateId, std::string, StateId>> seen;
  for (const auto& t : transitions_) {
    if (t.src >= states_.size() || t.dst >= states_.size())
      throw ModelError("component '" + name_ + "': transition endpoint out of range");
    if (!actions_.contains(t.label))
      throw ModelError("component '" + name_ + "': label '" + t.label + "' not in alphabet");
    if (t.weight.is_negative())
      throw ModelError("component '" + name_ + "': negative weight on '" + t.label + "'");
    if (!seen.emplace(t.src, t.label, t.dst).second)
      throw ModelError("component '" + name_ + "': duplicate transition " + states_[t.src] + " " +
                       t.label + " " + states_[t.dst]);
  }
}

std::optional<StateId> Lts::find_state(const std::string& name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<StateId>(it - states_.begin());
}

std::optional<std::uint32_t> GlobalTransition::part(ComponentId component) const {
  for (const auto& p : parts) {
    if (p.component == component) return p.transition;
  }
  return std::nullopt;
}

Product::Product(std::vector<Lts> components, ComponentId interface, bool weighted, std::string name)
    : name_(std::move(name)), components_(std::move(components)), interface_(interface), weighted_(weighted) {
  if (components_.empty()) throw ModelError("product has no components");
  if (interface_ >= components_.size()) throw ModelError("interface index out of range");

  Alphabet all;
  for (const auto& c : components_) all.insert(c.actions().begin(), c.actions().end());
  actions_.assign(all.begin(), all.end());

  std::map<std::string, ActionId> ids;
  for (ActionId a = 0; a < actions_.size(); ++a) ids.emplace(actions_[a], a);

  const std::size_t n = components_.size();
  participants_.assign(actions_.size(), {});
  alphabet_.assign(n, std::vector<bool>(actions_.size(), false));
  index_.resize(n);
  for (ComponentId c = 0; c < n; ++c) {
    const Lts& lts = components_[c];
    for (const auto& a : lts.actions()) {
      participants_[ids[a]].push_back(c);
      alphabet_[c][ids[a]] = true;
    }
    std::vector<std::map<ActionId, std::vector<std::uint32_t>>> per_state(lts.state_count());
    for (std::uint32_t t = 0; t < lts.transitions().size(); ++t) {
      const auto& tr = lts.transitions()[t];
      per_state[tr.src][ids[tr.label]].push_back(t);
    }
    index_[c].resize(lts.state_count());
    for (StateId s = 0; s < lts.state_count(); ++s) {
      for (auto& [a, ts] : per_state[s]) {
        index_[c][s].actions.push_back(a);
        index_[c][s].transitions.push_back(std::move(ts));
      }
    }
  }
}

std::optional<ActionId> Product::find_action(const std::string& name) const {
  auto it = std::lower_bound(actions_.begin(), actions_.end(), name);
  if (it == actions_.end() || *it != name) return std::nullopt;
  return static_cast<ActionId>(it - actions_.begin());
}

bool Product::participates(ComponentId c, ActionId a) const { return alphabet_[c][a]; }

std::span<const std::uint32_t> Product::outgoing(ComponentId c, StateId s, ActionId a) const {
  const StateIndex& idx = index_[c][s];
  auto it = std::lower_bound(idx.actions.begin(), idx.actions.end(), a);
  if (it == idx.actions.end() || *it != a) return {};
  return idx.transitions[static_cast<std::size_t>(it - idx.actions.begin())];
}

std::span<const ActionId> Product::enabled_actions(ComponentId c, StateId s) const {
  return index_[c][s].actions;
}

std::vector<StateId> Product::initial_state() const {
  std::vector<StateId> s;
  s.reserve(components_.size());
  for (const auto& c : components_) s.push_back(c.initial());
  return s;
}

Rational Product::weight_of(std::span<const Part> parts) const {
  Rational w;
  for (const auto& p : parts) w += components_[p.component].transitions()[p.transition].weight;
  return w;
}

std::vector<Successor> global_successors(const Product& product, std::span<const StateId> global_state) {
  std::vector<Successor> out;
  std::vector<std::span<const std::uint32_t>> choices;
  std::vector<std::size_t> cursor;
  for (ActionId a = 0; a < product.actions().size(); ++a) {
    const auto& comps = product.participants(a);
    choices.clear();
    bool enabled = true;
    for (ComponentId c : comps) {
      auto ts = product.outgoing(c, global_state[c], a);
      if (ts.empty()) {
        enabled = false;
        break;
      }
      choices.push_back(ts);
    }
    if (!enabled || comps.empty()) continue;

    // Odometer over one local transition per participant.
    cursor.assign(comps.size(), 0);
    while (true) {
      Successor succ;
      succ.transition.action = a;
      succ.target.assign(global_state.begin(), global_state.end());
      for (std::size_t k = 0; k < comps.size(); ++k) {
        std::uint32_t t = choices[k][cursor[k]];
        succ.transition.parts.push_back({comps[k], t});
        succ.target[comps[k]] = product.component(comps[k]).transitions()[t].dst;
      }
      succ.transition.weight = product.weight_of(succ.transition.parts);
      out.push_back(std::move(succ));

      std::size_t k = 0;
      while (k < comps.size() && ++cursor[k] == choices[k].size()) cursor[k++] = 0;
      if (k == comps.size()) break;
    }
  }
  return out;
}

Word project_word(std::span<const std::string> word, const Alphabet& alphabet) {
  Word out;
  for (const auto& a : word) {
    if (alphabet.contains(a)) out.push_back(a);
  }
  return out;
}

}  // namespace unfsum
