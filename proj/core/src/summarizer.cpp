#include "unfsum/summarizer.hpp"

#include <algorithm>
#include <unordered_map>

#include "unfsum/errors.hpp"

namespace unfsum {

bool Summary::weighted() const {
  return std::any_of(transitions.begin(), transitions.end(), [](const auto& t) { return t.weight.has_value(); });
}

Lts Summary::to_lts() const {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < classes.size(); ++k) names.push_back("S" + std::to_string(k));
  std::vector<LocalTransition> ts;
  for (const auto& t : transitions) ts.push_back({t.src, t.action, t.dst, t.weight.value_or(Rational{})});
  return Lts(name, std::move(names), alphabet, std::move(ts), initial);
}

InterfaceNet interface_projection(const Prefix& prefix) {
  const ComponentId iface = prefix.product().interface();
  InterfaceNet net;
  for (const auto& b : prefix.conditions()) {
    if (b.component == iface) net.conditions.push_back(b.id);
  }
  for (const auto& e : prefix.events()) {
    if (!e.is_interface) continue;
    ConditionId from = kNoCondition;
    ConditionId to = kNoCondition;
    for (std::size_t k = 0; k < e.transition.parts.size(); ++k) {
      if (e.transition.parts[k].component == iface) {
        from = e.inputs[k];
        to = e.outputs[k];
      }
    }
    net.events.push_back({e.id, from, to});
  }
  return net;
}

namespace {

struct Classes {
  std::unordered_map<ConditionId, SummaryState> of;
  std::vector<std::vector<ConditionId>> members;
};

Classes number_classes(const Prefix& prefix, const InterfaceNet& net) {
  Classes c;
  std::unordered_map<ConditionId, SummaryState> by_rep;
  for (ConditionId b : net.conditions) {
    ConditionId rep = prefix.interface_class(b);
    auto [it, fresh] = by_rep.emplace(rep, static_cast<SummaryState>(c.members.size()));
    if (fresh) c.members.emplace_back();
    c.members[it->second].push_back(b);
    c.of.emplace(b, it->second);
  }
  return c;
}

Summary fold_impl(const Prefix& prefix, const InterfaceNet& net, bool weighted) {
  const Product& product = prefix.product();
  Classes classes = number_classes(prefix, net);

  Summary s;
  s.name = product.component(product.interface()).name();
  s.alphabet = product.interface_alphabet();
  s.initial = classes.of.at(prefix.initial_conditions()[product.interface()]);
  s.classes = std::move(classes.members);

  std::map<std::tuple<SummaryState, std::string, SummaryState>, std::optional<Rational>> edges;
  for (const auto& arc : net.events) {
    const Event& e = prefix.event(arc.event);
    std::optional<Rational> w;
    if (weighted) {
      EventId before = prefix.condition(arc.from).producer;
      Rational base = before == kInitial ? Rational{} : prefix.event(before).cost;
      Rational diff = e.cost - base;
      if (diff.is_negative()) throw InternalError("negative interface event cost");
      w = diff;
    }
    auto key = std::make_tuple(classes.of.at(arc.from), product.action_name(e.transition.action),
                               classes.of.at(arc.to));
    auto [it, fresh] = edges.emplace(key, w);
    if (!fresh && w && *w < *it->second) it->second = w;
  }
  for (auto& [key, w] : edges) {
    auto& [src, action, dst] = key;
    s.transitions.push_back({src, action, dst, w});
  }
  return s;
}

}  // namespace

Summary fold(const Prefix& prefix, const InterfaceNet& net) { return fold_impl(prefix, net, false); }

Summary weighted_fold(const Prefix& prefix, const InterfaceNet& net) { return fold_impl(prefix, net, true); }

std::set<SummaryState> divergent_classes(const Prefix& prefix, const Summary& summary) {
  if (prefix.strategy() != Strategy::Full)
    throw StrategyMismatch("divergence marking needs a prefix built with strategy full, not " +
                           std::string(to_string(prefix.strategy())));
  const ComponentId iface = prefix.product().interface();
  std::unordered_map<ConditionId, SummaryState> class_of;
  for (SummaryState k = 0; k < summary.classes.size(); ++k) {
    for (ConditionId b : summary.classes[k]) class_of.emplace(b, k);
  }

  std::set<SummaryState> out;
  for (EventId c : prefix.candidates()) {
    for (EventId blocker : prefix.event(c).blocks) {
      // An interface blocker produces ip(c) itself; the silent loop from
      // M(blocker) to M(c) starts right there.
      if (prefix.event(blocker).is_interface) out.insert(class_of.at(prefix.event(blocker).ip));
      // Interface conditions concurrent with c are in the co-set of all its inputs.
      for (ConditionId s : prefix.condition(prefix.event(c).inputs.front()).co) {
        if (prefix.condition(s).component != iface) continue;
        if (condition_concurrent(prefix, s, c) && condition_concurrent(prefix, s, blocker))
          out.insert(class_of.at(s));
      }
    }
  }
  return out;
}

namespace {

template <typename Visit>
void for_each_word(const Summary& summary, std::size_t max_len, Visit&& visit) {
  // Successor lists keyed by action.
  std::vector<std::map<std::string, std::vector<const SummaryTransition*>>> out(summary.state_count());
  for (const auto& t : summary.transitions) out[t.src][t.action].push_back(&t);

  Word word;
  auto rec = [&](auto&& self, const std::map<SummaryState, Rational>& reach) -> void {
    visit(word, reach);
    if (word.size() == max_len) return;
    for (const auto& action : summary.alphabet) {
      std::map<SummaryState, Rational> next;
      for (const auto& [s, w] : reach) {
        auto it = out[s].find(action);
        if (it == out[s].end()) continue;
        for (const auto* t : it->second) {
          Rational nw = w + t->weight.value_or(Rational{});
          auto [pos, fresh] = next.emplace(t->dst, nw);
          if (!fresh && nw < pos->second) pos->second = nw;
        }
      }
      if (next.empty()) continue;
      word.push_back(action);
      self(self, next);
      word.pop_back();
    }
  };
  rec(rec, std::map<SummaryState, Rational>{{summary.initial, Rational{}}});
}

}  // namespace

std::map<Word, bool> summary_divergence(const Summary& summary, std::size_t max_len) {
  if (!summary.divergent) throw std::invalid_argument("summary has no divergence annotation");
  std::map<Word, bool> out;
  for_each_word(summary, max_len, [&](const Word& w, const std::map<SummaryState, Rational>& reach) {
    bool d = std::any_of(reach.begin(), reach.end(),
                         [&](const auto& entry) { return summary.divergent->contains(entry.first); });
    out.emplace(w, d);
  });
  return out;
}

std::map<Word, Rational> summary_min_weights(const Summary& summary, std::size_t max_len) {
  std::map<Word, Rational> out;
  for_each_word(summary, max_len, [&](const Word& w, const std::map<SummaryState, Rational>& reach) {
    Rational best = reach.begin()->second;
    for (const auto& [s, v] : reach) best = std::min(best, v);
    out.emplace(w, best);
  });
  return out;
}

}  // namespace unfsum
