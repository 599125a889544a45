#include <algorithm>
#include <map>
#include <random>

#include "unfsum/benchgen.hpp"

namespace unfsum::benchgen {

namespace {

class Draw {
public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  /// Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng_() % (hi - lo + 1)); }
  bool chance(unsigned percent) { return rng_() % 100 < percent; }

private:
  std::mt19937_64 rng_;
};

}  // namespace

Product random_system(std::uint64_t seed, const RandomBounds& bounds) {
  Draw draw(seed * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
  const std::size_t n = draw.between(std::min(bounds.min_components, bounds.max_components), bounds.max_components);
  const std::size_t n_actions = draw.between(std::min<std::size_t>(3, bounds.max_actions), bounds.max_actions);

  // Owners of each action: one component (local), two or three
  // (synchronised). Every pair of owners counts against the pair budget.
  std::vector<std::vector<ComponentId>> owners(n_actions);
  std::map<std::pair<ComponentId, ComponentId>, std::size_t> shared;
  auto try_join = [&](std::vector<ComponentId>& group) {
    auto c = static_cast<ComponentId>(draw.between(0, n - 1));
    if (std::find(group.begin(), group.end(), c) != group.end()) return;
    for (ComponentId o : group) {
      if (shared[std::minmax(o, c)] >= bounds.max_shared_per_pair) return;
    }
    for (ComponentId o : group) ++shared[std::minmax(o, c)];
    group.push_back(c);
  };
  for (std::size_t a = 0; a < n_actions; ++a) {
    owners[a].push_back(static_cast<ComponentId>(draw.between(0, n - 1)));
    if (n > 1 && draw.chance(55)) try_join(owners[a]);
    if (n > 2 && owners[a].size() == 2 && draw.chance(50)) try_join(owners[a]);
  }

  std::vector<Lts> components;
  for (ComponentId c = 0; c < n; ++c) {
    const std::size_t states = draw.between(1, bounds.max_states);
    std::vector<std::string> names;
    for (std::size_t s = 0; s < states; ++s) names.push_back("q" + std::to_string(s));

    std::vector<std::string> alphabet;
    for (std::size_t a = 0; a < n_actions; ++a) {
      if (std::find(owners[a].begin(), owners[a].end(), c) != owners[a].end())
        alphabet.push_back(std::string(1, static_cast<char>('a' + a)));
    }

    auto weight = [&] {
      if (!bounds.weighted) return Rational{};
      auto den = static_cast<std::int64_t>(draw.between(1, 4));
      auto num = static_cast<std::int64_t>(draw.between(0, static_cast<std::size_t>(bounds.max_weight * den)));
      return Rational(num, den);
    };

    // A path q0 -> q1 -> ... with random labels, often closed back to q0,
    // every remaining label on a random edge, then up to two random edges.
    std::vector<LocalTransition> transitions;
    std::set<std::tuple<StateId, std::string, StateId>> seen;
    auto add = [&](StateId src, const std::string& label, StateId dst) {
      if (seen.emplace(src, label, dst).second) transitions.push_back({src, label, dst, weight()});
    };
    auto any_state = [&] { return static_cast<StateId>(draw.between(0, states - 1)); };
    auto any_label = [&] { return alphabet[draw.between(0, alphabet.size() - 1)]; };
    if (!alphabet.empty()) {
      std::set<std::string> used;
      for (std::size_t s = 0; s + 1 < states; ++s) {
        std::string label = any_label();
        used.insert(label);
        add(static_cast<StateId>(s), label, static_cast<StateId>(s + 1));
      }
      if (states > 1 && draw.chance(60)) add(static_cast<StateId>(states - 1), any_label(), 0);
      for (const auto& label : alphabet) {
        if (!used.count(label)) add(any_state(), label, any_state());
      }
      std::size_t extra = draw.between(0, 2);
      for (std::size_t k = 0; k < extra; ++k) add(any_state(), any_label(), any_state());
    }
    Alphabet actions;
    for (const auto& t : transitions) actions.insert(t.label);
    components.emplace_back("C" + std::to_string(c), std::move(names), std::move(actions), std::move(transitions));
  }
  return Product(std::move(components), 0, bounds.weighted, "random" + std::to_string(seed));
}

}  // namespace unfsum::benchgen
