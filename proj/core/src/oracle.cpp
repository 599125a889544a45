#include "unfsum/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "unfsum/errors.hpp"

namespace unfsum::oracle {

// ---------------------------------------------------------------------------
// Exploration

std::span<const ExplicitProduct::Edge> ExplicitProduct::out(NodeId s) const {
  if (!keep_edges_) throw std::logic_error("explicit product was explored without edges");
  return std::span<const Edge>(edges_).subspan(out_begin_[s], out_begin_[s + 1] - out_begin_[s]);
}

std::vector<StateId> ExplicitProduct::state(NodeId s) const {
  std::vector<StateId> v;
  v.reserve(widths_.size());
  const std::uint64_t* w = arena_.data() + static_cast<std::size_t>(s) * words_;
  std::size_t word = 0;
  unsigned bit = 0;
  for (unsigned width : widths_) {
    if (bit + width > 64) {
      ++word;
      bit = 0;
    }
    std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    v.push_back(static_cast<StateId>((w[word] >> bit) & mask));
    bit += width;
  }
  return v;
}

namespace {

struct Packing {
  std::vector<unsigned> widths;
  std::size_t words = 1;
};

Packing packing_for(const Product& product) {
  Packing p;
  unsigned bit = 0;
  for (const auto& c : product.components()) {
    unsigned width = std::max(1u, static_cast<unsigned>(std::bit_width(c.state_count() - 1)));
    if (bit + width > 64) {
      ++p.words;
      bit = 0;
    }
    bit += width;
    p.widths.push_back(width);
  }
  return p;
}

void pack(const Packing& p, std::span<const StateId> state, std::uint64_t* out) {
  std::fill(out, out + p.words, 0);
  std::size_t word = 0;
  unsigned bit = 0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    unsigned width = p.widths[k];
    if (bit + width > 64) {
      ++word;
      bit = 0;
    }
    out[word] |= std::uint64_t{state[k]} << bit;
    bit += width;
  }
}

}  // namespace

ExplicitProduct explore(const Product& product, std::size_t state_bound, bool keep_edges) {
  ExplicitProduct ep;
  Packing packing = packing_for(product);
  ep.widths_ = packing.widths;
  ep.words_ = packing.words;
  ep.keep_edges_ = keep_edges;
  ep.actions_ = product.actions();
  const std::size_t words = packing.words;

  auto hash = [&](std::uint32_t id) {
    const std::uint64_t* w = ep.arena_.data() + static_cast<std::size_t>(id) * words;
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t k = 0; k < words; ++k) h = (h ^ w[k]) * 0xff51afd7ed558ccdULL, h ^= h >> 29;
    return static_cast<std::size_t>(h);
  };
  auto eq = [&](std::uint32_t a, std::uint32_t b) {
    return std::equal(ep.arena_.begin() + static_cast<std::ptrdiff_t>(a * words),
                      ep.arena_.begin() + static_cast<std::ptrdiff_t>((a + 1) * words),
                      ep.arena_.begin() + static_cast<std::ptrdiff_t>(b * words));
  };
  std::unordered_set<std::uint32_t, decltype(hash), decltype(eq)> interned(1024, hash, eq);

  // Appends the packed state as a probe slot; keeps it only if new.
  auto intern = [&](std::span<const StateId> state) -> NodeId {
    std::size_t slot = ep.count_;
    ep.arena_.resize((slot + 1) * words);
    pack(packing, state, ep.arena_.data() + slot * words);
    auto [it, fresh] = interned.insert(static_cast<std::uint32_t>(slot));
    if (!fresh) {
      ep.arena_.resize(slot * words);
      return *it;
    }
    if (++ep.count_ > state_bound)
      throw StateBoundExceeded("explicit exploration exceeded " + std::to_string(state_bound) + " states");
    return static_cast<NodeId>(slot);
  };

  intern(product.initial_state());
  for (NodeId s = 0; s < ep.count_; ++s) {
    if (keep_edges) ep.out_begin_.push_back(ep.edges_.size());
    std::vector<StateId> current = ep.state(s);
    for (auto& succ : global_successors(product, current)) {
      NodeId t = intern(succ.target);
      if (keep_edges) ep.edges_.push_back({s, succ.transition.action, t, succ.transition.weight});
    }
  }
  if (keep_edges) ep.out_begin_.push_back(ep.edges_.size());
  return ep;
}

// ---------------------------------------------------------------------------
// Determinisation

namespace {

constexpr int kEpsilon = -1;

struct Nfa {
  std::vector<std::string> alphabet;
  std::vector<std::vector<std::pair<int, NodeId>>> adj;
  NodeId initial = 0;
};

Dfa subset_construction(const Nfa& nfa) {
  const int symbols = static_cast<int>(nfa.alphabet.size());
  auto closure = [&](std::vector<NodeId> set) {
    std::vector<NodeId> stack = set;
    std::unordered_set<NodeId> seen(set.begin(), set.end());
    while (!stack.empty()) {
      NodeId s = stack.back();
      stack.pop_back();
      for (auto [sym, t] : nfa.adj[s]) {
        if (sym == kEpsilon && seen.insert(t).second) {
          set.push_back(t);
          stack.push_back(t);
        }
      }
    }
    std::sort(set.begin(), set.end());
    return set;
  };

  Dfa dfa;
  dfa.alphabet = nfa.alphabet;
  std::map<std::vector<NodeId>, NodeId> ids;
  std::vector<std::vector<NodeId>> sets;
  auto intern = [&](std::vector<NodeId> set) {
    auto [it, fresh] = ids.emplace(set, static_cast<NodeId>(sets.size()));
    if (fresh) {
      if (set.empty()) dfa.sink = it->second;
      sets.push_back(std::move(set));
      dfa.delta.emplace_back(static_cast<std::size_t>(symbols), kNoSink);
    }
    return it->second;
  };

  dfa.initial = intern(closure({nfa.initial}));
  for (NodeId d = 0; d < sets.size(); ++d) {
    std::vector<std::vector<NodeId>> next(static_cast<std::size_t>(symbols));
    for (NodeId s : sets[d]) {
      for (auto [sym, t] : nfa.adj[s]) {
        if (sym != kEpsilon) next[static_cast<std::size_t>(sym)].push_back(t);
      }
    }
    for (int a = 0; a < symbols; ++a) {
      auto& v = next[static_cast<std::size_t>(a)];
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      NodeId target = intern(closure(std::move(v)));
      dfa.delta[d][static_cast<std::size_t>(a)] = target;
    }
  }
  return dfa;
}

int symbol_of(const std::vector<std::string>& alphabet, const std::string& action) {
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), action);
  if (it == alphabet.end() || *it != action) return kEpsilon;
  return static_cast<int>(it - alphabet.begin());
}

}  // namespace

bool Dfa::accepts(std::span<const std::string> word) const {
  NodeId s = initial;
  for (const auto& a : word) {
    int sym = symbol_of(alphabet, a);
    if (sym == kEpsilon) return false;
    s = delta[s][static_cast<std::size_t>(sym)];
  }
  return s != sink;
}

Dfa project_determinize(const ExplicitProduct& ep, const Alphabet& alphabet) {
  Nfa nfa;
  nfa.alphabet.assign(alphabet.begin(), alphabet.end());
  nfa.adj.resize(ep.size());
  std::vector<int> sym_of_action;
  for (const auto& a : ep.actions()) sym_of_action.push_back(symbol_of(nfa.alphabet, a));
  for (const auto& e : ep.edges()) nfa.adj[e.from].emplace_back(sym_of_action[e.action], e.to);
  nfa.initial = ep.initial();
  return subset_construction(nfa);
}

Dfa determinize(const Lts& lts, const Alphabet& alphabet) {
  Nfa nfa;
  nfa.alphabet.assign(alphabet.begin(), alphabet.end());
  nfa.adj.resize(lts.state_count());
  for (const auto& t : lts.transitions()) nfa.adj[t.src].emplace_back(symbol_of(nfa.alphabet, t.label), t.dst);
  nfa.initial = lts.initial();
  return subset_construction(nfa);
}

// ---------------------------------------------------------------------------
// Minimisation

Dfa minimize(const Dfa& dfa) {
  const std::size_t n = dfa.size();
  const std::size_t symbols = dfa.alphabet.size();

  std::vector<std::vector<std::vector<NodeId>>> inverse(symbols, std::vector<std::vector<NodeId>>(n));
  for (NodeId s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < symbols; ++a) inverse[a][dfa.delta[s][a]].push_back(s);
  }

  std::vector<std::vector<NodeId>> blocks;
  std::vector<std::size_t> block_of(n);
  {
    std::vector<NodeId> accepting;
    std::vector<NodeId> rejecting;
    for (NodeId s = 0; s < n; ++s) (s == dfa.sink ? rejecting : accepting).push_back(s);
    for (auto* part : {&accepting, &rejecting}) {
      if (part->empty()) continue;
      for (NodeId s : *part) block_of[s] = blocks.size();
      blocks.push_back(*part);
    }
  }

  std::deque<std::pair<std::size_t, std::size_t>> work;
  std::vector<std::vector<bool>> in_work(symbols);
  auto push = [&](std::size_t block, std::size_t a) {
    if (in_work[a].size() <= block) in_work[a].resize(block + 1, false);
    if (!in_work[a][block]) {
      in_work[a][block] = true;
      work.emplace_back(block, a);
    }
  };
  for (std::size_t a = 0; a < symbols; ++a) {
    for (std::size_t b = 0; b < blocks.size(); ++b) push(b, a);
  }

  std::vector<bool> marked(n, false);
  std::vector<std::size_t> touched;
  std::vector<std::vector<NodeId>> hits;
  while (!work.empty()) {
    auto [splitter, a] = work.front();
    work.pop_front();
    in_work[a][splitter] = false;

    touched.clear();
    hits.assign(blocks.size(), {});
    for (NodeId t : blocks[splitter]) {
      for (NodeId s : inverse[a][t]) {
        if (marked[s]) continue;
        marked[s] = true;
        if (hits[block_of[s]].empty()) touched.push_back(block_of[s]);
        hits[block_of[s]].push_back(s);
      }
    }
    for (std::size_t y : touched) {
      auto& hit = hits[y];
      for (NodeId s : hit) marked[s] = false;
      if (hit.size() == blocks[y].size()) continue;
      std::vector<NodeId> rest;
      std::vector<bool> is_hit(0);
      for (NodeId s : blocks[y]) {
        if (std::find(hit.begin(), hit.end(), s) == hit.end()) rest.push_back(s);
      }
      std::size_t fresh = blocks.size();
      blocks[y] = hit;
      blocks.push_back(rest);
      for (NodeId s : rest) block_of[s] = fresh;
      for (std::size_t c = 0; c < symbols; ++c) {
        bool y_pending = in_work[c].size() > y && in_work[c][y];
        if (y_pending || blocks[fresh].size() <= blocks[y].size()) {
          push(fresh, c);
        } else {
          push(y, c);
        }
      }
    }
  }

  // Renumber blocks in breadth-first order from the initial block.
  Dfa out;
  out.alphabet = dfa.alphabet;
  std::vector<NodeId> number(blocks.size(), kNoSink);
  std::vector<std::size_t> order;
  number[block_of[dfa.initial]] = 0;
  order.push_back(block_of[dfa.initial]);
  for (std::size_t k = 0; k < order.size(); ++k) {
    NodeId rep = blocks[order[k]].front();
    for (std::size_t a = 0; a < symbols; ++a) {
      std::size_t b = block_of[dfa.delta[rep][a]];
      if (number[b] == kNoSink) {
        number[b] = static_cast<NodeId>(order.size());
        order.push_back(b);
      }
    }
  }
  out.delta.assign(order.size(), std::vector<NodeId>(symbols));
  for (std::size_t k = 0; k < order.size(); ++k) {
    NodeId rep = blocks[order[k]].front();
    for (std::size_t a = 0; a < symbols; ++a) out.delta[k][a] = number[block_of[dfa.delta[rep][a]]];
  }
  out.initial = 0;
  if (dfa.sink != kNoSink && number[block_of[dfa.sink]] != kNoSink) out.sink = number[block_of[dfa.sink]];
  return out;
}

Equivalence equivalent(const Dfa& a, const Dfa& b) {
  if (a.alphabet != b.alphabet) throw std::invalid_argument("equivalence check needs identical alphabets");
  const std::size_t symbols = a.alphabet.size();
  std::map<std::pair<NodeId, NodeId>, std::pair<std::pair<NodeId, NodeId>, int>> parent;
  std::queue<std::pair<NodeId, NodeId>> queue;
  auto start = std::make_pair(a.initial, b.initial);
  parent.emplace(start, std::make_pair(start, -1));
  queue.push(start);
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop();
    if ((cur.first == a.sink) != (cur.second == b.sink)) {
      Word word;
      for (auto at = cur; parent.at(at).second != -1; at = parent.at(at).first)
        word.push_back(a.alphabet[static_cast<std::size_t>(parent.at(at).second)]);
      std::reverse(word.begin(), word.end());
      return {false, word};
    }
    for (std::size_t s = 0; s < symbols; ++s) {
      auto next = std::make_pair(a.delta[cur.first][s], b.delta[cur.second][s]);
      if (parent.emplace(next, std::make_pair(cur, static_cast<int>(s))).second) queue.push(next);
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Divergence and weights

namespace {

std::vector<bool> visible_actions(const ExplicitProduct& ep, const Alphabet& alphabet) {
  std::vector<bool> v;
  for (const auto& a : ep.actions()) v.push_back(alphabet.contains(a));
  return v;
}

}  // namespace

std::vector<bool> divergent_states(const ExplicitProduct& ep, const Alphabet& alphabet) {
  const std::size_t n = ep.size();
  const auto visible = visible_actions(ep, alphabet);

  // Iterative Tarjan on the silent subgraph.
  std::vector<std::uint32_t> index(n, UINT32_MAX), low(n, 0);
  std::vector<bool> on_stack(n, false), on_cycle(n, false);
  std::vector<NodeId> stack;
  std::uint32_t counter = 0;
  struct Frame {
    NodeId node;
    std::size_t next;
  };
  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != UINT32_MAX) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      auto edges = ep.out(f.node);
      if (f.next < edges.size()) {
        const auto& e = edges[f.next++];
        if (visible[e.action]) continue;
        if (e.to == f.node) on_cycle[f.node] = true;
        if (index[e.to] == UINT32_MAX) {
          index[e.to] = low[e.to] = counter++;
          stack.push_back(e.to);
          on_stack[e.to] = true;
          call.push_back({e.to, 0});
        } else if (on_stack[e.to]) {
          low[f.node] = std::min(low[f.node], index[e.to]);
        }
        continue;
      }
      NodeId v = f.node;
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
      if (low[v] == index[v]) {
        std::vector<NodeId> scc;
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          scc.push_back(w);
        } while (w != v);
        if (scc.size() > 1) {
          for (NodeId s : scc) on_cycle[s] = true;
        }
      }
    }
  }

  // Backward silent reachability of the cyclic states.
  std::vector<std::vector<NodeId>> preds(n);
  for (const auto& e : ep.edges()) {
    if (!visible[e.action]) preds[e.to].push_back(e.from);
  }
  std::vector<bool> divergent = on_cycle;
  std::vector<NodeId> work;
  for (NodeId s = 0; s < n; ++s) {
    if (divergent[s]) work.push_back(s);
  }
  while (!work.empty()) {
    NodeId s = work.back();
    work.pop_back();
    for (NodeId p : preds[s]) {
      if (!divergent[p]) {
        divergent[p] = true;
        work.push_back(p);
      }
    }
  }
  return divergent;
}

namespace {

// Least silent-path weight from `source` to every silently reachable node.
std::map<NodeId, Rational> silent_closure(const ExplicitProduct& ep, const std::vector<bool>& visible,
                                          NodeId source) {
  std::map<NodeId, Rational> dist;
  using Item = std::pair<Rational, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist.emplace(source, Rational{});
  heap.emplace(Rational{}, source);
  while (!heap.empty()) {
    auto [d, s] = heap.top();
    heap.pop();
    if (d > dist.at(s)) continue;
    for (const auto& e : ep.out(s)) {
      if (visible[e.action]) continue;
      Rational nd = d + e.weight;
      auto [it, fresh] = dist.emplace(e.to, nd);
      if (fresh || nd < it->second) {
        it->second = nd;
        heap.emplace(nd, e.to);
      }
    }
  }
  return dist;
}

template <typename Visit>
void for_each_projected_trace(const ExplicitProduct& ep, const Alphabet& alphabet, std::size_t max_len,
                              Visit&& visit) {
  const auto visible = visible_actions(ep, alphabet);
  std::map<NodeId, std::map<NodeId, Rational>> closures;
  auto closure = [&](NodeId s) -> const std::map<NodeId, Rational>& {
    auto it = closures.find(s);
    if (it == closures.end()) it = closures.emplace(s, silent_closure(ep, visible, s)).first;
    return it->second;
  };

  std::vector<std::pair<std::string, ActionId>> symbols;
  for (const auto& a : alphabet) {
    auto it = std::lower_bound(ep.actions().begin(), ep.actions().end(), a);
    if (it != ep.actions().end() && *it == a)
      symbols.emplace_back(a, static_cast<ActionId>(it - ep.actions().begin()));
  }

  Word word;
  auto rec = [&](auto&& self, const std::map<NodeId, Rational>& reach) -> void {
    visit(word, reach);
    if (word.size() == max_len) return;
    for (const auto& [name, action] : symbols) {
      std::map<NodeId, Rational> step;
      for (const auto& [s, w] : reach) {
        for (const auto& e : ep.out(s)) {
          if (e.action != action) continue;
          Rational nw = w + e.weight;
          auto [it, fresh] = step.emplace(e.to, nw);
          if (!fresh && nw < it->second) it->second = nw;
        }
      }
      if (step.empty()) continue;
      std::map<NodeId, Rational> next;
      for (const auto& [t, w] : step) {
        for (const auto& [u, d] : closure(t)) {
          Rational nw = w + d;
          auto [it, fresh] = next.emplace(u, nw);
          if (!fresh && nw < it->second) it->second = nw;
        }
      }
      word.push_back(name);
      self(self, next);
      word.pop_back();
    }
  };
  rec(rec, closure(ep.initial()));
}

}  // namespace

std::map<Word, bool> trace_divergence(const ExplicitProduct& ep, const Alphabet& alphabet, std::size_t max_len) {
  const auto divergent = divergent_states(ep, alphabet);
  std::map<Word, bool> out;
  for_each_projected_trace(ep, alphabet, max_len, [&](const Word& w, const std::map<NodeId, Rational>& reach) {
    bool d = std::any_of(reach.begin(), reach.end(), [&](const auto& entry) { return divergent[entry.first]; });
    out.emplace(w, d);
  });
  return out;
}

std::map<Word, Rational> min_weight_per_trace(const ExplicitProduct& ep, const Alphabet& alphabet,
                                              std::size_t max_len) {
  std::map<Word, Rational> out;
  for_each_projected_trace(ep, alphabet, max_len, [&](const Word& w, const std::map<NodeId, Rational>& reach) {
    Rational best = reach.begin()->second;
    for (const auto& [s, v] : reach) best = std::min(best, v);
    out.emplace(w, best);
  });
  return out;
}

}  // namespace unfsum::oracle
