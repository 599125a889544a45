#include "unfsum/unfolder.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>
#include <string>

#include "unfsum/errors.hpp"

namespace unfsum {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Full: return "full";
    case Strategy::Def1: return "def1";
    case Strategy::Def2: return "def2";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "full") return Strategy::Full;
  if (name == "def1") return Strategy::Def1;
  if (name == "def2") return Strategy::Def2;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::string_view to_string(EventStatus s) {
  switch (s) {
    case EventStatus::Normal: return "normal";
    case EventStatus::Cutoff: return "cutoff";
    case EventStatus::Candidate: return "candidate";
    case EventStatus::Freed: return "freed";
  }
  return "?";
}

bool ComponentSet::includes(const ComponentSet& other) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((other.words_[w] & ~words_[w]) != 0) return false;
  }
  return true;
}

ComponentSet& ComponentSet::operator|=(const ComponentSet& other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

std::vector<ComponentId> ComponentSet::elements() const {
  std::vector<ComponentId> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1)
      out.push_back(static_cast<ComponentId>(w * 64 + std::countr_zero(bits)));
  }
  return out;
}

std::size_t StateHash::operator()(const std::vector<StateId>& v) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (StateId s : v) h = (h ^ s) * 0x100000001b3ULL;
  return h;
}

bool extension_before(const Extension& a, const Extension& b) {
  if (a.past_size != b.past_size) return a.past_size < b.past_size;
  if (a.transition.action != b.transition.action) return a.transition.action < b.transition.action;
  if (a.transition.parts != b.transition.parts) return a.transition.parts < b.transition.parts;
  if (a.producer_rank != b.producer_rank) return a.producer_rank < b.producer_rank;
  return a.tiebreak < b.tiebreak;
}

// ---------------------------------------------------------------------------
// Prefix

Prefix::Prefix(const Product& product, Strategy strategy) : product_(&product), strategy_(strategy) {
  const auto n = static_cast<ComponentId>(product.size());
  for (ComponentId c = 0; c < n; ++c) {
    Condition b;
    b.id = c;
    b.component = c;
    b.state = product.component(c).initial();
    for (ComponentId other = 0; other < n; ++other) {
      if (other != c) b.co.push_back(other);
    }
    conditions_.push_back(std::move(b));
    initial_.push_back(c);
    class_parent_.push_back(c);
  }
}

std::vector<EventId> Prefix::cutoffs() const {
  std::vector<EventId> out;
  for (const auto& e : events_) {
    if (e.status == EventStatus::Cutoff) out.push_back(e.id);
  }
  return out;
}

std::vector<EventId> Prefix::candidates() const {
  std::vector<EventId> out;
  for (const auto& e : events_) {
    if (e.status == EventStatus::Candidate) out.push_back(e.id);
  }
  return out;
}

std::size_t Prefix::count(EventStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(events_.begin(), events_.end(), [&](const Event& e) { return e.status == status; }));
}

ConditionId Prefix::interface_class(ConditionId b) const {
  while (class_parent_[b] != b) b = class_parent_[b];
  return b;
}

// ---------------------------------------------------------------------------
// Relations

namespace {

bool in_co(const Prefix& p, ConditionId a, ConditionId b) {
  const auto& co = p.condition(a).co;
  return std::binary_search(co.begin(), co.end(), b);
}

std::size_t word_count(const Prefix& p) { return (p.product().size() + 63) / 64; }

void grow(WalkScratch& s, const Prefix& p, std::size_t words) {
  if (s.event_mark.size() < p.events().size()) s.event_mark.resize(p.events().size() * 2 + 16, 0);
  if (s.consumed_mark.size() < p.conditions().size()) {
    std::size_t size = p.conditions().size() * 2 + 16;
    s.consumed_mark.resize(size, 0);
    s.ind_stamp.resize(size, 0);
    s.ind.resize(size * words, 0);
  }
  if (++s.epoch == 0) {
    std::fill(s.event_mark.begin(), s.event_mark.end(), 0);
    std::fill(s.consumed_mark.begin(), s.consumed_mark.end(), 0);
    std::fill(s.ind_stamp.begin(), s.ind_stamp.end(), 0);
    s.epoch = 1;
  }
}

// Walks [e] in reverse topological order (decreasing event id). Leaves the
// past in s.past (decreasing) and ind(b) in s.ind for every touched b.
void walk_past(const Prefix& p, EventId e, WalkScratch& s, std::size_t words,
               std::vector<ConditionId>& cut) {
  grow(s, p, words);
  const std::uint32_t epoch = s.epoch;

  s.past.clear();
  s.stack.assign(1, e);
  s.event_mark[e] = epoch;
  while (!s.stack.empty()) {
    EventId x = s.stack.back();
    s.stack.pop_back();
    s.past.push_back(x);
    for (ConditionId b : p.event(x).inputs) {
      EventId y = p.condition(b).producer;
      if (y != kInitial && s.event_mark[y] != epoch) {
        s.event_mark[y] = epoch;
        s.stack.push_back(y);
      }
    }
  }
  std::sort(s.past.begin(), s.past.end(), std::greater<>());

  auto ind = [&](ConditionId b) { return s.ind.data() + static_cast<std::size_t>(b) * words; };
  auto set_singleton = [&](ConditionId b) {
    std::uint64_t* w = ind(b);
    std::fill(w, w + words, 0);
    ComponentId c = p.condition(b).component;
    w[c / 64] |= std::uint64_t{1} << (c % 64);
    s.ind_stamp[b] = epoch;
  };

  cut.assign(p.product().size(), kNoCondition);
  std::vector<std::uint64_t> acc(words);
  for (EventId x : s.past) {
    std::fill(acc.begin(), acc.end(), 0);
    for (ConditionId b : p.event(x).outputs) {
      if (s.consumed_mark[b] != epoch) {
        cut[p.condition(b).component] = b;
        set_singleton(b);
      }
      const std::uint64_t* w = ind(b);
      for (std::size_t k = 0; k < words; ++k) acc[k] |= w[k];
    }
    for (ConditionId b : p.event(x).inputs) {
      s.consumed_mark[b] = epoch;
      std::copy(acc.begin(), acc.end(), ind(b));
      s.ind_stamp[b] = epoch;
    }
  }
  for (ConditionId b : p.initial_conditions()) {
    if (s.consumed_mark[b] != epoch) {
      cut[p.condition(b).component] = b;
      set_singleton(b);
    }
  }
}

// D = { j | M(e)_j != M(e')_j }; e' << e iff every M(e')_j with j in D has D within ind.
bool strong_from_walk(const Prefix& p, EventId e_prime, const std::vector<ConditionId>& cut_e,
                      const WalkScratch& s, std::size_t words) {
  const auto& cut_p = p.event(e_prime).cut;
  std::vector<std::uint64_t> d(words, 0);
  for (ComponentId j = 0; j < cut_e.size(); ++j) {
    if (cut_e[j] != cut_p[j]) d[j / 64] |= std::uint64_t{1} << (j % 64);
  }
  for (ComponentId j = 0; j < cut_e.size(); ++j) {
    if (cut_e[j] == cut_p[j]) continue;
    ConditionId b = cut_p[j];
    if (s.ind_stamp[b] != s.epoch) return false;
    const std::uint64_t* w = s.ind.data() + static_cast<std::size_t>(b) * words;
    for (std::size_t k = 0; k < words; ++k) {
      if ((d[k] & ~w[k]) != 0) return false;
    }
  }
  return true;
}

}  // namespace

const ComponentSet* CutAndInd::find(ConditionId b) const {
  auto it = std::lower_bound(ind.begin(), ind.end(), b,
                             [](const auto& entry, ConditionId key) { return entry.first < key; });
  if (it == ind.end() || it->first != b) return nullptr;
  return &it->second;
}

CutAndInd compute_cut_and_ind(const Prefix& prefix, EventId e) {
  WalkScratch s;
  const std::size_t words = word_count(prefix);
  CutAndInd out;
  walk_past(prefix, e, s, words, out.cut);
  const std::size_t n = prefix.product().size();
  for (ConditionId b = 0; b < prefix.conditions().size(); ++b) {
    if (s.ind_stamp[b] != s.epoch) continue;
    ComponentSet set(n);
    const std::uint64_t* w = s.ind.data() + static_cast<std::size_t>(b) * words;
    for (ComponentId c = 0; c < n; ++c) {
      if ((w[c / 64] >> (c % 64)) & 1U) set.insert(c);
    }
    out.ind.emplace_back(b, std::move(set));
  }
  return out;
}

bool strong_cause(const Prefix& prefix, EventId e_prime, EventId e, const CutAndInd& traversal) {
  if (e_prime == e) return false;
  const Event& ep = prefix.event(e_prime);
  // e' is in [e] iff the walk of [e] touched its outputs.
  if (traversal.find(ep.outputs.front()) == nullptr) return false;
  const auto& cut_e = traversal.cut;
  const std::size_t n = cut_e.size();
  ComponentSet d(n);
  for (ComponentId j = 0; j < n; ++j) {
    if (cut_e[j] != ep.cut[j]) d.insert(j);
  }
  for (ComponentId j = 0; j < n; ++j) {
    if (cut_e[j] == ep.cut[j]) continue;
    const ComponentSet* ind = traversal.find(ep.cut[j]);
    if (ind == nullptr || !ind->includes(d)) return false;
  }
  return true;
}

bool strong_cause(const Prefix& prefix, EventId e_prime, EventId e) {
  return strong_cause(prefix, e_prime, e, compute_cut_and_ind(prefix, e));
}

bool event_concurrent(const Prefix& prefix, EventId e1, EventId e2) {
  if (e1 == e2) return false;
  for (ConditionId a : prefix.event(e1).inputs) {
    for (ConditionId b : prefix.event(e2).inputs) {
      if (a == b || !in_co(prefix, a, b)) return false;
    }
  }
  return true;
}

bool condition_concurrent(const Prefix& prefix, ConditionId b, EventId e) {
  for (ConditionId x : prefix.event(e).inputs) {
    if (x == b || !in_co(prefix, x, b)) return false;
  }
  return true;
}

std::optional<EventId> is_cutoff(const Prefix& prefix, EventId e) {
  const Event& ev = prefix.event(e);
  if (!ev.is_interface) return std::nullopt;
  for (EventId x = 0; x < e; ++x) {
    const Event& other = prefix.event(x);
    if (other.is_interface && other.status != EventStatus::Cutoff && other.st == ev.st) return x;
  }
  return std::nullopt;
}

std::vector<EventId> concurrent_interface_events(const Prefix& prefix, EventId e, EventId limit) {
  std::vector<EventId> out;
  for (EventId x = 0; x < limit && x < prefix.events().size(); ++x) {
    const Event& other = prefix.event(x);
    if (other.is_interface && other.status != EventStatus::Cutoff && event_concurrent(prefix, x, e))
      out.push_back(x);
  }
  return out;
}

std::vector<EventId> candidate_blocks(const Prefix& prefix, EventId e) {
  const Event& ev = prefix.event(e);
  if (ev.is_interface) throw std::invalid_argument("candidate_blocks: interface event");
  CutAndInd walk = compute_cut_and_ind(prefix, e);
  auto con_e = concurrent_interface_events(prefix, e, e);
  std::vector<EventId> out;
  for (EventId x = 0; x < e; ++x) {
    const Event& other = prefix.event(x);
    if (other.st != ev.st || other.ip != ev.ip) continue;
    if (!strong_cause(prefix, x, e, walk)) continue;
    bool included = std::all_of(con_e.begin(), con_e.end(),
                                [&](EventId i) { return event_concurrent(prefix, i, x); });
    if (included) out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unfolder

Unfolder::Unfolder(const Product& product, UnfoldOptions options)
    : prefix_(product, options.strategy),
      options_(options),
      words_((product.size() + 63) / 64),
      started_(std::chrono::steady_clock::now()) {
  enqueue(extensions_from(prefix_.initial_));
}

std::vector<Extension> Unfolder::pending_snapshot() const {
  auto copy = pending_;
  std::vector<Extension> out;
  while (!copy.empty()) {
    out.push_back(copy.top());
    copy.pop();
  }
  return out;
}

std::uint32_t Unfolder::past_size_of(std::span<const ConditionId> inputs) const {
  WalkScratch& s = scratch_;
  grow(s, prefix_, words_);
  const std::uint32_t epoch = s.epoch;
  std::uint32_t count = 0;
  s.stack.clear();
  for (ConditionId b : inputs) {
    EventId y = prefix_.condition(b).producer;
    if (y != kInitial && s.event_mark[y] != epoch) {
      s.event_mark[y] = epoch;
      s.stack.push_back(y);
    }
  }
  while (!s.stack.empty()) {
    EventId x = s.stack.back();
    s.stack.pop_back();
    ++count;
    for (ConditionId b : prefix_.event(x).inputs) {
      EventId y = prefix_.condition(b).producer;
      if (y != kInitial && s.event_mark[y] != epoch) {
        s.event_mark[y] = epoch;
        s.stack.push_back(y);
      }
    }
  }
  return count + 1;
}

// Every extension that uses at least one of `outputs` together with other live
// conditions. An extension containing several outputs is produced only at the
// first of them, so each input set appears once.
std::vector<Extension> Unfolder::extensions_from(std::span<const ConditionId> outputs) const {
  const Product& product = prefix_.product();
  const std::size_t n = product.size();
  std::vector<Extension> out;
  std::vector<std::vector<ConditionId>> bucket(n);
  std::vector<ConditionId> chosen;
  std::vector<std::span<const std::uint32_t>> local;

  for (std::size_t k = 0; k < outputs.size(); ++k) {
    const ConditionId pivot = outputs[k];
    const Condition& pc = prefix_.condition(pivot);
    auto actions = product.enabled_actions(pc.component, pc.state);
    if (actions.empty()) continue;

    for (auto& v : bucket) v.clear();
    for (ConditionId x : pc.co) {
      const Condition& xc = prefix_.condition(x);
      if (!xc.live) continue;
      if (std::find(outputs.begin(), outputs.begin() + static_cast<std::ptrdiff_t>(k), x) !=
          outputs.begin() + static_cast<std::ptrdiff_t>(k))
        continue;
      bucket[xc.component].push_back(x);
    }

    for (ActionId a : actions) {
      const auto& comps = product.participants(a);
      chosen.assign(comps.size(), kNoCondition);
      std::size_t pivot_pos = static_cast<std::size_t>(
          std::find(comps.begin(), comps.end(), pc.component) - comps.begin());
      chosen[pivot_pos] = pivot;

      // Depth-first choice of one condition per other participant.
      auto emit = [&]() {
        local.assign(comps.size(), {});
        for (std::size_t q = 0; q < comps.size(); ++q)
          local[q] = product.outgoing(comps[q], prefix_.condition(chosen[q]).state, a);
        std::uint32_t past = past_size_of(chosen);
        std::vector<std::size_t> cursor(comps.size(), 0);
        while (true) {
          Extension ext;
          ext.transition.action = a;
          for (std::size_t q = 0; q < comps.size(); ++q)
            ext.transition.parts.push_back({comps[q], local[q][cursor[q]]});
          ext.transition.weight = product.weight_of(ext.transition.parts);
          ext.inputs = chosen;
          ext.past_size = past;
          for (ConditionId b : chosen) {
            EventId y = prefix_.condition(b).producer;
            ext.producer_rank.push_back(y == kInitial ? 0 : y + 1);
          }
          out.push_back(std::move(ext));
          std::size_t q = 0;
          while (q < comps.size() && ++cursor[q] == local[q].size()) cursor[q++] = 0;
          if (q == comps.size()) break;
        }
      };

      auto choose = [&](auto&& self, std::size_t pos) -> void {
        if (pos == comps.size()) {
          emit();
          return;
        }
        if (pos == pivot_pos) {
          self(self, pos + 1);
          return;
        }
        for (ConditionId x : bucket[comps[pos]]) {
          if (product.outgoing(comps[pos], prefix_.condition(x).state, a).empty()) continue;
          bool ok = true;
          for (std::size_t q = 0; q < pos && ok; ++q) {
            if (q != pivot_pos) ok = in_co(prefix_, chosen[q], x);
          }
          if (!ok) continue;
          chosen[pos] = x;
          self(self, pos + 1);
        }
        chosen[pos] = kNoCondition;
      };
      choose(choose, 0);
    }
  }
  return out;
}

std::vector<Extension> Unfolder::possible_extensions(ConditionId b) const {
  std::vector<ConditionId> single{b};
  auto all = extensions_from(single);
  std::erase_if(all, [&](const Extension& ext) {
    for (EventId e : prefix_.condition(b).consumers) {
      const Event& ev = prefix_.event(e);
      if (ev.inputs == ext.inputs && ev.transition.parts == ext.transition.parts) return true;
    }
    return false;
  });
  return all;
}

void Unfolder::enqueue(std::vector<Extension> exts) {
  if (options_.tiebreak_seed != 0) {
    std::mt19937_64 rng(options_.tiebreak_seed ^ pushed_);
    std::shuffle(exts.begin(), exts.end(), rng);
    for (auto& ext : exts) ext.tiebreak = rng();
  } else {
    for (auto& ext : exts) ext.tiebreak = pushed_++;
  }
  pushed_ += exts.size();
  for (auto& ext : exts) pending_.push(std::move(ext));
}

void Unfolder::enqueue_extensions_of(EventId e) {
  std::vector<ConditionId> outputs = prefix_.event(e).outputs;
  enqueue(extensions_from(outputs));
}

std::vector<ConditionId> Unfolder::co_intersection(std::span<const ConditionId> inputs) const {
  std::vector<ConditionId> acc = prefix_.condition(inputs.front()).co;
  std::vector<ConditionId> tmp;
  for (std::size_t k = 1; k < inputs.size(); ++k) {
    const auto& co = prefix_.condition(inputs[k]).co;
    tmp.clear();
    std::set_intersection(acc.begin(), acc.end(), co.begin(), co.end(), std::back_inserter(tmp));
    acc.swap(tmp);
  }
  return acc;
}

std::vector<EventId> Unfolder::blocks_for(EventId e, const std::vector<ConditionId>& co_of_inputs) {
  const Event& ev = prefix_.event(e);
  std::vector<EventId> potential;
  for (EventId x : scratch_.past) {
    if (x == e) continue;
    const Event& other = prefix_.event(x);
    if (other.st != ev.st || other.ip != ev.ip) continue;
    if (strong_from_walk(prefix_, x, ev.cut, scratch_, words_)) potential.push_back(x);
  }
  if (potential.empty()) return {};

  // Con_i(e): an interface event is concurrent with e iff its preset lies in
  // the set of conditions concurrent with every input of e.
  std::vector<EventId> con_e;
  for (EventId i : live_interface_events_) {
    const auto& in = prefix_.event(i).inputs;
    bool all = std::all_of(in.begin(), in.end(), [&](ConditionId b) {
      return std::binary_search(co_of_inputs.begin(), co_of_inputs.end(), b);
    });
    if (all) con_e.push_back(i);
  }

  std::vector<EventId> out;
  for (EventId x : potential) {
    bool included = std::all_of(con_e.begin(), con_e.end(),
                                [&](EventId i) { return event_concurrent(prefix_, i, x); });
    if (included) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<EventId> Unfolder::def2_companion(EventId e) const {
  const Event& ev = prefix_.event(e);
  std::optional<EventId> best;
  for (EventId x : scratch_.past) {
    if (x == e) continue;
    const Event& other = prefix_.event(x);
    if (other.st == ev.st && other.ip == ev.ip && (!best || x < *best)) best = x;
  }
  return best;
}

void Unfolder::refilter_candidates(EventId interface_event) {
  std::vector<EventId> freed;
  for (EventId c : coc_) {
    Event& cand = prefix_.events_[c];
    if (!event_concurrent(prefix_, interface_event, c)) continue;
    std::erase_if(cand.blocks, [&](EventId x) { return !event_concurrent(prefix_, interface_event, x); });
    if (cand.blocks.empty()) {
      cand.status = EventStatus::Freed;
      freed.push_back(c);
    }
  }
  if (freed.empty()) return;
  std::erase_if(coc_, [&](EventId c) { return prefix_.event(c).status == EventStatus::Freed; });
  for (EventId c : freed) {
    for (ConditionId b : prefix_.event(c).outputs) prefix_.conditions_[b].live = true;
    enqueue_extensions_of(c);
  }
}

EventId Unfolder::add_event(const Extension& ext) {
  const Product& product = prefix_.product();
  const ComponentId iface = product.interface();

  // Sanity: inputs live, pairwise concurrent, and not already used by the same transition.
  for (std::size_t k = 0; k < ext.inputs.size(); ++k) {
    const Condition& b = prefix_.condition(ext.inputs[k]);
    if (!b.live) throw InternalError("extension with dead input condition " + std::to_string(b.id));
    for (std::size_t q = k + 1; q < ext.inputs.size(); ++q) {
      if (!in_co(prefix_, ext.inputs[k], ext.inputs[q]))
        throw InternalError("extension inputs are not a co-set");
    }
  }
  for (EventId other : prefix_.condition(ext.inputs.front()).consumers) {
    const Event& o = prefix_.event(other);
    if (o.inputs == ext.inputs && o.transition.parts == ext.transition.parts)
      throw InternalError("duplicate event for an existing input set");
  }

  const auto id = static_cast<EventId>(prefix_.events_.size());
  std::vector<ConditionId> co_of_inputs = co_intersection(ext.inputs);

  Event ev;
  ev.id = id;
  ev.transition = ext.transition;
  ev.inputs = ext.inputs;
  ev.past_size = ext.past_size;
  ev.is_interface = ext.transition.part(iface).has_value();
  for (const Part& part : ext.transition.parts) {
    Condition b;
    b.id = static_cast<ConditionId>(prefix_.conditions_.size());
    b.component = part.component;
    b.state = product.component(part.component).transitions()[part.transition].dst;
    b.producer = id;
    b.live = false;
    ev.outputs.push_back(b.id);
    prefix_.conditions_.push_back(std::move(b));
    prefix_.class_parent_.push_back(prefix_.class_parent_.size());
  }
  for (ConditionId b : ev.inputs) prefix_.conditions_[b].consumers.push_back(id);

  for (ConditionId o : ev.outputs) {
    auto& co = prefix_.conditions_[o].co;
    co = co_of_inputs;
    for (ConditionId other : ev.outputs) {
      if (other != o) co.push_back(other);
    }
  }
  for (ConditionId x : co_of_inputs) {
    auto& co = prefix_.conditions_[x].co;
    co.insert(co.end(), ev.outputs.begin(), ev.outputs.end());
  }
  prefix_.events_.push_back(std::move(ev));

  Event& e = prefix_.events_[id];
  walk_past(prefix_, id, scratch_, words_, e.cut);
  e.st.resize(e.cut.size());
  for (std::size_t j = 0; j < e.cut.size(); ++j) e.st[j] = prefix_.condition(e.cut[j]).state;
  e.ip = e.cut[iface];
  if (prefix_.product().weighted()) {
    for (EventId x : scratch_.past) e.cost += prefix_.event(x).transition.weight;
  }
  if (e.past_size != scratch_.past.size()) throw InternalError("past size mismatch");

  // Classification.
  if (e.is_interface) {
    if (auto it = first_interface_event_.find(e.st); it != first_interface_event_.end()) {
      e.status = EventStatus::Cutoff;
      e.companion = it->second;
    }
  } else if (options_.strategy == Strategy::Full) {
    auto blocks = blocks_for(id, co_of_inputs);
    if (!blocks.empty()) {
      e.status = EventStatus::Candidate;
      e.blocks = std::move(blocks);
    }
  } else if (options_.strategy == Strategy::Def2) {
    if (auto companion = def2_companion(id)) {
      e.status = EventStatus::Cutoff;
      e.companion = *companion;
    }
  }

  switch (e.status) {
    case EventStatus::Cutoff:
      if (e.is_interface) {
        ConditionId a = prefix_.interface_class(e.ip);
        ConditionId b = prefix_.interface_class(prefix_.event(e.companion).ip);
        if (a != b) prefix_.class_parent_[std::max(a, b)] = std::min(a, b);
      }
      break;
    case EventStatus::Candidate:
      coc_.push_back(id);
      break;
    default: {
      for (ConditionId b : prefix_.event(id).outputs) prefix_.conditions_[b].live = true;
      enqueue_extensions_of(id);
      if (prefix_.event(id).is_interface) {
        first_interface_event_.emplace(prefix_.event(id).st, id);
        live_interface_events_.push_back(id);
        if (options_.strategy == Strategy::Full) refilter_candidates(id);
      }
      break;
    }
  }
  return id;
}

bool Unfolder::step() {
  if (pending_.empty()) {
    prefix_.complete_ = true;
    return false;
  }
  Extension ext = pending_.top();
  pending_.pop();
  add_event(ext);
  return true;
}

void Unfolder::run() {
  const auto& limits = options_.limits;
  while (!pending_.empty()) {
    if (prefix_.events_.size() >= limits.max_events) {
      throw LimitExceeded(LimitExceeded::Kind::Events, prefix_.events_.size(),
                          "event limit of " + std::to_string(limits.max_events) + " reached with strategy " +
                              std::string(to_string(options_.strategy)));
    }
    if ((prefix_.events_.size() & 63U) == 0) {
      double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
      if (elapsed > limits.max_seconds) {
        throw LimitExceeded(LimitExceeded::Kind::Seconds, prefix_.events_.size(),
                            "time limit of " + std::to_string(limits.max_seconds) + " s reached with strategy " +
                                std::string(to_string(options_.strategy)));
      }
    }
    step();
  }
  prefix_.complete_ = true;
}

Prefix Unfolder::finish() && {
  for (ConditionId b = 0; b < prefix_.class_parent_.size(); ++b)
    prefix_.class_parent_[b] = prefix_.interface_class(b);
  prefix_.complete_ = pending_.empty();
  return std::move(prefix_);
}

Prefix unfold(const Product& product, const UnfoldOptions& options) {
  Unfolder unfolder(product, options);
  unfolder.run();
  return std::move(unfolder).finish();
}

}  // namespace unfsum
