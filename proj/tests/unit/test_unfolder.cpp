#include <doctest.h>

#include "../support/brute.hpp"
#include "fixtures.hpp"
#include "unfsum/benchgen.hpp"
#include "unfsum/errors.hpp"
#include "unfsum/unfolder.hpp"

using namespace unfsum;

namespace {

UnfoldOptions with(Strategy s, std::size_t max_events = 20'000) {
  UnfoldOptions o;
  o.strategy = s;
  o.limits.max_events = max_events;
  return o;
}

// Small prefixes of random systems; the brute-force checks are cubic or worse.
std::vector<std::pair<Product, Strategy>> small_cases() {
  std::vector<std::pair<Product, Strategy>> out;
  for (std::uint64_t seed = 0; out.size() < 120 && seed < 600; ++seed) {
    Product p = benchgen::random_system(seed);
    for (Strategy s : {Strategy::Full, Strategy::Def2}) {
      try {
        Prefix prefix = unfold(p, with(s, 150));
        out.emplace_back(p, s);
      } catch (const LimitExceeded&) {
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("strategy names") {
  CHECK(parse_strategy("full") == Strategy::Full);
  CHECK(parse_strategy("def1") == Strategy::Def1);
  CHECK(to_string(Strategy::Def2) == "def2");
  CHECK_THROWS_AS(parse_strategy("def3"), std::invalid_argument);
}

TEST_CASE("a one-state loop unfolds into one event and one cut-off") {
  Product p = test::load("a_loop.sys");
  Prefix prefix = unfold(p);
  REQUIRE(prefix.events().size() == 2);
  CHECK(prefix.complete());
  CHECK(prefix.conditions().size() == 3);
  const Event& e0 = prefix.event(0);
  const Event& e1 = prefix.event(1);
  CHECK(e0.is_interface);
  CHECK(e0.status == EventStatus::Normal);
  CHECK(e0.inputs == std::vector<ConditionId>{prefix.initial_conditions()[0]});
  CHECK(e1.inputs == e0.outputs);
  CHECK(e1.status == EventStatus::Cutoff);
  CHECK(e1.companion == 0);
  CHECK(e0.past_size == 1);
  CHECK(e1.past_size == 2);
  CHECK(prefix.cutoffs() == std::vector<EventId>{1});
}

TEST_CASE("a silent loop beside the interface becomes a single candidate") {
  Product p = test::load("silent_loop.sys");
  Prefix prefix = unfold(p);
  CHECK(prefix.events().size() == 2);
  CHECK(prefix.count(EventStatus::Candidate) == 1);
  CHECK(prefix.candidates() == std::vector<EventId>{1});
  CHECK(prefix.event(1).blocks == std::vector<EventId>{0});
  CHECK(prefix.cutoffs().empty());
}

TEST_CASE("def1 does not terminate on a silent loop") {
  Product p = test::load("silent_loop.sys");
  for (std::size_t limit : {100, 1000}) {
    try {
      unfold(p, with(Strategy::Def1, limit));
      FAIL("expected LimitExceeded");
    } catch (const LimitExceeded& e) {
      CHECK(e.kind() == LimitExceeded::Kind::Events);
      CHECK(e.events_added() == limit);
    }
  }
  UnfoldOptions timed = with(Strategy::Def1, 1'000'000'000);
  timed.limits.max_seconds = 0.05;
  try {
    unfold(p, timed);
    FAIL("expected LimitExceeded");
  } catch (const LimitExceeded& e) {
    CHECK(e.kind() == LimitExceeded::Kind::Seconds);
  }
}

TEST_CASE("a freed candidate restores the run it was hiding") {
  Product p = test::load("missed_trace.sys");
  Prefix full = unfold(p);
  CHECK(full.count(EventStatus::Freed) == 1);
  Prefix def2 = unfold(p, with(Strategy::Def2));
  CHECK(def2.count(EventStatus::Freed) == 0);
  CHECK(def2.events().size() < full.events().size());
}

TEST_CASE("relations agree with definitions recomputed from scratch") {
  for (const auto& [p, s] : small_cases()) {
    Prefix prefix = unfold(p, with(s, 150));
    brute::Relations rel(prefix);
    const auto& conds = prefix.conditions();
    const auto& events = prefix.events();
    CAPTURE(p.name());
    CAPTURE(to_string(s));

    for (const auto& b : conds) {
      std::vector<ConditionId> expected;
      for (const auto& c : conds) {
        if (rel.conds_concurrent(b.id, c.id)) expected.push_back(c.id);
      }
      CHECK(b.co == expected);
    }
    for (const auto& e : events) {
      std::set<ConditionId> cut(e.cut.begin(), e.cut.end());
      CHECK(cut == rel.cut(e.id));
      for (ComponentId c = 0; c < p.size(); ++c) {
        CHECK(prefix.condition(e.cut[c]).component == c);
        CHECK(prefix.condition(e.cut[c]).state == e.st[c]);
      }
      CHECK(e.ip == e.cut[p.interface()]);
      CHECK(e.past_size == rel.past(e.id).size());

      CutAndInd walk = compute_cut_and_ind(prefix, e.id);
      for (const auto& [b, ind] : walk.ind) {
        for (ComponentId j = 0; j < p.size(); ++j) CHECK(ind.contains(j) == rel.cond_leq(b, e.cut[j]));
      }
      for (const auto& f : events) {
        CHECK(event_concurrent(prefix, e.id, f.id) == rel.events_concurrent(e.id, f.id));
        if (f.id != e.id && rel.event_leq(f.id, e.id))
          CHECK(strong_cause(prefix, f.id, e.id, walk) == rel.strong_cause(f.id, e.id));
      }
      for (const auto& b : conds) CHECK(condition_concurrent(prefix, b.id, e.id) == rel.cond_event_concurrent(b.id, e.id));
    }
  }
}

TEST_CASE("pending extensions are exactly the possible extensions at every step") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Product p = benchgen::random_system(seed);
    for (Strategy s : {Strategy::Full, Strategy::Def2}) {
      Unfolder u(p, with(s));
      for (int step = 0; step < 60; ++step) {
        std::set<std::pair<std::string, std::vector<ConditionId>>> pending;
        auto snapshot = u.pending_snapshot();
        for (const auto& ext : snapshot) pending.insert(brute::signature(p, ext.transition, ext.inputs));
        CHECK(pending.size() == snapshot.size());
        CHECK(pending == brute::possible_extensions(u.prefix()));
        ++checked;
        if (!u.step()) break;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("events are added in extension order") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Product p = benchgen::random_system(seed);
    Unfolder u(p, with(Strategy::Full));
    for (int step = 0; step < 100; ++step) {
      auto snapshot = u.pending_snapshot();
      if (snapshot.empty()) break;
      const Extension* least = &snapshot.front();
      for (const auto& ext : snapshot) {
        if (extension_before(ext, *least)) least = &ext;
      }
      auto expected = brute::signature(p, least->transition, least->inputs);
      u.step();
      const Event& added = u.prefix().events().back();
      CHECK(brute::signature(p, added.transition, added.inputs) == expected);
    }
  }
}

TEST_CASE("statuses, companions and blockers survive an independent audit") {
  for (const auto& [p, s] : small_cases()) {
    Prefix prefix = unfold(p, with(s, 150));
    CAPTURE(p.name());
    CAPTURE(to_string(s));
    auto problems = brute::audit(prefix);
    CHECK(problems.empty());
    for (const auto& msg : problems) MESSAGE(msg);
    if (s == Strategy::Full) CHECK(brute::strong_cause_violations(prefix) == 0);
  }
}

TEST_CASE("cut-off companions are earlier interface events with the same state") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Product p = benchgen::random_system(seed);
    Prefix prefix = unfold(p, with(Strategy::Full, 200'000));
    for (const auto& e : prefix.events()) {
      if (e.status != EventStatus::Cutoff) continue;
      const Event& c = prefix.event(e.companion);
      CHECK(c.id < e.id);
      CHECK(c.is_interface);
      CHECK(c.status != EventStatus::Cutoff);
      CHECK(c.st == e.st);
      CHECK(c.past_size <= e.past_size);
      CHECK(is_cutoff(prefix, e.id) == std::optional<EventId>(e.companion));
    }
    for (const auto& e : prefix.events()) {
      if (e.status == EventStatus::Candidate) CHECK_FALSE(e.blocks.empty());
      if (e.status == EventStatus::Freed) CHECK(e.blocks.empty());
      if (e.status == EventStatus::Candidate || e.status == EventStatus::Freed) CHECK_FALSE(e.is_interface);
      // Outputs of cut-offs and current candidates feed nothing.
      bool dead = e.status == EventStatus::Cutoff || e.status == EventStatus::Candidate;
      for (ConditionId b : e.outputs) {
        CHECK(prefix.condition(b).live == !dead);
        if (dead) CHECK(prefix.condition(b).consumers.empty());
      }
    }
  }
}

TEST_CASE("the tiebreak seed does not change the prefix") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Product p = benchgen::random_system(seed);
    UnfoldOptions a = with(Strategy::Full, 200'000);
    UnfoldOptions b = a;
    b.tiebreak_seed = 0x5eed + seed;
    Prefix x = unfold(p, a);
    Prefix y = unfold(p, b);
    REQUIRE(x.events().size() == y.events().size());
    for (std::size_t k = 0; k < x.events().size(); ++k) {
      const Event& e = x.event(static_cast<EventId>(k));
      const Event& f = y.event(static_cast<EventId>(k));
      CHECK(e.transition.parts == f.transition.parts);
      CHECK(e.inputs == f.inputs);
      CHECK(e.status == f.status);
      CHECK(e.companion == f.companion);
    }
  }
}

TEST_CASE("benchmark families unfold completely") {
  for (auto f : benchgen::all_families()) {
    Product p = parse_system(benchgen::generate(f, benchgen::parameter_range(f).first));
    CAPTURE(benchgen::to_string(f));
    Prefix prefix = unfold(p);
    CHECK(prefix.complete());
    CHECK(brute::audit(prefix).empty());
  }
}
