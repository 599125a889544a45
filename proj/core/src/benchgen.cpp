#include "unfsum/benchgen.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace unfsum::benchgen {

namespace {

class Writer {
public:
  explicit Writer(const std::string& name) { out_ << "system " << name << '\n'; }

  void component(const std::string& name, const std::vector<std::string>& states, const std::string& initial) {
    out_ << "component " << name << '\n';
    for (const auto& s : states) out_ << "  state " << s << (s == initial ? " initial" : "") << '\n';
  }
  void trans(const std::string& src, const std::string& action, const std::string& dst) {
    out_ << "  trans " << src << ' ' << action << ' ' << dst << '\n';
  }
  /// A cycle (or a path when `cyclic` is false) through fresh states s0, s1, ...
  void sequence(const std::string& name, const std::vector<std::string>& actions, bool cyclic) {
    std::vector<std::string> states;
    std::size_t count = cyclic ? actions.size() : actions.size() + 1;
    for (std::size_t k = 0; k < count; ++k) states.push_back("s" + std::to_string(k));
    component(name, states, states.front());
    for (std::size_t k = 0; k < actions.size(); ++k) trans(states[k], actions[k], states[(k + 1) % count]);
  }
  std::string finish(const std::string& interface) {
    out_ << "interface " << interface << '\n';
    return out_.str();
  }

private:
  std::ostringstream out_;
};

std::string idx(const std::string& base, int i) { return base + std::to_string(i); }
std::string idx(const std::string& base, int i, int j) { return base + std::to_string(i) + "_" + std::to_string(j); }
int wrap(int i, int n) { return ((i % n) + n) % n; }

// Milner's scheduler: cycler i starts task i (a), hands the token on (c),
// and needs both the end of its task (b) and the token back (c of i-1)
// before starting again. The token initially sits with the last cycler.
std::string cyclic(int n, bool consumer_interface) {
  Writer w(consumer_interface ? idx("cyclicc", n) : idx("cyclics", n));
  for (int i = 0; i < n; ++i) {
    std::string a = idx("a", i), b = idx("b", i), pass = idx("c", i), take = idx("c", wrap(i - 1, n));
    std::vector<std::string> states{"ready", "started", "passed", "waittoken", "waittask", "init"};
    if (i == n - 1) states.push_back("holder");
    w.component(idx("sched", i), states, i == n - 1 ? "holder" : "init");
    w.trans("ready", a, "started");
    w.trans("started", pass, "passed");
    w.trans("passed", b, "waittoken");
    w.trans("passed", take, "waittask");
    w.trans("waittoken", take, "ready");
    w.trans("waittask", b, "ready");
    w.trans("init", take, "ready");
    if (i == n - 1) w.trans("holder", pass, "init");
  }
  for (int i = 0; i < n; ++i) {
    w.component(idx("cons", i), {"idle", "busy"}, "idle");
    w.trans("idle", idx("a", i), "busy");
    w.trans("busy", idx("b", i), "idle");
  }
  return w.finish(consumer_interface ? "cons0" : "sched0");
}

// Task i is forked by task i-1, divides, forks task i+1, works, joins it,
// merges and reports back. The last task solves its part directly.
std::string dac(int n) {
  Writer w(idx("dac", n));
  w.sequence("main", {"fork0", "join0"}, false);
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> seq{idx("fork", i)};
    if (i == n - 1) {
      seq.push_back(idx("solve", i));
    } else {
      if (i == 0) seq.push_back("read0");
      seq.push_back(idx("divide", i));
      seq.push_back(idx("fork", i + 1));
      seq.push_back(idx("work", i));
      seq.push_back(idx("join", i + 1));
      seq.push_back(idx("merge", i));
      seq.push_back(idx("report", i));
    }
    seq.push_back(idx("join", i));
    w.sequence(idx("task", i), seq, false);
  }
  return w.finish(idx("task", n - 1));
}

// Fork f is used by philosopher f (as left) and philosopher f-1 (as right).
void forks(Writer& w, int n, const std::string& take, const std::string& release) {
  for (int f = 0; f < n; ++f) {
    int right_user = wrap(f - 1, n);
    w.component(idx("fork", f), {"free", "left", "right"}, "free");
    w.trans("free", idx(take, f, f), "left");
    w.trans("left", idx(release, f, f), "free");
    w.trans("free", idx(take, right_user, f), "right");
    w.trans("right", idx(release, right_user, f), "free");
  }
}

// Forks are picked up and put down one at a time, left first. The last
// philosopher puts the right fork down first.
std::string dp(int n) {
  Writer w(idx("dp", n));
  for (int i = 0; i < n; ++i) {
    int l = i, r = wrap(i + 1, n);
    std::vector<std::string> seq{idx("take", i, l), idx("take", i, r)};
    if (i == n - 1) {
      seq.push_back(idx("rel", i, r));
      seq.push_back(idx("rel", i, l));
    } else {
      seq.push_back(idx("rel", i, l));
      seq.push_back(idx("rel", i, r));
    }
    w.sequence(idx("phil", i), seq, true);
  }
  forks(w, n, "take", "rel");
  return w.finish("phil0");
}

// A dictionary circulates; a philosopher must hold it while picking up its
// forks, which rules out the circular wait. A thinking philosopher may pass
// it on unused.
std::string dpd(int n) {
  Writer w(idx("dpd", n));
  for (int i = 0; i < n; ++i) {
    int l = i, r = wrap(i + 1, n);
    w.sequence(idx("phil", i),
               {idx("grab", i), idx("take", i, l), idx("take", i, r), idx("drop", i), idx("rel", i, l),
                idx("rel", i, r)},
               true);
    w.trans("s0", idx("pass", i), "s0");
  }
  forks(w, n, "take", "rel");
  std::vector<std::string> states;
  for (int i = 0; i < n; ++i) states.push_back(idx("at", i));
  for (int i = 0; i < n; ++i) states.push_back(idx("held", i));
  w.component("dict", states, "at0");
  for (int i = 0; i < n; ++i) {
    std::string next = idx("at", wrap(i + 1, n));
    w.trans(idx("at", i), idx("pass", i), next);
    w.trans(idx("at", i), idx("grab", i), idx("held", i));
    w.trans(idx("held", i), idx("drop", i), next);
  }
  return w.finish("phil0");
}

// Both forks are taken and released in one step.
std::string dpsyn(int n) {
  Writer w(idx("dpsyn", n));
  for (int i = 0; i < n; ++i) w.sequence(idx("phil", i), {idx("take", i), idx("rel", i)}, true);
  for (int f = 0; f < n; ++f) {
    int right_user = wrap(f - 1, n);
    w.component(idx("fork", f), {"free", "left", "right"}, "free");
    w.trans("free", idx("take", f), "left");
    w.trans("left", idx("rel", f), "free");
    w.trans("free", idx("take", right_user), "right");
    w.trans("right", idx("rel", right_user), "free");
  }
  return w.finish("phil0");
}

// Token ring: a node may enter its critical section only while holding the
// token. Node 0 holds the token initially.
std::string ring(int n) {
  Writer w(idx("ring", n));
  for (int i = 0; i < n; ++i) {
    std::string in = idx("tok", wrap(i - 1, n)), out = idx("tok", i);
    w.component(idx("node", i), {"idle", "want", "token", "ready", "critical"}, i == 0 ? "token" : "idle");
    w.trans("idle", idx("req", i), "want");
    w.trans("idle", in, "token");
    w.trans("want", in, "ready");
    w.trans("token", out, "idle");
    w.trans("token", idx("req", i), "ready");
    w.trans("ready", idx("enter", i), "critical");
    w.trans("critical", idx("exit", i), "token");
  }
  return w.finish("node0");
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::CyclicC: return "CyclicC";
    case Family::CyclicS: return "CyclicS";
    case Family::Dac: return "Dac";
    case Family::Ring: return "Ring";
    case Family::Dp: return "Dp";
    case Family::Dpd: return "Dpd";
    case Family::Dpsyn: return "Dpsyn";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
  };
  for (Family f : all_families()) {
    if (lower(to_string(f)) == lower(name)) return f;
  }
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> families{Family::CyclicC, Family::CyclicS, Family::Dac,  Family::Dp,
                                            Family::Dpd,     Family::Dpsyn,   Family::Ring};
  return families;
}

std::pair<int, int> parameter_range(Family f) {
  switch (f) {
    case Family::Dac: return {1, 64};
    case Family::CyclicC:
    case Family::CyclicS:
    case Family::Ring:
    case Family::Dp:
    case Family::Dpd:
    case Family::Dpsyn: return {2, 64};
  }
  return {2, 64};
}

std::string generate(Family f, int n) {
  auto [lo, hi] = parameter_range(f);
  if (n < lo || n > hi)
    throw std::out_of_range(std::string(to_string(f)) + " needs " + std::to_string(lo) + " <= n <= " +
                            std::to_string(hi) + ", got " + std::to_string(n));
  switch (f) {
    case Family::CyclicC: return cyclic(n, true);
    case Family::CyclicS: return cyclic(n, false);
    case Family::Dac: return dac(n);
    case Family::Ring: return ring(n);
    case Family::Dp: return dp(n);
    case Family::Dpd: return dpd(n);
    case Family::Dpsyn: return dpsyn(n);
  }
  throw std::logic_error("unhandled family");
}

}  // namespace unfsum::benchgen
