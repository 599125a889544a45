#include "unfsum/textio.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

#include "unfsum/errors.hpp"

namespace unfsum {

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < line.size()) {
    char c = line[k];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++k;
      continue;
    }
    std::size_t start = k;
    while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r' && line[k] != '#') ++k;
    out.push_back({std::string(line.substr(start, k - start)), start + 1});
  }
  return out;
}

struct ComponentDraft {
  std::string name;
  std::size_t line = 0;
  std::vector<std::string> states;
  std::map<std::string, StateId> state_ids;
  std::optional<StateId> initial;
  std::vector<LocalTransition> transitions;
  std::set<std::tuple<StateId, std::string, StateId>> seen;
};

class Parser {
public:
  Product parse(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      line_ = line_no;
      handle(tokenize(text.substr(pos, end - pos)));
      pos = end + 1;
    }
    if (!interface_) throw ParseError(line_no, 1, "missing interface");
    if (drafts_.empty()) throw ParseError(line_no, 1, "no components declared");

    std::vector<Lts> components;
    std::optional<ComponentId> iface;
    for (ComponentId c = 0; c < drafts_.size(); ++c) {
      auto& d = drafts_[c];
      if (d.states.empty()) throw ParseError(d.line, 1, "component '" + d.name + "' has no states");
      Alphabet actions;
      for (const auto& t : d.transitions) actions.insert(t.label);
      try {
        components.emplace_back(d.name, d.states, std::move(actions), d.transitions, d.initial.value_or(0));
      } catch (const ModelError& e) {
        throw ParseError(d.line, 1, e.what());
      }
      if (d.name == interface_->name.text) iface = c;
    }
    if (!iface)
      throw ParseError(interface_->line, interface_->name.column, "undeclared component '" + interface_->name.text + "'");
    try {
      return Product(std::move(components), *iface, weighted_, name_);
    } catch (const ModelError& e) {
      throw ParseError(line_no, 1, e.what());
    }
  }

private:
  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw ParseError(line_, at.column, message);
  }

  void expect_count(const std::vector<Token>& t, std::size_t lo, std::size_t hi) const {
    if (t.size() < lo) fail(t.back(), "too few arguments to '" + t[0].text + "'");
    if (t.size() > hi) fail(t[hi], "unexpected token '" + t[hi].text + "'");
  }

  ComponentDraft& current(const Token& at) {
    if (drafts_.empty()) fail(at, "'" + at.text + "' outside of a component");
    return drafts_.back();
  }

  StateId state_of(ComponentDraft& d, const Token& t) const {
    auto it = d.state_ids.find(t.text);
    if (it == d.state_ids.end()) fail(t, "undeclared state '" + t.text + "' in component '" + d.name + "'");
    return it->second;
  }

  void handle(const std::vector<Token>& t) {
    if (t.empty()) return;
    const std::string& kw = t[0].text;
    if (kw == "system") {
      expect_count(t, 2, 2);
      if (seen_system_) fail(t[0], "duplicate 'system' line");
      seen_system_ = true;
      name_ = t[1].text;
    } else if (kw == "option") {
      expect_count(t, 3, 3);
      if (t[1].text != "weighted") fail(t[1], "unknown option '" + t[1].text + "'");
      if (t[2].text == "on") {
        weighted_ = true;
      } else if (t[2].text == "off") {
        weighted_ = false;
      } else {
        fail(t[2], "expected 'on' or 'off'");
      }
    } else if (kw == "component") {
      expect_count(t, 2, 2);
      for (const auto& d : drafts_) {
        if (d.name == t[1].text) fail(t[1], "duplicate component '" + t[1].text + "'");
      }
      drafts_.push_back({});
      drafts_.back().name = t[1].text;
      drafts_.back().line = line_;
    } else if (kw == "state") {
      expect_count(t, 2, 3);
      auto& d = current(t[0]);
      if (d.state_ids.contains(t[1].text)) fail(t[1], "duplicate state '" + t[1].text + "'");
      auto id = static_cast<StateId>(d.states.size());
      d.states.push_back(t[1].text);
      d.state_ids.emplace(t[1].text, id);
      if (t.size() == 3) {
        if (t[2].text != "initial") fail(t[2], "expected 'initial'");
        if (d.initial) fail(t[2], "second initial state in component '" + d.name + "'");
        d.initial = id;
      }
    } else if (kw == "trans") {
      expect_count(t, 4, 5);
      auto& d = current(t[0]);
      StateId src = state_of(d, t[1]);
      StateId dst = state_of(d, t[3]);
      Rational w;
      if (t.size() == 5) {
        if (!weighted_) fail(t[4], "weight given but 'option weighted on' is not set");
        try {
          w = Rational::parse(t[4].text);
        } catch (const std::exception&) {
          fail(t[4], "malformed weight '" + t[4].text + "'");
        }
        if (w.is_negative()) fail(t[4], "negative weight");
      }
      if (!d.seen.emplace(src, t[2].text, dst).second)
        fail(t[0], "duplicate transition " + t[1].text + " " + t[2].text + " " + t[3].text);
      d.transitions.push_back({src, t[2].text, dst, w});
    } else if (kw == "interface") {
      expect_count(t, 2, 2);
      if (interface_) fail(t[0], "duplicate 'interface' line");
      interface_ = InterfaceLine{t[1], line_};
    } else {
      fail(t[0], "unknown keyword '" + kw + "'");
    }
  }

  std::size_t line_ = 0;
  std::string name_ = "system";
  bool seen_system_ = false;
  bool weighted_ = false;
  std::vector<ComponentDraft> drafts_;
  struct InterfaceLine {
    Token name;
    std::size_t line;
  };
  std::optional<InterfaceLine> interface_;
};

void write_component(std::ostream& out, const Lts& lts, bool weighted) {
  out << "component " << lts.name() << '\n';
  for (StateId s = 0; s < lts.state_count(); ++s) {
    out << "  state " << lts.states()[s];
    if (s == lts.initial()) out << " initial";
    out << '\n';
  }
  for (const auto& t : lts.transitions()) {
    out << "  trans " << lts.states()[t.src] << ' ' << t.label << ' ' << lts.states()[t.dst];
    if (weighted) out << ' ' << t.weight.to_string();
    out << '\n';
  }
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

Product parse_system(std::string_view text) { return Parser().parse(text); }

std::string serialize_system(const Product& product) {
  std::ostringstream out;
  out << "system " << product.name() << '\n';
  out << "option weighted " << (product.weighted() ? "on" : "off") << '\n';
  for (const auto& c : product.components()) write_component(out, c, product.weighted());
  out << "interface " << product.component(product.interface()).name() << '\n';
  return out.str();
}

std::string serialize_summary(const Summary& summary) {
  std::ostringstream out;
  bool weighted = summary.weighted();
  out << "system " << summary.name << "_summary\n";
  out << "option weighted " << (weighted ? "on" : "off") << '\n';
  write_component(out, summary.to_lts(), weighted);
  out << "interface " << summary.name << '\n';
  return out.str();
}

std::string serialize_minimized(const oracle::Dfa& dfa, const std::string& name) {
  std::vector<std::string> states;
  std::vector<std::size_t> renamed(dfa.size());
  for (oracle::NodeId s = 0; s < dfa.size(); ++s) {
    if (s == dfa.sink) continue;
    renamed[s] = states.size();
    states.push_back("M" + std::to_string(states.size()));
  }
  std::ostringstream out;
  out << "system " << name << "_min\n";
  out << "option weighted off\n";
  out << "component " << name << '\n';
  for (oracle::NodeId s = 0; s < dfa.size(); ++s) {
    if (s != dfa.sink) out << "  state " << states[renamed[s]] << (s == dfa.initial ? " initial" : "") << '\n';
  }
  for (oracle::NodeId s = 0; s < dfa.size(); ++s) {
    if (s == dfa.sink) continue;
    for (std::size_t a = 0; a < dfa.alphabet.size(); ++a) {
      oracle::NodeId t = dfa.delta[s][a];
      if (t == dfa.sink) continue;
      out << "  trans " << states[renamed[s]] << ' ' << dfa.alphabet[a] << ' ' << states[renamed[t]] << '\n';
    }
  }
  out << "interface " << name << '\n';
  return out.str();
}

std::string export_summary_dot(const Summary& summary) {
  std::ostringstream out;
  out << "digraph " << quote(summary.name) << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  out << "  __start [shape=point];\n";
  for (SummaryState s = 0; s < summary.state_count(); ++s) {
    out << "  S" << s;
    if (summary.divergent && summary.divergent->contains(s)) out << " [shape=doublecircle, color=red]";
    out << ";\n";
  }
  out << "  __start -> S" << summary.initial << ";\n";
  for (const auto& t : summary.transitions) {
    std::string label = t.action;
    if (t.weight) label += "/" + t.weight->to_string();
    out << "  S" << t.src << " -> S" << t.dst << " [label=" << quote(label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_prefix_dot(const Prefix& prefix) {
  const Product& product = prefix.product();
  std::ostringstream out;
  out << "digraph " << quote(product.name() + "_prefix") << " {\n";
  for (const auto& b : prefix.conditions()) {
    const Lts& c = product.component(b.component);
    out << "  b" << b.id << " [shape=circle, label=" << quote(c.name() + "." + c.states()[b.state]) << "];\n";
  }
  for (const auto& e : prefix.events()) {
    out << "  e" << e.id << " [shape=box, label=" << quote(product.action_name(e.transition.action));
    switch (e.status) {
      case EventStatus::Cutoff: out << ", style=dashed"; break;
      case EventStatus::Candidate: out << ", style=dotted"; break;
      case EventStatus::Freed:
      case EventStatus::Normal: break;
    }
    out << "];\n";
    for (ConditionId b : e.inputs) out << "  b" << b << " -> e" << e.id << ";\n";
    for (ConditionId b : e.outputs) out << "  e" << e.id << " -> b" << b << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_stats_json(const RunStats& stats) {
  nlohmann::ordered_json j;
  j["events"] = stats.events;
  j["cutoffs"] = stats.cutoffs;
  j["candidates_final"] = stats.candidates_final;
  j["summary_states"] = stats.summary_states;
  j["summary_transitions"] = stats.summary_transitions;
  j["minimized_states"] = stats.minimized_states;
  if (stats.oracle_markings) j["oracle_markings"] = *stats.oracle_markings;
  j["wall_time_ms"] = stats.wall_time_ms;
  return j.dump() + "\n";
}

}  // namespace unfsum
