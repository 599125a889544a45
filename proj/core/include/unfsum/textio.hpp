#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "unfsum/model.hpp"
#include "unfsum/oracle.hpp"
#include "unfsum/summarizer.hpp"
#include "unfsum/unfolder.hpp"

/// The `.sys` text format and the DOT / JSON exporters.
///
///     system <name>
///     option weighted <on|off>
///     component <name>
///       state <s> [initial]
///       trans <src> <action> <dst> [<weight>]
///     interface <component-name>
///
/// `#` starts a comment. The first state of a component is initial unless
/// another one is marked. A component's alphabet is the set of labels on its
/// transitions.
namespace unfsum {

/// Throws ParseError (with line and column) on any malformed input.
Product parse_system(std::string_view text);

/// Canonical text; parse_system(serialize_system(p)) == p.
std::string serialize_system(const Product& product);

/// Summary as a one-component system whose interface is itself.
std::string serialize_summary(const Summary& summary);

/// Minimal DFA as a one-component system; the sink state is dropped.
std::string serialize_minimized(const oracle::Dfa& dfa, const std::string& name);

std::string export_summary_dot(const Summary& summary);
std::string export_prefix_dot(const Prefix& prefix);

struct RunStats {
  std::size_t events = 0;
  std::size_t cutoffs = 0;
  std::size_t candidates_final = 0;
  std::size_t summary_states = 0;
  std::size_t summary_transitions = 0;
  std::size_t minimized_states = 0;
  std::optional<std::size_t> oracle_markings;
  std::int64_t wall_time_ms = 0;
};

std::string export_stats_json(const RunStats& stats);

}  // namespace unfsum
