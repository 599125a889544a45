#include "unfsum/pipeline.hpp"

#include <chrono>

#include "unfsum/errors.hpp"

namespace unfsum {

SummarizeResult summarize(const Product& product, const SummarizeOptions& options) {
  if (options.weighted && !product.weighted())
    throw ModelError("weighted summary requested but the system does not declare 'option weighted on'");
  if (options.divergence && options.unfold.strategy != Strategy::Full)
    throw StrategyMismatch("divergence marking needs strategy full");

  auto started = std::chrono::steady_clock::now();
  Prefix prefix = unfold(product, options.unfold);
  InterfaceNet net = interface_projection(prefix);
  Summary summary = options.weighted ? weighted_fold(prefix, net) : fold(prefix, net);
  if (options.divergence) summary.divergent = divergent_classes(prefix, summary);
  oracle::Dfa minimized = oracle::minimize(oracle::determinize(summary.to_lts(), summary.alphabet));

  RunStats stats;
  stats.events = prefix.events().size();
  stats.cutoffs = prefix.count(EventStatus::Cutoff);
  stats.candidates_final = prefix.count(EventStatus::Candidate);
  stats.summary_states = summary.state_count();
  stats.summary_transitions = summary.transitions.size();
  stats.minimized_states = minimized.live_size();
  if (options.oracle) stats.oracle_markings = oracle::explore(product, options.oracle_bound, false).size();
  stats.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                             started)
                           .count();
  return {std::move(prefix), std::move(summary), std::move(minimized), stats};
}

VerifyReport verify(const Product& product, const VerifyOptions& options) {
  return verify(product, summarize(product, options.summarize), options);
}

VerifyReport verify(const Product& product, const SummarizeResult& result, const VerifyOptions& options) {
  VerifyReport report;
  report.stats = result.stats;
  const Alphabet& sigma = product.interface_alphabet();

  oracle::ExplicitProduct ep = oracle::explore(product, options.summarize.oracle_bound);
  report.stats.oracle_markings = ep.size();
  oracle::Dfa reference = oracle::minimize(oracle::project_determinize(ep, sigma));
  oracle::Equivalence eq = oracle::equivalent(result.minimized, reference);
  report.equivalent = eq.equal;
  report.counterexample = eq.counterexample;

  if (result.summary.divergent) {
    auto ours = summary_divergence(result.summary, options.max_len);
    auto theirs = oracle::trace_divergence(ep, sigma, options.max_len);
    report.divergence_ok = true;
    for (const auto& [word, d] : theirs) {
      auto it = ours.find(word);
      if (it == ours.end() || it->second != d) {
        report.divergence_ok = false;
        report.divergence_mismatch = word;
        break;
      }
    }
  }
  if (options.summarize.weighted || result.summary.weighted()) {
    auto ours = summary_min_weights(result.summary, options.max_len);
    auto theirs = oracle::min_weight_per_trace(ep, sigma, options.max_len);
    report.weights_ok = ours == theirs;
    if (!*report.weights_ok) {
      for (const auto& [word, w] : theirs) {
        auto it = ours.find(word);
        if (it == ours.end() || it->second != w) {
          report.weight_mismatch = word;
          break;
        }
      }
      if (!report.weight_mismatch) report.weight_mismatch = ours.begin()->first;
    }
  }
  return report;
}

std::string format_word(const Word& word) {
  if (word.empty()) return "<empty>";
  std::string out;
  for (const auto& a : word) {
    if (!out.empty()) out += ' ';
    out += a;
  }
  return out;
}

}  // namespace unfsum
