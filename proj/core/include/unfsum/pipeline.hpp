#pragma once

#include <optional>
#include <string>

#include "unfsum/oracle.hpp"
#include "unfsum/summarizer.hpp"
#include "unfsum/textio.hpp"
#include "unfsum/unfolder.hpp"

/// parse -> unfold -> fold -> annotate, and the cross-check against the oracle.
namespace unfsum {

struct SummarizeOptions {
  UnfoldOptions unfold;
  bool weighted = false;
  bool divergence = false;
  /// Also count reachable markings with the explicit explorer.
  bool oracle = false;
  std::size_t oracle_bound = oracle::kDefaultStateBound;
};

struct SummarizeResult {
  Prefix prefix;
  Summary summary;
  oracle::Dfa minimized;
  RunStats stats;
};

/// Throws LimitExceeded, StrategyMismatch (divergence without full) and
/// ModelError (weighted on an unweighted product).
SummarizeResult summarize(const Product& product, const SummarizeOptions& options);

struct VerifyOptions {
  SummarizeOptions summarize;
  std::size_t max_len = 8;
};

struct VerifyReport {
  bool equivalent = false;
  std::optional<Word> counterexample;
  /// Set when divergence was cross-checked; the first disagreeing word, if any.
  std::optional<bool> divergence_ok;
  std::optional<Word> divergence_mismatch;
  std::optional<bool> weights_ok;
  std::optional<Word> weight_mismatch;
  RunStats stats;

  [[nodiscard]] bool ok() const {
    return equivalent && divergence_ok.value_or(true) && weights_ok.value_or(true);
  }
};

/// Language equivalence with the explicit projection, plus divergence and
/// min-weight agreement on all words up to max_len when those are enabled.
/// Throws StateBoundExceeded and whatever summarize throws.
VerifyReport verify(const Product& product, const VerifyOptions& options);

/// Same, starting from an existing summarize result.
VerifyReport verify(const Product& product, const SummarizeResult& result, const VerifyOptions& options);

std::string format_word(const Word& word);

}  // namespace unfsum
