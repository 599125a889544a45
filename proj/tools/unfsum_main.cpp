// unfsum: summarize, verify, fuzz and benchmark interface summaries.
//
// Exit codes: 0 ok, 1 bad input, 2 unfolding limit hit, 3 oracle state
// bound hit, 4 a verification check failed.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "unfsum/benchgen.hpp"
#include "unfsum/errors.hpp"
#include "unfsum/pipeline.hpp"

namespace fs = std::filesystem;
using namespace unfsum;

namespace {

enum Exit { kOk = 0, kInput = 1, kLimit = 2, kOracleBound = 3, kCheckFailed = 4 };

struct Config {
  std::string input;
  std::string strategy = "full";
  bool weighted = false;
  bool divergence = false;
  std::size_t max_events = 1'000'000;
  double max_seconds = 300.0;
  std::uint64_t tiebreak = 0;
  std::size_t state_bound = oracle::kDefaultStateBound;
  std::size_t max_len = 8;

  std::string dot, prefix_dot, json, sys;
  bool oracle = false;
  bool minimize = false;

  std::uint64_t seed = 0;
  std::size_t count = 100;
  std::string corpus = "corpus";

  std::vector<std::string> families;
  std::vector<int> sizes;
  std::string bench_dir;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

SummarizeOptions summarize_options(const Config& cfg) {
  SummarizeOptions o;
  o.unfold.strategy = parse_strategy(cfg.strategy);
  o.unfold.limits.max_events = cfg.max_events;
  o.unfold.limits.max_seconds = cfg.max_seconds;
  o.unfold.tiebreak_seed = cfg.tiebreak;
  o.weighted = cfg.weighted;
  o.divergence = cfg.divergence;
  o.oracle = cfg.oracle;
  o.oracle_bound = cfg.state_bound;
  return o;
}

VerifyOptions verify_options(const Config& cfg) {
  VerifyOptions o;
  o.summarize = summarize_options(cfg);
  o.max_len = cfg.max_len;
  return o;
}

Product load(const Config& cfg) {
  Product p = parse_system(read_file(cfg.input));
  return p;
}

std::string limit_message(const LimitExceeded& e, Strategy s) {
  std::string msg = e.what();
  if (s == Strategy::Def1)
    msg += " (cut-offs on interface events alone do not terminate when the system can loop silently)";
  return msg;
}

/// Runs `body`, mapping library exceptions to exit codes.
int guarded(const Config& cfg, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << cfg.input << ":" << e.what() << '\n';
    return kInput;
  } catch (const LimitExceeded& e) {
    std::cerr << "limit: " << limit_message(e, parse_strategy(cfg.strategy)) << '\n';
    return kLimit;
  } catch (const StateBoundExceeded& e) {
    std::cerr << "oracle: " << e.what() << '\n';
    return kOracleBound;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
}

void print_report(const VerifyReport& r, std::ostream& out) {
  if (r.equivalent)
    out << "EQUIVALENT\n";
  else
    out << "NOT EQUIVALENT, counterexample: " << format_word(*r.counterexample) << '\n';
  if (r.divergence_ok) {
    out << "divergence: " << (*r.divergence_ok ? "agree" : "disagree");
    if (r.divergence_mismatch) out << " on " << format_word(*r.divergence_mismatch);
    out << '\n';
  }
  if (r.weights_ok) {
    out << "weights: " << (*r.weights_ok ? "agree" : "disagree");
    if (r.weight_mismatch) out << " on " << format_word(*r.weight_mismatch);
    out << '\n';
  }
}

int cmd_summarize(const Config& cfg) {
  Product p = load(cfg);
  SummarizeResult r = summarize(p, summarize_options(cfg));
  std::string sys = cfg.minimize ? serialize_minimized(r.minimized, r.summary.name) : serialize_summary(r.summary);
  if (cfg.sys.empty() && cfg.dot.empty() && cfg.json.empty() && cfg.prefix_dot.empty()) std::cout << sys;
  write_output(cfg.sys, sys);
  write_output(cfg.dot, export_summary_dot(r.summary));
  write_output(cfg.prefix_dot, export_prefix_dot(r.prefix));
  write_output(cfg.json, export_stats_json(r.stats));
  return kOk;
}

int cmd_verify(const Config& cfg) {
  Product p = load(cfg);
  VerifyReport r = verify(p, verify_options(cfg));
  print_report(r, std::cout);
  write_output(cfg.json, export_stats_json(r.stats));
  return r.ok() ? kOk : kCheckFailed;
}

std::size_t size_of(const Product& p) {
  std::size_t n = 0;
  for (const auto& c : p.components()) n += c.states().size() + c.transitions().size();
  return n;
}

int cmd_fuzz(const Config& cfg) {
  VerifyOptions vo = verify_options(cfg);
  benchgen::RandomBounds bounds;
  bounds.weighted = cfg.weighted;
  std::size_t pass = 0, fail = 0, limits = 0;
  std::optional<Product> smallest;
  for (std::size_t k = 0; k < cfg.count; ++k) {
    std::uint64_t seed = cfg.seed + k;
    Product p = benchgen::random_system(seed, bounds);
    std::string verdict;
    try {
      VerifyReport r = verify(p, vo);
      if (r.ok()) {
        ++pass;
        continue;
      }
      std::ostringstream why;
      print_report(r, why);
      verdict = why.str();
    } catch (const LimitExceeded& e) {
      ++limits;
      std::cout << "seed " << seed << ": limit: " << e.what() << '\n';
      continue;
    }
    ++fail;
    std::cout << "seed " << seed << ": " << verdict;
    if (!cfg.corpus.empty()) {
      fs::create_directories(cfg.corpus);
      std::string body = "# strategy " + cfg.strategy + ", seed " + std::to_string(seed) + "\n";
      std::istringstream lines(verdict);
      for (std::string line; std::getline(lines, line);) body += "# " + line + "\n";
      write_output((fs::path(cfg.corpus) / (p.name() + ".sys")).string(), body + serialize_system(p));
    }
    if (!smallest || size_of(p) < size_of(*smallest)) smallest = p;
  }
  std::cout << "pass " << pass << " fail " << fail << " limit " << limits << " of " << cfg.count << '\n';
  if (smallest) std::cout << "smallest failing input: " << smallest->name() << '\n';
  if (fail > 0) return kCheckFailed;
  return limits > 0 ? kLimit : kOk;
}

std::vector<int> default_sizes(benchgen::Family f) {
  using benchgen::Family;
  switch (f) {
    case Family::CyclicC:
    case Family::CyclicS: return {6, 9, 12};
    case Family::Dac: return {6, 9, 12, 15};
    case Family::Dp: return {6, 8, 10};
    case Family::Dpd: return {4, 5, 6};
    case Family::Dpsyn: return {10, 20, 30};
    case Family::Ring: return {3, 5, 7};
  }
  return {};
}

int cmd_bench(const Config& cfg) {
  if (!cfg.bench_dir.empty()) fs::create_directories(cfg.bench_dir);
  std::vector<int> sizes = cfg.sizes;
  std::cout << std::left << std::setw(10) << "Family" << std::right << std::setw(5) << "n" << std::setw(10)
            << "Time/s" << std::setw(10) << "Events" << std::setw(8) << "|Si|" << std::setw(6) << "Min."
            << std::setw(11) << "Markings" << '\n';
  int status = kOk;
  for (const auto& name : cfg.families) {
    benchgen::Family f = benchgen::parse_family(name);
    for (int n : sizes.empty() ? default_sizes(f) : sizes) {
      std::string text = benchgen::generate(f, n);
      if (!cfg.bench_dir.empty())
        write_output((fs::path(cfg.bench_dir) / (std::string(benchgen::to_string(f)) + std::to_string(n) + ".sys"))
                         .string(),
                     text);
      Product p = parse_system(text);
      std::cout << std::left << std::setw(10) << benchgen::to_string(f) << std::right << std::setw(5) << n;
      SummarizeOptions so = summarize_options(cfg);
      so.oracle = false;
      try {
        auto started = std::chrono::steady_clock::now();
        SummarizeResult r = summarize(p, so);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        std::cout << std::setw(10) << std::fixed << std::setprecision(3) << secs << std::setw(10) << r.stats.events
                  << std::setw(8) << r.stats.summary_states << std::setw(6) << r.stats.minimized_states;
      } catch (const LimitExceeded&) {
        std::cout << std::setw(10) << "limit" << std::setw(10) << "-" << std::setw(8) << "-" << std::setw(6) << "-";
        status = kLimit;
      }
      if (cfg.oracle) {
        try {
          std::cout << std::setw(11) << oracle::explore(p, cfg.state_bound, false).size();
        } catch (const StateBoundExceeded&) {
          std::cout << std::setw(11) << "bound";
        }
      } else {
        std::cout << std::setw(11) << "-";
      }
      std::cout << std::endl;
    }
  }
  return status;
}

int cmd_generate(const Config& cfg) {
  for (const auto& name : cfg.families) {
    benchgen::Family f = benchgen::parse_family(name);
    for (int n : cfg.sizes) {
      std::string text = benchgen::generate(f, n);
      if (cfg.bench_dir.empty()) {
        std::cout << text;
      } else {
        fs::create_directories(cfg.bench_dir);
        write_output(
            (fs::path(cfg.bench_dir) / (std::string(benchgen::to_string(f)) + std::to_string(n) + ".sys")).string(),
            text);
      }
    }
  }
  return kOk;
}

void add_unfold_flags(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--strategy", cfg.strategy, "cut-off strategy")
      ->check(CLI::IsMember({"full", "def1", "def2"}))
      ->capture_default_str();
  cmd->add_flag("--weighted", cfg.weighted, "weighted summary (needs 'option weighted on')");
  cmd->add_flag("--divergence", cfg.divergence, "mark divergent summary states (strategy full only)");
  cmd->add_option("--max-events", cfg.max_events, "event budget")->capture_default_str();
  cmd->add_option("--max-seconds", cfg.max_seconds, "time budget")->capture_default_str();
  cmd->add_option("--tiebreak", cfg.tiebreak, "worklist tie-break seed")->capture_default_str();
  cmd->add_option("--state-bound", cfg.state_bound, "explicit-state bound for the oracle")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interface summaries of LTS products via net unfoldings"};
  app.require_subcommand(1);
  Config cfg;

  auto* summarize_cmd = app.add_subcommand("summarize", "unfold, fold and write the interface summary");
  summarize_cmd->add_option("input", cfg.input, ".sys file ('-' for stdin)")->required();
  add_unfold_flags(summarize_cmd, cfg);
  summarize_cmd->add_option("--sys", cfg.sys, "write the summary as .sys ('-' for stdout)");
  summarize_cmd->add_option("--dot", cfg.dot, "write the summary as DOT");
  summarize_cmd->add_option("--prefix-dot", cfg.prefix_dot, "write the unfolding prefix as DOT");
  summarize_cmd->add_option("--json", cfg.json, "write run statistics as JSON");
  summarize_cmd->add_flag("--oracle", cfg.oracle, "also count reachable markings explicitly");
  summarize_cmd->add_flag("--minimize", cfg.minimize, "write the minimized summary instead of the folded one");

  auto* verify_cmd = app.add_subcommand("verify", "check the summary against explicit-state exploration");
  verify_cmd->add_option("input", cfg.input, ".sys file ('-' for stdin)")->required();
  add_unfold_flags(verify_cmd, cfg);
  verify_cmd->add_option("--max-len", cfg.max_len, "word length for divergence and weight checks")
      ->capture_default_str();
  verify_cmd->add_option("--json", cfg.json, "write run statistics as JSON");

  auto* fuzz_cmd = app.add_subcommand("fuzz", "verify random systems");
  add_unfold_flags(fuzz_cmd, cfg);
  fuzz_cmd->add_option("--seed", cfg.seed, "first seed")->capture_default_str();
  fuzz_cmd->add_option("-n,--count", cfg.count, "number of systems")->capture_default_str();
  fuzz_cmd->add_option("--corpus", cfg.corpus, "directory for failing inputs ('' to skip)")->capture_default_str();
  fuzz_cmd->add_option("--max-len", cfg.max_len, "word length for divergence and weight checks")
      ->capture_default_str();

  auto* bench_cmd = app.add_subcommand("bench", "run benchmark families and print a table");
  bench_cmd->add_option("-f,--family", cfg.families, "family names");
  bench_cmd->add_option("-n,--size", cfg.sizes, "parameters (default: the usual rows of each family)");
  bench_cmd->add_option("--max-events", cfg.max_events, "event budget")->capture_default_str();
  bench_cmd->add_option("--max-seconds", cfg.max_seconds, "time budget")->capture_default_str();
  bench_cmd->add_flag("--oracle", cfg.oracle, "count reachable markings explicitly");
  bench_cmd->add_option("--state-bound", cfg.state_bound, "explicit-state bound")->capture_default_str();
  bench_cmd->add_option("--out", cfg.bench_dir, "also write the generated systems here");

  auto* generate_cmd = app.add_subcommand("generate", "print benchmark systems as .sys");
  generate_cmd->add_option("-f,--family", cfg.families, "family names")->required();
  generate_cmd->add_option("-n,--size", cfg.sizes, "parameters")->required();
  generate_cmd->add_option("--out", cfg.bench_dir, "write one file per system into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; every usage error counts as bad input.
    return app.exit(e) == 0 ? kOk : kInput;
  }

  if (*summarize_cmd) return guarded(cfg, [&] { return cmd_summarize(cfg); });
  if (*verify_cmd) return guarded(cfg, [&] { return cmd_verify(cfg); });
  if (*fuzz_cmd) return guarded(cfg, [&] { return cmd_fuzz(cfg); });
  if (*bench_cmd) return guarded(cfg, [&] { return cmd_bench(cfg); });
  if (*generate_cmd) return guarded(cfg, [&] { return cmd_generate(cfg); });
  return kInput;
}
