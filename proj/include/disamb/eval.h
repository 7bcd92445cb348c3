#ifndef DISAMB_EVAL_H
#define DISAMB_EVAL_H

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "disamb/ranker.h"

namespace disamb {

inline constexpr std::size_t kMaxReportedN = 5;

struct SentenceResult {
  std::size_t index = 0;       // position in the test set
  std::size_t parses = 0;
  std::size_t gold_rank = 0;   // 1-based
  Stage stage = Stage::None;   // what separated rank 1 from rank 2
};

struct BreakdownRow {
  Stage stage = Stage::None;
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::size_t total() const { return correct + incorrect; }
  double accuracy() const { return total() ? static_cast<double>(correct) / static_cast<double>(total()) : 0.0; }
};

// Fraction of sentences whose gold parse is ranked within the first n.
// Throws Error(Data) on an empty set.
double number_n_accuracy(std::span<const SentenceResult> results, std::size_t n);

// Rows in Stage order, only for stages that decided at least one sentence.
std::vector<BreakdownRow> breakdown(std::span<const SentenceResult> results);

struct MethodReport {
  std::string method;
  std::array<double, kMaxReportedN> accuracy{};  // n = 1..5
  std::vector<BreakdownRow> breakdown;
  std::vector<SentenceResult> sentences;
};

struct EvalReport {
  std::size_t test_sentences = 0;
  std::size_t evaluated = 0;
  std::vector<std::size_t> excluded;  // gold parse not among the readings
  std::vector<std::size_t> over_cap;  // too many readings to enumerate
  std::size_t filtered = 0;           // fewer readings than min_parses
  std::size_t ambiguous = 0;          // evaluated sentences with > 1 reading
  double mean_parses = 0.0;           // over evaluated sentences
  std::vector<MethodReport> methods;
};

struct EvalOptions {
  std::size_t jobs = 1;
  std::size_t cap = kDefaultParseCap;
  std::size_t min_parses = 1;
};

// Parses every test sentence once, ranks its readings with each method and
// finds the gold rank. Unknown method names throw Error(Usage); a method
// whose models are missing throws Error(ModelMissing). Each sentence uses
// sentence_seed(cfg.seed, index), so the report does not depend on jobs.
EvalReport compare_methods(std::span<const Tree> test, const Grammar& g, const std::vector<std::string>& methods,
                           const Models& models, const RankerConfig& cfg, const EvalOptions& opts = {});

// "#disamb-eval v1" followed by tab-separated summary, accuracy, breakdown
// and sentence rows.
std::string format_report_tsv(const EvalReport& r);
std::string format_report_table(const EvalReport& r);

// "n<TAB>accuracy<TAB>method" rows read back from a report TSV.
std::string accuracy_plot_rows(std::string_view report_tsv, std::string_view source = "<report>");

}  // namespace disamb

#endif  // DISAMB_EVAL_H
