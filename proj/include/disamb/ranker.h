#ifndef DISAMB_RANKER_H
#define DISAMB_RANKER_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disamb/frames.h"
#include "disamb/lenmodel.h"
#include "disamb/lexmodel.h"
#include "disamb/parser.h"
#include "disamb/pcfg.h"

namespace disamb {

// Which test separated two interpretations. Product and Rap are used by the
// comparison strategies, Random marks a tie left to the shuffle.
enum class Stage { None, Lex3, Lex2, Syn, Product, Rap, Random };

std::string_view to_string(Stage s);

enum class Strategy { BackoffSyn, BackoffPcfg, Product, SynOnly, DetRap };

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);  // "backoff-syn", ...
const std::vector<Strategy>& all_strategies();

// ThreeStage: lex3, lex2, syn. TwoStage: one lexical test (lex3), then syn.
enum class Cascade { ThreeStage, TwoStage };

struct RankerConfig {
  double eta = 0.0;
  double tau = 0.0;
  std::uint64_t seed = 0;
  Cascade cascade = Cascade::ThreeStage;
};

// Throws Error(Usage) on a negative threshold.
void validate(const RankerConfig& cfg);

struct Scores {
  double lex3 = 0.0;
  double lex2 = 0.0;
  double syn = 0.0;
  double pcfg = 0.0;
};

enum class Order { First, Second, Tie };

struct Decision {
  Order order = Order::Tie;
  Stage stage = Stage::Random;

  friend bool operator==(const Decision&, const Decision&) = default;
};

// Pairwise back-off test on lex3, lex2 (ThreeStage only) and syn.
Decision compare_backoff(const Scores& a, const Scores& b, const RankerConfig& cfg);

// (lex3 if nonzero else lex2) * syn, larger first.
double product_score(const Scores& s);
Decision compare_product(const Scores& a, const Scores& b);

// Per right-hand modifier, the number of words between the start of the head
// sibling and the start of the modifier, indexed by the modifier's first
// token (0 where no right modifier starts).
std::vector<int> attachment_profile(const Tree& tree, const Grammar& g);

// True when a is attached lower: compared from the rightmost token leftwards.
bool lower_profile(const std::vector<int>& a, const std::vector<int>& b);

struct Candidate {
  std::string key;  // bracketed tree, unique per parse of a sentence
  Scores scores;
  std::vector<int> profile;
};

struct RankOutcome {
  std::vector<std::size_t> order;  // indices into the candidate list, best first
  std::vector<Stage> stages;       // stages[i] separates order[i] from order[i + 1]
  Stage top_stage = Stage::None;   // stages[0], or None when there is one candidate
};

// Sorts candidates by the strategy's score cascade. Within each level,
// candidates whose score is within the threshold of the bucket's best share a
// bucket and are ordered by the next level; full ties are shuffled by
// cfg.seed. The result does not depend on the input order.
RankOutcome rank(const std::vector<Candidate>& candidates, Strategy strategy, const RankerConfig& cfg);

struct Models {
  const LexModel* lex = nullptr;
  const LenModel* len = nullptr;
  const PcfgModel* pcfg = nullptr;
  const LemmaTable* lemmas = nullptr;
};

// Names of the models a strategy reads ("lex", "len", "pcfg").
std::vector<std::string> required_models(Strategy s);

// Fills triples in place and scores every interpretation against whichever
// models are present (absent ones score 0).
std::vector<Candidate> make_candidates(std::vector<Interpretation>& interps, const Grammar& g, const Models& m);

// Seed for the sentence at `index` of a run seeded with `seed`.
std::uint64_t sentence_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace disamb

#endif  // DISAMB_RANKER_H
