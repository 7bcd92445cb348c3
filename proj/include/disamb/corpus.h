#ifndef DISAMB_CORPUS_H
#define DISAMB_CORPUS_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "disamb/lenmodel.h"
#include "disamb/lexmodel.h"
#include "disamb/pcfg.h"
#include "disamb/tree.h"

namespace disamb {

// Gold trees; each tree carries its own tagged tokens.
struct Treebank {
  std::vector<Tree> trees;
};

inline constexpr std::string_view kTreebankHeader = "# disamb-treebank v1";

// One bracketed tree per line. Blank lines and '#' comments are skipped; a
// "# disamb-treebank vN" header with N != 1 is rejected. Every tree is
// checked against g (rules, root = start symbol, known tags) and any problem
// throws FormatError with the line number.
Treebank parse_treebank(std::string_view text, const Grammar& g, std::string_view source = "<treebank>");
Treebank read_treebank(const std::string& path, const Grammar& g);

// Parses a single bracketed tree.
Tree parse_bracketed(std::string_view text, const Grammar& g);

std::string format_treebank(const Treebank& tb, const Grammar& g);
void write_treebank(const std::string& path, const Treebank& tb, const Grammar& g);

// Model files: "%disamb-model <kind> v1", TSV count rows, and a closing
// "#end <rows> <fnv1a-hex>" line covering every byte of the rows.
//   lex:  head  kind  slot  dependent  count
//   len:  rule  l1,l2[,l3]  count
//   pcfg: lhs  rhs  count
std::string serialize_model(const LexModel& m);
std::string serialize_model(const LenModel& m);
std::string serialize_model(const PcfgModel& m);

LexModel parse_lex_model(std::string_view text, std::string_view source = "<model>");
LenModel parse_len_model(std::string_view text, std::string_view source = "<model>");
PcfgModel parse_pcfg_model(std::string_view text, std::string_view source = "<model>");

void save_model(const std::string& path, const LexModel& m);
void save_model(const std::string& path, const LenModel& m);
void save_model(const std::string& path, const PcfgModel& m);

// A missing file throws Error(ModelMissing).
LexModel load_lex_model(const std::string& path);
LenModel load_len_model(const std::string& path);
PcfgModel load_pcfg_model(const std::string& path);

// Dependency triples of every tree, counted.
std::vector<CountedTriple> treebank_triples(const Treebank& tb, const Grammar& g, const LemmaTable& lemmas = {});

struct LexPreference {
  std::string head;  // surface of the site head word
  std::string slot;  // preposition
  std::string dependent;
  double weight = 1.0;
};

struct SynthConfig {
  std::uint64_t seed = 1;
  int sentences = 1000;
  int max_length = 20;

  int nouns = 200;
  int verbs = 60;
  int adjectives = 20;
  std::vector<std::string> prepositions{"in", "on", "with", "at", "by", "for", "from", "to"};
  double zipf = 1.0;

  double object_rate = 0.7;   // transitive verb phrases
  double pp_rate = 0.6;       // chance of one more PP after the last
  int max_pps = 3;
  double det_rate = 0.5;
  double adj_rate = 0.1;
  double subject_pp_rate = 0.0;
  double np_coord_rate = 0.0;  // coordinated object NP
  double vp_coord_rate = 0.0;  // "V [NP] and V [NP]" predicate

  double low_attach_bias = 0.7;
  double parallel_bias = 0.5;

  // When a PP is generated, with probability preference_rate it is drawn
  // from the entries whose head is a current attachment site and attached
  // there. Any PP whose (site head, preposition, object) matches entries is
  // attached by their weights instead of by low_attach_bias.
  std::vector<LexPreference> preferences;
  double preference_rate = 0.0;
};

// Throws Error(Usage) on out-of-range fields.
void validate(const SynthConfig& cfg);

struct SynthStats {
  std::uint64_t pps = 0;
  std::uint64_t forced = 0;           // only one site available
  std::uint64_t bias_decisions = 0;   // choice made by low_attach_bias
  std::uint64_t bias_low = 0;
  std::uint64_t lexical_decisions = 0;
  std::uint64_t coord_sentences = 0;
  std::uint64_t parallel_sentences = 0;
  std::uint64_t parallel_fallbacks = 0;  // rejection sampling gave up
};

// Samples gold trees. The grammar must provide the rules the configuration
// asks for (S -> NP VP, NP -> NP PP, ...); otherwise Error(Usage).
Treebank generate_synthetic(const SynthConfig& cfg, const Grammar& g, SynthStats* stats = nullptr);

}  // namespace disamb

#endif  // DISAMB_CORPUS_H
