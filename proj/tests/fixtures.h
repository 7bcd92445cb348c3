#ifndef DISAMB_TESTS_FIXTURES_H
#define DISAMB_TESTS_FIXTURES_H

#include <string>
#include <vector>

#include "disamb/grammar.h"
#include "disamb/tree.h"
#include "oracle/brute_force.h"

namespace fixtures {

inline std::string data_path(const std::string& rel) { return std::string(DISAMB_DATA_DIR) + "/" + rel; }

inline const disamb::Grammar& grammar() {
  static const disamb::Grammar g = disamb::load_grammar(data_path("grammar/fixture.grammar"));
  return g;
}

inline disamb::CategoryId cat(const char* name) { return *grammar().find_category(name); }

// "V N P N" -> tokens w0/V w1/N ...
inline std::vector<disamb::Token> tags(const std::string& spaced) {
  std::vector<std::string> t;
  std::string cur;
  for (char c : spaced + " ") {
    if (c == ' ') {
      if (!cur.empty()) t.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return oracle::tokens_from_tags(t);
}

inline std::vector<disamb::Token> sentence(const std::string& tagged) {
  return disamb::parse_tagged_sentence(tagged);
}

// Noun-phrase PP chain with two-word NPs: "a man in the park with a telescope".
inline const char* kNpPpChain = "a/D man/N in/P the/D park/N with/P a/D telescope/N";
// Coordinated verbs with a trailing PP.
inline const char* kCoordPp = "a/D number/N of/P companies/N sell/V and/C buy/V by/P computer/N";
inline const char* kIceCream = "I/N ate/V ice_cream/N with/P a/D spoon/N";
inline const char* kRainWashes = "Rain/N washes/V the/D fertilizers/N off/P the/D land/N";
inline const char* kReclaimed = "The/D parents/N reclaimed/V the/D child/N under/P the/D circumstances/N";

}  // namespace fixtures

#endif
