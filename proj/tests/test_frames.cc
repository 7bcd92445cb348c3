#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "disamb/error.h"
#include "disamb/frames.h"
#include "disamb/parser.h"
#include "fixtures.h"

using namespace disamb;

namespace {

LemmaTable eat_lemmas() {
  LemmaTable t;
  t.add("ate", "eat");
  return t;
}

// VP attachment parse first, NP attachment second.
std::pair<Interpretation, Interpretation> ice_cream_parses() {
  const Grammar& g = fixtures::grammar();
  auto all = enumerate(parse(g, fixtures::sentence(fixtures::kIceCream)));
  REQUIRE(all.size() == 2);
  auto is_vp = [&](const Interpretation& i) {
    return std::any_of(i.attachments.begin(), i.attachments.end(),
                       [&](const AttachmentRecord& a) { return g.signature(a.rule) == "VP -> VP PP"; });
  };
  if (is_vp(all[0])) return {all[0], all[1]};
  return {all[1], all[0]};
}

int node_covering(const Tree& t, int b, int e, const char* cat) {
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    if (t.nodes[i].begin == b && t.nodes[i].end == e && fixtures::grammar().name(t.nodes[i].category) == cat)
      return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST_SUITE("frames") {

TEST_CASE("head words") {
  const Grammar& g = fixtures::grammar();
  auto [vp, np] = ice_cream_parses();
  int spoon = node_covering(vp.tree, 5, 6, "N");
  REQUIRE(spoon >= 0);
  CHECK(head_word(vp.tree, spoon, g) == "spoon");

  int ate_ice_cream = node_covering(vp.tree, 1, 3, "VP");
  REQUIRE(ate_ice_cream >= 0);
  CHECK(head_word(vp.tree, ate_ice_cream, g) == "ate");
  CHECK(head_word(vp.tree, ate_ice_cream, g, eat_lemmas()) == "eat");

  int ice_cream_with_spoon = node_covering(np.tree, 2, 6, "NP");
  REQUIRE(ice_cream_with_spoon >= 0);
  CHECK(head_word(np.tree, ice_cream_with_spoon, g) == "ice_cream");
  CHECK(head_word(np.tree, 0, g, eat_lemmas()) == "eat");
}

TEST_CASE("case frames of the two ice cream readings") {
  const Grammar& g = fixtures::grammar();
  auto [vp, np] = ice_cream_parses();
  auto t1 = extract_triples(vp.tree, g, eat_lemmas());
  auto t2 = extract_triples(np.tree, g, eat_lemmas());
  const std::set<DependencyTriple> want1{{"eat", HeadKind::Verb, "arg1", "I"},
                                         {"eat", HeadKind::Verb, "arg2", "ice_cream"},
                                         {"eat", HeadKind::Verb, "with", "spoon"}};
  const std::set<DependencyTriple> want2{{"eat", HeadKind::Verb, "arg1", "I"},
                                         {"eat", HeadKind::Verb, "arg2", "ice_cream"},
                                         {"ice_cream", HeadKind::Noun, "with", "spoon"}};
  CHECK(t1.size() == 3);
  CHECK(t2.size() == 3);
  CHECK(std::set<DependencyTriple>(t1.begin(), t1.end()) == want1);
  CHECK(std::set<DependencyTriple>(t2.begin(), t2.end()) == want2);
}

TEST_CASE("one-word sentence has no triples") {
  Grammar g = parse_grammar("%start VP\n%lex V V\n%kind V verb\nVP -> V[h]\n");
  auto all = enumerate(parse(g, fixtures::sentence("run/V")));
  CHECK(extract_triples(all[0].tree, g).empty());
}

TEST_CASE("preposition slot is lower-cased") {
  const Grammar& g = fixtures::grammar();
  auto all = enumerate(parse(g, fixtures::sentence("John/N phoned/V a/D man/N In/P Chicago/N")));
  REQUIRE(all.size() == 2);
  for (const auto& i : all) {
    auto triples = extract_triples(i.tree, g);
    CHECK(std::count_if(triples.begin(), triples.end(), [](const auto& t) { return t.slot == "in"; }) == 1);
  }
}

TEST_CASE("coordination contributes no triples but moves the PP head") {
  const Grammar& g = fixtures::grammar();
  auto all = enumerate(parse(g, fixtures::sentence(fixtures::kCoordPp)));
  REQUIRE(all.size() == 2);
  std::set<std::string> by_heads;
  for (const auto& i : all) {
    auto triples = extract_triples(i.tree, g);
    // arg1 of the coordination, "of" inside the subject, and the "by" PP.
    CHECK(triples.size() == 3);
    for (const auto& t : triples)
      if (t.slot == "by") by_heads.insert(t.head);
  }
  CHECK(by_heads == std::set<std::string>{"sell", "buy"});
}

TEST_CASE("triple count matches labelled positions and single attachments differ by one triple") {
  const Grammar& g = fixtures::grammar();
  std::mt19937 rng(11);
  int sentences = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> tags;
    if (!oracle::sample_tags(g, g.start(), rng, 10, 0, tags)) continue;
    ++sentences;
    for (const auto& interp : enumerate(parse(g, oracle::tokens_from_tags(tags)))) {
      std::size_t labelled = 0;
      for (const auto& n : interp.tree.nodes) {
        if (n.preterminal()) continue;
        const Rule& r = g.rule(n.rule);
        if (r.coord) continue;
        for (const auto& s : r.slots) labelled += s.kind == SlotKind::Named || s.kind == SlotKind::Lexical;
      }
      CHECK(extract_triples(interp.tree, g).size() == labelled);
    }
  }
  CHECK(sentences > 50);

  auto [vp, np] = ice_cream_parses();
  auto a = extract_triples(vp.tree, g);
  auto b = extract_triples(np.tree, g);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<DependencyTriple> diff;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  CHECK(diff.size() == 1);
}

TEST_CASE("triple dump and lemma files") {
  auto triples = parse_triple_dump("# comment\neat\tverb\twith\tspoon\t3\nice_cream\tnoun\twith\tspoon\t0\n");
  REQUIRE(triples.size() == 2);
  CHECK(triples[0].count == 3);
  CHECK(triples[1].triple.head_kind == HeadKind::Noun);
  CHECK(parse_triple_dump(format_triple_dump(triples)).size() == 2);
  CHECK(format_triple_dump(parse_triple_dump(format_triple_dump(triples))) == format_triple_dump(triples));

  try {
    parse_triple_dump("eat\tverb\twith\tspoon\t1\neat\tadverb\twith\tspoon\t1\n", "t.tsv");
    FAIL("expected error");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_triple_dump("eat\tverb\twith\tspoon\n"), FormatError);
  CHECK_THROWS_AS(parse_triple_dump("eat\tverb\twith\tspoon\t-1\n"), FormatError);

  auto lemmas = parse_lemmas("ate\teat\n# c\n");
  CHECK(lemmas.lemma("ate") == "eat");
  CHECK(lemmas.lemma("spoon") == "spoon");
  CHECK_THROWS_AS(parse_lemmas("ate eat\n"), FormatError);
}

}  // TEST_SUITE
