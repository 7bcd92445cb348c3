#include "disamb/ranker.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "disamb/error.h"
#include "rng.h"

namespace disamb {

namespace {

struct Level {
  std::function<double(const Scores&)> value;
  double threshold = 0.0;
  Stage stage = Stage::None;
};

std::vector<Level> levels_for(Strategy s, const RankerConfig& cfg) {
  const Level lex3{[](const Scores& x) { return x.lex3; }, cfg.eta, Stage::Lex3};
  const Level lex2{[](const Scores& x) { return x.lex2; }, cfg.eta, Stage::Lex2};
  const Level syn{[](const Scores& x) { return x.syn; }, cfg.tau, Stage::Syn};
  const Level pcfg{[](const Scores& x) { return x.pcfg; }, cfg.tau, Stage::Syn};
  const bool three = cfg.cascade == Cascade::ThreeStage;
  switch (s) {
    case Strategy::BackoffSyn:
      return three ? std::vector<Level>{lex3, lex2, syn} : std::vector<Level>{lex3, syn};
    case Strategy::BackoffPcfg:
      return three ? std::vector<Level>{lex3, lex2, pcfg} : std::vector<Level>{lex3, pcfg};
    case Strategy::Product:
      return {Level{product_score, 0.0, Stage::Product}};
    case Strategy::SynOnly:
      return {syn};
    case Strategy::DetRap:
      break;
  }
  return {};
}

class Ranking {
 public:
  Ranking(const std::vector<Candidate>& c, std::uint64_t seed) : cands_(c), rng_(seed) {}

  // Appends `group` (sorted by key) in shuffled order, all pairs Random.
  void emit_tie(std::vector<std::size_t> group) {
    std::sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) { return cands_[a].key < cands_[b].key; });
    for (std::size_t i = group.size(); i > 1; --i) std::swap(group[i - 1], group[rng::bounded(rng_, i)]);
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i > 0) out.stages.push_back(Stage::Random);
      out.order.push_back(group[i]);
    }
  }

  void bucket(std::vector<std::size_t> group, const std::vector<Level>& levels, std::size_t depth) {
    if (depth == levels.size() || group.size() == 1) {
      emit_tie(std::move(group));
      return;
    }
    const Level& lv = levels[depth];
    std::sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) {
      double va = lv.value(cands_[a].scores), vb = lv.value(cands_[b].scores);
      if (va != vb) return va > vb;
      return cands_[a].key < cands_[b].key;
    });
    std::size_t i = 0;
    while (i < group.size()) {
      const double top = lv.value(cands_[group[i]].scores);
      std::size_t j = i + 1;
      while (j < group.size() && top - lv.value(cands_[group[j]].scores) <= lv.threshold) ++j;
      if (i > 0) out.stages.push_back(lv.stage);
      bucket(std::vector<std::size_t>(group.begin() + static_cast<std::ptrdiff_t>(i),
                                      group.begin() + static_cast<std::ptrdiff_t>(j)),
             levels, depth + 1);
      i = j;
    }
  }

  RankOutcome out;

 private:
  const std::vector<Candidate>& cands_;
  std::mt19937_64 rng_;
};

}  // namespace

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::None: return "none";
    case Stage::Lex3: return "lex3";
    case Stage::Lex2: return "lex2";
    case Stage::Syn: return "syn";
    case Stage::Product: return "product";
    case Stage::Rap: return "rap";
    case Stage::Random: return "random";
  }
  return "?";
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::BackoffSyn: return "backoff-syn";
    case Strategy::BackoffPcfg: return "backoff-pcfg";
    case Strategy::Product: return "product";
    case Strategy::SynOnly: return "syn-only";
    case Strategy::DetRap: return "det-rap";
  }
  return "?";
}

const std::vector<Strategy>& all_strategies() {
  static const std::vector<Strategy> all{Strategy::BackoffSyn, Strategy::BackoffPcfg, Strategy::Product,
                                         Strategy::SynOnly, Strategy::DetRap};
  return all;
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : all_strategies())
    if (to_string(s) == name) return s;
  return std::nullopt;
}

void validate(const RankerConfig& cfg) {
  if (!(cfg.eta >= 0.0)) throw Error(ErrorCategory::Usage, "eta must be >= 0");
  if (!(cfg.tau >= 0.0)) throw Error(ErrorCategory::Usage, "tau must be >= 0");
}

Decision compare_backoff(const Scores& a, const Scores& b, const RankerConfig& cfg) {
  auto test = [](double x, double y, double thr, Stage st) -> std::optional<Decision> {
    if (x - y > thr) return Decision{Order::First, st};
    if (y - x > thr) return Decision{Order::Second, st};
    return std::nullopt;
  };
  if (auto d = test(a.lex3, b.lex3, cfg.eta, Stage::Lex3)) return *d;
  if (cfg.cascade == Cascade::ThreeStage)
    if (auto d = test(a.lex2, b.lex2, cfg.eta, Stage::Lex2)) return *d;
  if (auto d = test(a.syn, b.syn, cfg.tau, Stage::Syn)) return *d;
  return {Order::Tie, Stage::Random};
}

double product_score(const Scores& s) { return (s.lex3 > 0.0 ? s.lex3 : s.lex2) * s.syn; }

Decision compare_product(const Scores& a, const Scores& b) {
  double x = product_score(a), y = product_score(b);
  if (x > y) return {Order::First, Stage::Product};
  if (y > x) return {Order::Second, Stage::Product};
  return {Order::Tie, Stage::Random};
}

std::vector<int> attachment_profile(const Tree& tree, const Grammar& g) {
  std::vector<int> profile(tree.tokens.size(), 0);
  for (const auto& n : tree.nodes) {
    if (n.preterminal()) continue;
    const Rule& r = g.rule(n.rule);
    const int head_begin = tree.node(n.children[r.head_index]).begin;
    for (std::size_t c = r.head_index + 1; c < n.children.size(); ++c) {
      const TreeNode& m = tree.node(n.children[c]);
      profile[static_cast<std::size_t>(m.begin)] = m.begin - head_begin;
    }
  }
  return profile;
}

bool lower_profile(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

RankOutcome rank(const std::vector<Candidate>& candidates, Strategy strategy, const RankerConfig& cfg) {
  validate(cfg);
  Ranking r(candidates, cfg.seed);
  if (candidates.empty()) return r.out;
  std::vector<std::size_t> all(candidates.size());
  std::iota(all.begin(), all.end(), 0);

  if (strategy == Strategy::DetRap) {
    std::vector<int> best = candidates[0].profile;
    for (const auto& c : candidates)
      if (lower_profile(c.profile, best)) best = c.profile;
    std::vector<std::size_t> low, rest;
    for (std::size_t i : all) (candidates[i].profile == best ? low : rest).push_back(i);
    r.emit_tie(std::move(low));
    if (!rest.empty()) {
      r.out.stages.push_back(Stage::Rap);
      r.emit_tie(std::move(rest));
    }
  } else {
    r.bucket(std::move(all), levels_for(strategy, cfg), 0);
  }
  r.out.top_stage = r.out.stages.empty() ? Stage::None : r.out.stages.front();
  return r.out;
}

std::vector<std::string> required_models(Strategy s) {
  switch (s) {
    case Strategy::BackoffSyn:
    case Strategy::Product: return {"lex", "len"};
    case Strategy::BackoffPcfg: return {"lex", "pcfg"};
    case Strategy::SynOnly: return {"len"};
    case Strategy::DetRap: return {};
  }
  return {};
}

std::vector<Candidate> make_candidates(std::vector<Interpretation>& interps, const Grammar& g, const Models& m) {
  static const LemmaTable kNoLemmas;
  const LemmaTable& lemmas = m.lemmas ? *m.lemmas : kNoLemmas;
  std::vector<Candidate> out;
  out.reserve(interps.size());
  for (auto& i : interps) {
    i.triples = extract_triples(i.tree, g, lemmas);
    Candidate c;
    c.key = to_bracketed(i.tree, g);
    if (m.lex) {
      c.scores.lex3 = lex3_likelihood(*m.lex, i.triples).value();
      c.scores.lex2 = lex2_likelihood(*m.lex, i.triples).value();
    }
    if (m.len) c.scores.syn = syn_likelihood(*m.len, g, i.attachments).value();
    if (m.pcfg) c.scores.pcfg = pcfg_likelihood(*m.pcfg, g, i.tree);
    c.profile = attachment_profile(i.tree, g);
    out.push_back(std::move(c));
  }
  return out;
}

std::uint64_t sentence_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace disamb
