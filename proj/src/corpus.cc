#include "disamb/corpus.h"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <map>

#include "disamb/error.h"
#include "rng.h"
#include "text.h"

namespace disamb {

// ---------------------------------------------------------------------------
// Bracketed trees

namespace {

class BracketReader {
 public:
  BracketReader(std::string_view text, const Grammar& g) : s_(text), g_(g) {}

  Tree read() {
    Tree t;
    skip();
    if (pos_ >= s_.size()) fail("empty tree");
    node(t);
    skip();
    if (pos_ < s_.size()) fail(s_[pos_] == ')' ? "unbalanced ')'" : "text after the tree");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw Error(ErrorCategory::Data, what); }

  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  std::string_view atom() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')' && s_[pos_] != ' ' && s_[pos_] != '\t') ++pos_;
    if (b == pos_) fail(pos_ >= s_.size() ? "unbalanced '(' (tree ends early)" : "expected a label");
    return s_.substr(b, pos_ - b);
  }

  void expect_close() {
    skip();
    if (pos_ >= s_.size()) fail("unbalanced '(' (tree ends early)");
    if (s_[pos_] != ')') fail("expected ')'");
    ++pos_;
  }

  int node(Tree& t) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '(') fail("expected '('");
    ++pos_;
    std::string_view label = atom();
    skip();
    const int index = static_cast<int>(t.nodes.size());
    t.nodes.emplace_back();
    if (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')') {
      std::string_view word = atom();
      auto pre = g_.preterminal_for_tag(label);
      if (!pre) fail("unknown tag '" + std::string(label) + "'");
      const int at = static_cast<int>(t.tokens.size());
      t.tokens.push_back(Token{std::string(word), std::string(label)});
      t.nodes[static_cast<std::size_t>(index)].category = *pre;
      t.nodes[static_cast<std::size_t>(index)].begin = at;
      t.nodes[static_cast<std::size_t>(index)].end = at + 1;
      expect_close();
      return index;
    }
    auto cat = g_.find_category(label);
    if (!cat) fail("unknown category '" + std::string(label) + "'");
    if (g_.category(*cat).preterminal) fail("preterminal '" + std::string(label) + "' must wrap a single word");
    const int begin = static_cast<int>(t.tokens.size());
    std::vector<int> kids;
    std::vector<CategoryId> rhs;
    while (true) {
      skip();
      if (pos_ >= s_.size()) fail("unbalanced '(' (tree ends early)");
      if (s_[pos_] == ')') break;
      if (s_[pos_] != '(') fail("stray word '" + std::string(atom()) + "' under " + std::string(label));
      int k = node(t);
      kids.push_back(k);
      rhs.push_back(t.nodes[static_cast<std::size_t>(k)].category);
    }
    ++pos_;
    if (kids.empty()) fail("empty constituent " + std::string(label));
    auto rule = g_.find_rule(*cat, rhs);
    if (!rule) {
      std::string sig = std::string(label) + " ->";
      for (CategoryId c : rhs) sig += " " + g_.name(c);
      fail("underivable tree: no rule " + sig);
    }
    TreeNode& n = t.nodes[static_cast<std::size_t>(index)];
    n.category = *cat;
    n.rule = *rule;
    n.children = std::move(kids);
    n.begin = begin;
    n.end = static_cast<int>(t.tokens.size());
    return index;
  }

  std::string_view s_;
  const Grammar& g_;
  std::size_t pos_ = 0;
};

}  // namespace

Tree parse_bracketed(std::string_view text, const Grammar& g) { return BracketReader(text, g).read(); }

Treebank parse_treebank(std::string_view text, const Grammar& g, std::string_view source) {
  Treebank tb;
  std::size_t line_no = 0;
  for (std::string_view raw : text::lines(text)) {
    ++line_no;
    std::string_view line = text::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with("# disamb-treebank") && line != kTreebankHeader)
        throw FormatError(std::string(source), line_no, "unsupported treebank version '" + std::string(line) + "'");
      continue;
    }
    try {
      Tree t = parse_bracketed(line, g);
      if (t.nodes[0].category != g.start())
        throw Error(ErrorCategory::Data, "root " + g.name(t.nodes[0].category) + " is not the start symbol " +
                                             g.name(g.start()));
      tb.trees.push_back(std::move(t));
    } catch (const FormatError&) {
      throw;
    } catch (const Error& e) {
      throw FormatError(std::string(source), line_no, e.what());
    }
  }
  return tb;
}

Treebank read_treebank(const std::string& path, const Grammar& g) { return parse_treebank(text::read_file(path), g, path); }

std::string format_treebank(const Treebank& tb, const Grammar& g) {
  std::string out(kTreebankHeader);
  out += '\n';
  for (const Tree& t : tb.trees) {
    out += to_bracketed(t, g);
    out += '\n';
  }
  return out;
}

void write_treebank(const std::string& path, const Treebank& tb, const Grammar& g) {
  text::write_file(path, format_treebank(tb, g));
}

std::vector<CountedTriple> treebank_triples(const Treebank& tb, const Grammar& g, const LemmaTable& lemmas) {
  std::map<DependencyTriple, std::uint64_t> counts;
  for (const Tree& t : tb.trees)
    for (auto& tr : extract_triples(t, g, lemmas)) ++counts[std::move(tr)];
  std::vector<CountedTriple> out;
  out.reserve(counts.size());
  for (auto& [t, c] : counts) out.push_back(CountedTriple{t, c});
  return out;
}

// ---------------------------------------------------------------------------
// Model files

namespace {

constexpr std::string_view kMagic = "%disamb-model";

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::string wrap(std::string_view kind, const std::string& body, std::size_t rows) {
  std::string out = std::string(kMagic) + " " + std::string(kind) + " v1\n";
  out += body;
  out += "#end " + std::to_string(rows) + " " + hex64(text::fnv1a(body)) + "\n";
  return out;
}

struct Body {
  std::vector<std::pair<std::size_t, std::string_view>> rows;  // (line number, row)
};

// Checks header, version and checksum; returns the data rows.
Body unwrap(std::string_view text, std::string_view kind, std::string_view source) {
  const std::string src(source);
  std::size_t nl = text.find('\n');
  std::string_view header = text::trim(text.substr(0, nl));
  auto head = text::split_ws(header);
  if (head.size() != 3 || head[0] != kMagic) throw FormatError(src, 1, "not a disamb model file");
  if (head[1] != kind)
    throw FormatError(src, 1, "expected a " + std::string(kind) + " model, found " + std::string(head[1]));
  if (head[2] != "v1") throw FormatError(src, 1, "unsupported model version " + std::string(head[2]));
  if (nl == std::string_view::npos) throw FormatError(src, 1, "checksum error: missing #end line (truncated file?)");

  std::string_view rest = text.substr(nl + 1);
  std::size_t end_at = std::string_view::npos;
  for (std::size_t p = 0; p < rest.size();) {
    std::size_t q = rest.find('\n', p);
    std::string_view line = rest.substr(p, q == std::string_view::npos ? std::string_view::npos : q - p);
    if (line.starts_with("#end")) {
      end_at = p;
      break;
    }
    if (q == std::string_view::npos) break;
    p = q + 1;
  }
  if (end_at == std::string_view::npos) throw FormatError(src, 1, "checksum error: missing #end line (truncated file?)");
  std::string_view body = rest.substr(0, end_at);
  std::string_view tail = text::trim(rest.substr(end_at));
  auto fields = text::split_ws(tail.substr(0, tail.find('\n')));
  std::uint64_t rows = 0;
  if (fields.size() != 3 || !text::parse_uint(fields[1], rows)) throw FormatError(src, 1, "malformed #end line");
  if (fields[2] != hex64(text::fnv1a(body))) throw FormatError(src, 1, "checksum error: model body does not match");

  Body out;
  std::size_t line_no = 1;
  for (std::string_view line : text::lines(body)) {
    ++line_no;
    if (text::trim(line).empty() || line.front() == '#') continue;
    out.rows.emplace_back(line_no, line);
  }
  if (out.rows.size() != rows) throw FormatError(src, 1, "checksum error: row count mismatch");
  return out;
}

std::uint64_t count_field(std::string_view f, const std::string& src, std::size_t line) {
  std::uint64_t c = 0;
  if (!text::parse_uint(f, c)) throw FormatError(src, line, "bad count '" + std::string(f) + "'");
  return c;
}

std::string load_text(const std::string& path, std::string_view what) {
  if (!text::file_exists(path))
    throw Error(ErrorCategory::ModelMissing, std::string(what) + " model not found: " + path);
  return text::read_file(path);
}

}  // namespace

std::string serialize_model(const LexModel& m) {
  std::vector<CountedTriple> rows;
  for (const auto& [key, dist] : m.three_word())
    for (const auto& [dep, c] : dist.counts)
      rows.push_back(CountedTriple{{std::get<0>(key), std::get<1>(key), std::get<2>(key), dep}, c});
  return wrap("lex", format_triple_dump(rows), rows.size());
}

std::string serialize_model(const LenModel& m) {
  std::string body;
  std::size_t rows = 0;
  for (const auto& [sig, rc] : m.rules())
    for (const auto& [t, c] : rc.counts) {
      body += sig + "\t" + to_string(t) + "\t" + std::to_string(c) + "\n";
      ++rows;
    }
  return wrap("len", body, rows);
}

std::string serialize_model(const PcfgModel& m) {
  std::string body;
  std::size_t rows = 0;
  for (const auto& [lhs, row] : m.table())
    for (const auto& [rhs, c] : row.counts) {
      body += lhs + "\t" + rhs + "\t" + std::to_string(c) + "\n";
      ++rows;
    }
  return wrap("pcfg", body, rows);
}

LexModel parse_lex_model(std::string_view text, std::string_view source) {
  Body b = unwrap(text, "lex", source);
  LexModel m;
  for (const auto& [line, row] : b.rows) {
    try {
      auto t = parse_triple_dump(std::string(row) + "\n", source);
      for (const auto& ct : t) m.add(ct.triple, ct.count);
    } catch (const FormatError& e) {
      throw FormatError(std::string(source), line, e.what());
    }
  }
  return m;
}

LenModel parse_len_model(std::string_view text, std::string_view source) {
  Body b = unwrap(text, "len", source);
  const std::string src(source);
  LenModel m;
  for (const auto& [line, row] : b.rows) {
    auto f = text::split(row, '\t');
    if (f.size() != 3) throw FormatError(src, line, "expected rule<TAB>lengths<TAB>count");
    auto t = parse_length_tuple(f[1]);
    if (!t) throw FormatError(src, line, "bad length tuple '" + std::string(f[1]) + "'");
    try {
      m.add(f[0], *t, count_field(f[2], src, line));
    } catch (const FormatError&) {
      throw;
    } catch (const Error& e) {
      throw FormatError(src, line, e.what());
    }
  }
  return m;
}

PcfgModel parse_pcfg_model(std::string_view text, std::string_view source) {
  Body b = unwrap(text, "pcfg", source);
  const std::string src(source);
  PcfgModel m;
  for (const auto& [line, row] : b.rows) {
    auto f = text::split(row, '\t');
    if (f.size() != 3 || f[0].empty() || f[1].empty()) throw FormatError(src, line, "expected lhs<TAB>rhs<TAB>count");
    m.add(f[0], f[1], count_field(f[2], src, line));
  }
  return m;
}

void save_model(const std::string& path, const LexModel& m) { text::write_file(path, serialize_model(m)); }
void save_model(const std::string& path, const LenModel& m) { text::write_file(path, serialize_model(m)); }
void save_model(const std::string& path, const PcfgModel& m) { text::write_file(path, serialize_model(m)); }

LexModel load_lex_model(const std::string& path) { return parse_lex_model(load_text(path, "lex"), path); }
LenModel load_len_model(const std::string& path) { return parse_len_model(load_text(path, "len"), path); }
PcfgModel load_pcfg_model(const std::string& path) { return parse_pcfg_model(load_text(path, "pcfg"), path); }

// ---------------------------------------------------------------------------
// Synthetic corpus

void validate(const SynthConfig& c) {
  auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCategory::Usage, std::string(name) + " must be in [0, 1]");
  };
  prob(c.low_attach_bias, "low_attach_bias");
  prob(c.parallel_bias, "parallel_bias");
  prob(c.object_rate, "object_rate");
  prob(c.pp_rate, "pp_rate");
  prob(c.det_rate, "det_rate");
  prob(c.adj_rate, "adj_rate");
  prob(c.subject_pp_rate, "subject_pp_rate");
  prob(c.np_coord_rate, "np_coord_rate");
  prob(c.vp_coord_rate, "vp_coord_rate");
  prob(c.preference_rate, "preference_rate");
  if (c.max_length < 3) throw Error(ErrorCategory::Usage, "max_length must be >= 3");
  if (c.sentences < 0) throw Error(ErrorCategory::Usage, "sentence count must be >= 0");
  if (c.max_pps < 0) throw Error(ErrorCategory::Usage, "max_pps must be >= 0");
  if (c.nouns < 1 || c.verbs < 1 || c.adjectives < 1) throw Error(ErrorCategory::Usage, "vocabulary sizes must be >= 1");
  if (c.prepositions.empty()) throw Error(ErrorCategory::Usage, "need at least one preposition");
  if (!(c.zipf >= 0.0)) throw Error(ErrorCategory::Usage, "zipf exponent must be >= 0");
  for (const auto& p : c.preferences)
    if (!(p.weight > 0.0)) throw Error(ErrorCategory::Usage, "preference weights must be > 0");
}

namespace {

class Zipf {
 public:
  Zipf(int n, double s) {
    double acc = 0.0;
    for (int r = 1; r <= n; ++r) cum_.push_back(acc += 1.0 / std::pow(static_cast<double>(r), s));
  }
  int operator()(std::mt19937_64& g) const {
    double u = rng::uniform01(g) * cum_.back();
    auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cum_.begin(), static_cast<std::ptrdiff_t>(cum_.size()) - 1));
  }

 private:
  std::vector<double> cum_;
};

std::size_t weighted(std::mt19937_64& g, const std::vector<double>& w) {
  double total = 0.0;
  for (double x : w) total += x;
  double u = rng::uniform01(g) * total;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0.0) continue;
    if (u < w[i]) return i;
    u -= w[i];
  }
  for (std::size_t i = w.size(); i-- > 0;)
    if (w[i] > 0.0) return i;
  return 0;
}

struct GenNode {
  CategoryId cat;
  RuleId rule;
  std::vector<int> kids;
  int parent = -1;
  int token = -1;  // preterminals
  int head_token = -1;
};

class Generator {
 public:
  Generator(const SynthConfig& cfg, const Grammar& g)
      : cfg_(cfg), g_(g), rng_(cfg.seed), nouns_(cfg.nouns, cfg.zipf), verbs_(cfg.verbs, cfg.zipf),
        adjs_(cfg.adjectives, cfg.zipf) {
    for (const char* name : {"S", "NP", "VP", "PP", "N", "V", "P", "D", "A", "C"}) {
      auto c = g.find_category(name);
      cats_[name] = c ? *c : CategoryId{};
    }
    require("S -> NP VP");
    require("NP -> N");
    require("VP -> V");
    if (cfg.max_pps > 0 && cfg.pp_rate > 0.0) {
      require("PP -> P NP");
      require("NP -> NP PP");
      require("VP -> VP PP");
    }
    if (cfg.subject_pp_rate > 0.0) {
      require("PP -> P NP");
      require("NP -> NP PP");
    }
    if (cfg.object_rate > 0.0) require("VP -> V NP");
    if (cfg.det_rate > 0.0) require("NP -> D N");
    if (cfg.adj_rate > 0.0) require("NP -> A N");
    if (cfg.det_rate > 0.0 && cfg.adj_rate > 0.0) require("NP -> D A N");
    if (cfg.np_coord_rate > 0.0) require("NP -> NP C NP");
    if (cfg.vp_coord_rate > 0.0) require("VP -> VP C VP");
    for (const auto& [name, c] : cats_) {
      if (!c.valid() || !g.category(c).preterminal) continue;
      auto tag = g.tag_for(c);
      if (tag) tags_[name] = *tag;
    }
  }

  Tree sentence(SynthStats& stats) {
    reset();
    int subj = base_np();
    if (cfg_.subject_pp_rate > 0.0 && rng::bernoulli(rng_, cfg_.subject_pp_rate)) {
      std::string prep = word_prep();
      int pp = make_pp(std::move(prep), noun_word());
      subj = node("NP", {subj, pp});
    }
    if (cfg_.vp_coord_rate > 0.0 && rng::bernoulli(rng_, cfg_.vp_coord_rate)) return coordinated(subj, stats);
    int vp = simple_vp();
    root_ = node("S", {subj, vp});
    add_pps(stats);
    return finish();
  }

 private:
  void require(const char* sig) {
    if (!g_.find_rule(sig))
      throw Error(ErrorCategory::Usage, std::string("grammar cannot produce the requested structure: no rule ") + sig);
  }

  void reset() {
    nodes_.clear();
    tokens_.clear();
    root_ = -1;
  }

  CategoryId cat(const char* name) const {
    auto it = cats_.find(name);
    if (it == cats_.end() || !it->second.valid())
      throw Error(ErrorCategory::Usage, std::string("grammar has no category ") + name);
    return it->second;
  }

  int leaf(const char* pre, std::string word) {
    auto it = tags_.find(pre);
    if (it == tags_.end()) throw Error(ErrorCategory::Usage, std::string("no lexicon tag for ") + pre);
    GenNode n;
    n.cat = cat(pre);
    n.token = static_cast<int>(tokens_.size());
    n.head_token = n.token;
    tokens_.push_back(Token{std::move(word), it->second});
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  int node(const char* lhs, std::vector<int> kids) {
    std::vector<CategoryId> rhs;
    for (int k : kids) rhs.push_back(nodes_[static_cast<std::size_t>(k)].cat);
    auto rule = g_.find_rule(cat(lhs), rhs);
    if (!rule) {
      std::string sig = std::string(lhs) + " ->";
      for (CategoryId c : rhs) sig += " " + g_.name(c);
      throw Error(ErrorCategory::Usage, "grammar cannot produce the requested structure: no rule " + sig);
    }
    GenNode n;
    n.cat = cat(lhs);
    n.rule = *rule;
    n.head_token = nodes_[static_cast<std::size_t>(kids[g_.rule(*rule).head_index])].head_token;
    n.kids = std::move(kids);
    const int id = static_cast<int>(nodes_.size());
    for (int k : n.kids) nodes_[static_cast<std::size_t>(k)].parent = id;
    nodes_.push_back(std::move(n));
    return id;
  }

  std::string noun_word() { return "n" + std::to_string(nouns_(rng_)); }
  std::string verb_word() { return "v" + std::to_string(verbs_(rng_)); }
  std::string word_prep() { return cfg_.prepositions[rng::bounded(rng_, cfg_.prepositions.size())]; }

  int base_np(std::string noun = {}) {
    bool det = cfg_.det_rate > 0.0 && rng::bernoulli(rng_, cfg_.det_rate);
    bool adj = cfg_.adj_rate > 0.0 && rng::bernoulli(rng_, cfg_.adj_rate);
    std::vector<int> kids;
    if (det) kids.push_back(leaf("D", rng::bernoulli(rng_, 0.5) ? "the" : "a"));
    if (adj) kids.push_back(leaf("A", "j" + std::to_string(adjs_(rng_))));
    kids.push_back(leaf("N", noun.empty() ? noun_word() : std::move(noun)));
    return node("NP", std::move(kids));
  }

  int object_np() {
    int np = base_np();
    if (cfg_.np_coord_rate > 0.0 && rng::bernoulli(rng_, cfg_.np_coord_rate)) {
      int c = leaf("C", "and");
      np = node("NP", {np, c, base_np()});
    }
    return np;
  }

  int simple_vp() {
    int v = leaf("V", verb_word());
    if (cfg_.object_rate > 0.0 && rng::bernoulli(rng_, cfg_.object_rate)) return node("VP", {v, object_np()});
    return node("VP", {v});
  }

  int make_pp(std::string prep, std::string noun) {
    int p = leaf("P", std::move(prep));
    return node("PP", {p, base_np(std::move(noun))});
  }

  // NP and VP nodes on the right edge of the predicate, highest first.
  std::vector<int> sites() const {
    std::vector<int> out;
    int n = nodes_[static_cast<std::size_t>(root_)].kids.back();
    const CategoryId np = cats_.at("NP"), vp = cats_.at("VP");
    while (nodes_[static_cast<std::size_t>(n)].token < 0) {
      const GenNode& x = nodes_[static_cast<std::size_t>(n)];
      if (x.cat == np || x.cat == vp) out.push_back(n);
      n = x.kids.back();
    }
    return out;
  }

  const std::string& head_of(int n) const {
    return tokens_[static_cast<std::size_t>(nodes_[static_cast<std::size_t>(n)].head_token)].surface;
  }

  void attach(int site, int pp) {
    const int parent = nodes_[static_cast<std::size_t>(site)].parent;
    const char* lhs = nodes_[static_cast<std::size_t>(site)].cat == cats_.at("NP") ? "NP" : "VP";
    int y = node(lhs, {site, pp});
    nodes_[static_cast<std::size_t>(y)].parent = parent;
    for (int& k : nodes_[static_cast<std::size_t>(parent)].kids)
      if (k == site) k = y;
  }

  void add_pps(SynthStats& stats) {
    if (cfg_.max_pps == 0 || cfg_.pp_rate <= 0.0) return;
    for (int k = 0; k < cfg_.max_pps; ++k) {
      if (!rng::bernoulli(rng_, cfg_.pp_rate)) break;
      if (static_cast<int>(tokens_.size()) + 4 > cfg_.max_length) break;
      add_pp(stats);
    }
  }

  void add_pp(SynthStats& stats) {
    std::vector<int> s = sites();
    std::string prep, noun;
    if (!cfg_.preferences.empty() && cfg_.preference_rate > 0.0 && rng::bernoulli(rng_, cfg_.preference_rate)) {
      std::vector<double> w;
      for (const auto& p : cfg_.preferences) {
        bool live = std::any_of(s.begin(), s.end(), [&](int n) { return head_of(n) == p.head; });
        w.push_back(live ? p.weight : 0.0);
      }
      if (std::any_of(w.begin(), w.end(), [](double x) { return x > 0.0; })) {
        const LexPreference& p = cfg_.preferences[weighted(rng_, w)];
        prep = p.slot;
        noun = p.dependent;
      }
    }
    if (prep.empty()) {
      prep = word_prep();
      noun = noun_word();
    }
    std::vector<double> w(s.size(), 0.0);
    bool lexical = false;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (const auto& p : cfg_.preferences)
        if (p.head == head_of(s[i]) && p.slot == prep && p.dependent == noun) {
          w[i] += p.weight;
          lexical = true;
        }
    int pp = make_pp(prep, noun);
    ++stats.pps;
    int site;
    if (lexical) {
      ++stats.lexical_decisions;
      site = s[weighted(rng_, w)];
    } else if (s.size() == 1) {
      ++stats.forced;
      site = s[0];
    } else {
      ++stats.bias_decisions;
      if (rng::bernoulli(rng_, cfg_.low_attach_bias)) {
        ++stats.bias_low;
        site = s.back();
      } else {
        site = s[rng::bounded(rng_, s.size() - 1)];
      }
    }
    attach(site, pp);
  }

  int span_length(int n) const {
    const GenNode& x = nodes_[static_cast<std::size_t>(n)];
    if (x.token >= 0) return 1;
    int sum = 0;
    for (int k : x.kids) sum += span_length(k);
    return sum;
  }

  Tree coordinated(int subj, SynthStats& stats) {
    ++stats.coord_sentences;
    const bool want_equal = rng::bernoulli(rng_, cfg_.parallel_bias);
    const std::size_t keep_nodes = nodes_.size(), keep_tokens = tokens_.size();
    constexpr int kTries = 200;
    for (int attempt = 0;; ++attempt) {
      nodes_.resize(keep_nodes);
      tokens_.resize(keep_tokens);
      nodes_[static_cast<std::size_t>(subj)].parent = -1;
      SynthStats local;
      int vp1 = simple_vp();
      int c = leaf("C", "and");
      int vp2 = simple_vp();
      int vpc = node("VP", {vp1, c, vp2});
      root_ = node("S", {subj, vpc});
      add_pps(local);
      int top = nodes_[static_cast<std::size_t>(root_)].kids.back();
      while (nodes_[static_cast<std::size_t>(top)].kids.size() != 3) top = nodes_[static_cast<std::size_t>(top)].kids[0];
      const auto& kids = nodes_[static_cast<std::size_t>(top)].kids;
      const bool equal = span_length(kids[0]) == span_length(kids[2]);
      if (equal == want_equal || attempt + 1 == kTries) {
        if (equal != want_equal) ++stats.parallel_fallbacks;
        if (equal) ++stats.parallel_sentences;
        stats.pps += local.pps;
        stats.forced += local.forced;
        stats.bias_decisions += local.bias_decisions;
        stats.bias_low += local.bias_low;
        stats.lexical_decisions += local.lexical_decisions;
        return finish();
      }
    }
  }

  void emit(int n, Tree& t) const {
    const GenNode& x = nodes_[static_cast<std::size_t>(n)];
    const int index = static_cast<int>(t.nodes.size());
    t.nodes.emplace_back();
    if (x.token >= 0) {
      TreeNode& out = t.nodes.back();
      out.category = x.cat;
      out.begin = x.token;
      out.end = x.token + 1;
      return;
    }
    std::vector<int> kids;
    for (int k : x.kids) {
      kids.push_back(static_cast<int>(t.nodes.size()));
      emit(k, t);
    }
    TreeNode& out = t.nodes[static_cast<std::size_t>(index)];
    out.category = x.cat;
    out.rule = x.rule;
    out.begin = t.nodes[static_cast<std::size_t>(kids.front())].begin;
    out.end = t.nodes[static_cast<std::size_t>(kids.back())].end;
    out.children = std::move(kids);
  }

  Tree finish() const {
    Tree t;
    t.tokens = tokens_;
    emit(root_, t);
    return t;
  }

  const SynthConfig& cfg_;
  const Grammar& g_;
  std::mt19937_64 rng_;
  Zipf nouns_, verbs_, adjs_;
  std::map<std::string, CategoryId> cats_;
  std::map<std::string, std::string> tags_;
  std::vector<GenNode> nodes_;
  std::vector<Token> tokens_;
  int root_ = -1;
};

}  // namespace

Treebank generate_synthetic(const SynthConfig& cfg, const Grammar& g, SynthStats* stats) {
  validate(cfg);
  if (g.name(g.start()) != "S") throw Error(ErrorCategory::Usage, "generator needs start symbol S");
  SynthStats local;
  Generator gen(cfg, g);
  Treebank tb;
  tb.trees.reserve(static_cast<std::size_t>(cfg.sentences));
  for (int i = 0; i < cfg.sentences; ++i) tb.trees.push_back(gen.sentence(local));
  if (stats) *stats = local;
  return tb;
}

}  // namespace disamb
