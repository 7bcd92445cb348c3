#include "disamb/cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "disamb/corpus.h"
#include "disamb/error.h"
#include "disamb/eval.h"
#include "disamb/ranker.h"
#include "text.h"

namespace disamb {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Options {
  std::string grammar;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::size_t cap = kDefaultParseCap;

  std::string lex, len, pcfg, lemmas;
  double len_alpha = 0.0;
  int len_max = 40;

  std::string treebank, triples, input, test, report, rule, goal, preferences;
  std::string strategy = "backoff-syn";
  std::vector<std::string> methods{"backoff-syn", "backoff-pcfg", "product", "det-rap"};
  double eta = 0.0, tau = 0.0;
  std::string cascade = "three";
  std::size_t min_parses = 1;

  SynthConfig synth;
};

// Records what a run read and wrote.
class Manifest {
 public:
  Manifest(std::string command, int argc, const char* const* argv) {
    j_["tool"] = "disamb";
    j_["version"] = kVersion;
    j_["command"] = std::move(command);
    std::vector<std::string> args(argv, argv + argc);
    j_["argv"] = args;
    j_["inputs"] = Json::object();
  }

  // Existence is checked up front, before any work is done.
  void input(const std::string& role, const std::string& path, ErrorCategory missing = ErrorCategory::Io) {
    if (path.empty()) return;
    if (!text::file_exists(path)) throw Error(missing, role + " file not found: " + path);
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(text::fnv1a(text::read_file(path))));
    j_["inputs"][role] = Json{{"path", path}, {"fnv1a", hex}};
  }

  Json& operator[](const char* key) { return j_[key]; }

  void write(const std::string& out) const { text::write_file(out + ".manifest.json", j_.dump(2) + "\n"); }

 private:
  Json j_;
};

Grammar need_grammar(const Options& o, Manifest& m) {
  if (o.grammar.empty()) throw Error(ErrorCategory::Usage, "no grammar given (--grammar or DISAMB_GRAMMAR)");
  m.input("grammar", o.grammar);
  return load_grammar(o.grammar);
}

void need_out(const Options& o) {
  if (o.out.empty()) throw Error(ErrorCategory::Usage, "no output path given (--out)");
}

Treebank need_treebank(const std::string& path, const char* role, const Grammar& g, Manifest& m) {
  if (path.empty()) throw Error(ErrorCategory::Usage, std::string("no ") + role + " given");
  m.input(role, path);
  return read_treebank(path, g);
}

struct LoadedModels {
  std::optional<LexModel> lex;
  std::optional<LenModel> len;
  std::optional<PcfgModel> pcfg;
  std::optional<LemmaTable> lemmas;

  Models view() const {
    return Models{lex ? &*lex : nullptr, len ? &*len : nullptr, pcfg ? &*pcfg : nullptr, lemmas ? &*lemmas : nullptr};
  }
};

LoadedModels load_models(const Options& o, Manifest& m) {
  LoadedModels lm;
  m.input("lex", o.lex, ErrorCategory::ModelMissing);
  m.input("len", o.len, ErrorCategory::ModelMissing);
  m.input("pcfg", o.pcfg, ErrorCategory::ModelMissing);
  m.input("lemmas", o.lemmas);
  if (!o.lex.empty()) lm.lex = load_lex_model(o.lex);
  if (!o.len.empty()) {
    lm.len = load_len_model(o.len);
    lm.len->set_smoothing({o.len_alpha, o.len_max});
  }
  if (!o.pcfg.empty()) lm.pcfg = load_pcfg_model(o.pcfg);
  if (!o.lemmas.empty()) lm.lemmas = load_lemmas(o.lemmas);
  m["models"] = Json{{"lex", o.lex}, {"len", o.len}, {"pcfg", o.pcfg}, {"lemmas", o.lemmas}, {"len_alpha", o.len_alpha},
                     {"len_max_length", o.len_max}};
  return lm;
}

RankerConfig ranker_config(const Options& o) {
  RankerConfig c;
  c.eta = o.eta;
  c.tau = o.tau;
  c.seed = o.seed;
  if (o.cascade == "two") c.cascade = Cascade::TwoStage;
  else if (o.cascade != "three") throw Error(ErrorCategory::Usage, "--cascade must be 'three' or 'two'");
  validate(c);
  return c;
}

struct SentenceLine {
  std::size_t line = 0;
  std::vector<Token> tokens;
};

std::vector<SentenceLine> read_sentences(const std::string& path) {
  std::vector<SentenceLine> out;
  const std::string content = text::read_file(path);
  std::size_t no = 0;
  for (std::string_view raw : text::lines(content)) {
    ++no;
    std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    try {
      out.push_back({no, parse_tagged_sentence(line)});
    } catch (const Error& e) {
      throw FormatError(path, no, e.what());
    }
  }
  return out;
}

// Runs fn(i) for i in [0, n) on `jobs` threads; the first exception wins.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<Interpretation> readings(const Grammar& g, const SentenceLine& s, const Options& o, const std::string& src) {
  try {
    std::optional<CategoryId> goal;
    if (!o.goal.empty()) {
      goal = g.find_category(o.goal);
      if (!goal) throw Error(ErrorCategory::Usage, "unknown goal category " + o.goal);
    }
    return enumerate(parse(g, s.tokens, goal), o.cap);
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    if (e.category() == ErrorCategory::Usage) throw;
    throw Error(e.category(), src + ":" + std::to_string(s.line) + ": " + e.what());
  }
}

void cmd_train(const std::string& kind, const Options& o, Manifest& m) {
  need_out(o);
  Grammar g = need_grammar(o, m);
  Treebank tb;
  if (kind == "lex" && !o.triples.empty()) {
    m.input("triples", o.triples);
    save_model(o.out, fit_lex(parse_triple_dump(text::read_file(o.triples), o.triples)));
  } else {
    tb = need_treebank(o.treebank, "treebank", g, m);
    if (kind == "lex") {
      m.input("lemmas", o.lemmas);
      LemmaTable lemmas = o.lemmas.empty() ? LemmaTable{} : load_lemmas(o.lemmas);
      save_model(o.out, fit_lex(treebank_triples(tb, g, lemmas)));
    } else if (kind == "len") {
      save_model(o.out, fit_len(tb.trees, g));
    } else {
      save_model(o.out, fit_pcfg(tb.trees, g));
    }
  }
  m["output"] = o.out;
}

std::vector<LexPreference> read_preferences(const std::string& path) {
  std::vector<LexPreference> out;
  const std::string content = text::read_file(path);
  std::size_t no = 0;
  for (std::string_view raw : text::lines(content)) {
    ++no;
    std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto f = text::split(line, '\t');
    if (f.size() != 4) throw FormatError(path, no, "expected head<TAB>slot<TAB>dependent<TAB>weight");
    LexPreference p{std::string(f[0]), std::string(f[1]), std::string(f[2]), 0.0};
    try {
      std::size_t used = 0;
      p.weight = std::stod(std::string(f[3]), &used);
      if (used != f[3].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw FormatError(path, no, "bad weight '" + std::string(f[3]) + "'");
    }
    out.push_back(std::move(p));
  }
  return out;
}

void cmd_gen(Options o, Manifest& m, std::ostream& out) {
  need_out(o);
  Grammar g = need_grammar(o, m);
  o.synth.seed = o.seed;
  if (!o.preferences.empty()) {
    m.input("preferences", o.preferences);
    o.synth.preferences = read_preferences(o.preferences);
  }
  SynthStats stats;
  Treebank tb = generate_synthetic(o.synth, g, &stats);
  write_treebank(o.out, tb, g);
  const SynthConfig& c = o.synth;
  m["config"] = Json{{"seed", c.seed},
                     {"sentences", c.sentences},
                     {"max_length", c.max_length},
                     {"nouns", c.nouns},
                     {"verbs", c.verbs},
                     {"adjectives", c.adjectives},
                     {"prepositions", c.prepositions},
                     {"zipf", c.zipf},
                     {"object_rate", c.object_rate},
                     {"pp_rate", c.pp_rate},
                     {"max_pps", c.max_pps},
                     {"det_rate", c.det_rate},
                     {"adj_rate", c.adj_rate},
                     {"subject_pp_rate", c.subject_pp_rate},
                     {"np_coord_rate", c.np_coord_rate},
                     {"vp_coord_rate", c.vp_coord_rate},
                     {"low_attach_bias", c.low_attach_bias},
                     {"parallel_bias", c.parallel_bias},
                     {"preference_rate", c.preference_rate},
                     {"preferences", c.preferences.size()}};
  m["stats"] = Json{{"pps", stats.pps},
                    {"forced", stats.forced},
                    {"bias_decisions", stats.bias_decisions},
                    {"bias_low", stats.bias_low},
                    {"lexical_decisions", stats.lexical_decisions},
                    {"coord_sentences", stats.coord_sentences},
                    {"parallel_sentences", stats.parallel_sentences},
                    {"parallel_fallbacks", stats.parallel_fallbacks}};
  m["seed"] = o.seed;
  m["output"] = o.out;
  out << "wrote " << tb.trees.size() << " trees to " << o.out << "\n";
}

void cmd_parse(const Options& o, Manifest& m) {
  need_out(o);
  Grammar g = need_grammar(o, m);
  if (o.input.empty()) throw Error(ErrorCategory::Usage, "no input sentences given (--input)");
  m.input("input", o.input);
  LemmaTable lemmas;
  if (!o.lemmas.empty()) {
    m.input("lemmas", o.lemmas);
    lemmas = load_lemmas(o.lemmas);
  }
  auto sentences = read_sentences(o.input);
  std::vector<std::string> chunks(sentences.size());
  parallel_for(sentences.size(), o.jobs, [&](std::size_t i) {
    auto all = readings(g, sentences[i], o, o.input);
    std::ostringstream s;
    s << "sentence\t" << i << "\t" << all.size() << "\t" << format_tagged_sentence(sentences[i].tokens) << "\n";
    for (std::size_t j = 0; j < all.size(); ++j) {
      s << "parse\t" << i << "\t" << j << "\t" << to_bracketed(all[j].tree, g) << "\n";
      for (const auto& a : all[j].attachments)
        s << "attach\t" << i << "\t" << j << "\t" << g.signature(a.rule) << "\t" << to_string(a.child_lengths) << "\n";
      for (const auto& t : extract_triples(all[j].tree, g, lemmas))
        s << "triple\t" << i << "\t" << j << "\t" << t.head << "\t" << to_string(t.head_kind) << "\t" << t.slot << "\t"
          << t.dependent << "\n";
    }
    chunks[i] = s.str();
  });
  std::string body = "#disamb-parse v1\n";
  for (const auto& c : chunks) body += c;
  text::write_file(o.out, body);
  m["jobs"] = o.jobs;
  m["cap"] = o.cap;
  m["goal"] = o.goal;
  m["output"] = o.out;
}

void cmd_rank(const Options& o, Manifest& m, std::ostream& out) {
  need_out(o);
  Grammar g = need_grammar(o, m);
  if (o.input.empty()) throw Error(ErrorCategory::Usage, "no input sentences given (--input)");
  m.input("input", o.input);
  auto strategy = parse_strategy(o.strategy);
  if (!strategy) throw Error(ErrorCategory::Usage, "unknown strategy '" + o.strategy + "'");
  RankerConfig cfg = ranker_config(o);
  LoadedModels lm = load_models(o, m);
  Models view = lm.view();
  for (const auto& need : required_models(*strategy)) {
    bool ok = (need == "lex" && view.lex) || (need == "len" && view.len) || (need == "pcfg" && view.pcfg);
    if (!ok) throw Error(ErrorCategory::ModelMissing, "strategy " + o.strategy + " needs a " + need + " model (--" + need + ")");
  }
  auto sentences = read_sentences(o.input);
  std::vector<std::string> chunks(sentences.size());
  parallel_for(sentences.size(), o.jobs, [&](std::size_t i) {
    auto all = readings(g, sentences[i], o, o.input);
    auto cands = make_candidates(all, g, view);
    RankerConfig c = cfg;
    c.seed = sentence_seed(cfg.seed, i);
    RankOutcome r = rank(cands, *strategy, c);
    std::ostringstream s;
    s << "sentence\t" << i << "\t" << all.size() << "\t" << to_string(r.top_stage) << "\t"
      << format_tagged_sentence(sentences[i].tokens) << "\n";
    for (std::size_t k = 0; k < r.order.size(); ++k) {
      const Scores& sc = cands[r.order[k]].scores;
      s << "rank\t" << i << "\t" << k + 1 << "\t" << num(sc.lex3) << "\t" << num(sc.lex2) << "\t" << num(sc.syn) << "\t"
        << num(sc.pcfg) << "\t" << (k < r.stages.size() ? std::string(to_string(r.stages[k])) : std::string("-"))
        << "\t" << cands[r.order[k]].key << "\n";
    }
    chunks[i] = s.str();
  });
  std::string body = "#disamb-rank v1\n";
  for (const auto& c : chunks) body += c;
  text::write_file(o.out, body);
  m["strategy"] = o.strategy;
  m["eta"] = o.eta;
  m["tau"] = o.tau;
  m["cascade"] = o.cascade;
  m["seed"] = o.seed;
  m["jobs"] = o.jobs;
  m["cap"] = o.cap;
  m["goal"] = o.goal;
  m["output"] = o.out;
  out << "ranked " << sentences.size() << " sentences into " << o.out << "\n";
}

void cmd_eval(const Options& o, Manifest& m, std::ostream& out) {
  need_out(o);
  Grammar g = need_grammar(o, m);
  for (const auto& name : o.methods)
    if (!parse_strategy(name)) throw Error(ErrorCategory::Usage, "unknown method '" + name + "'");
  RankerConfig cfg = ranker_config(o);
  LoadedModels lm = load_models(o, m);
  if (!lm.lex && !lm.len && !lm.pcfg) throw Error(ErrorCategory::ModelMissing, "eval needs at least one model (--lex, --len, --pcfg)");
  Treebank test = need_treebank(o.test, "test treebank", g, m);
  EvalOptions eo;
  eo.jobs = o.jobs;
  eo.cap = o.cap;
  eo.min_parses = o.min_parses;
  EvalReport r = compare_methods(test.trees, g, o.methods, lm.view(), cfg, eo);
  text::write_file(o.out, format_report_tsv(r));
  out << format_report_table(r);
  m["methods"] = o.methods;
  m["eta"] = o.eta;
  m["tau"] = o.tau;
  m["cascade"] = o.cascade;
  m["seed"] = o.seed;
  m["jobs"] = o.jobs;
  m["cap"] = o.cap;
  m["min_parses"] = o.min_parses;
  m["output"] = o.out;
}

void cmd_plot_lengths(const Options& o, Manifest& m) {
  need_out(o);
  if (o.len.empty()) throw Error(ErrorCategory::ModelMissing, "plot-data lengths needs a len model (--len)");
  m.input("len", o.len, ErrorCategory::ModelMissing);
  LenModel len = load_len_model(o.len);
  std::string body = "rule\tposition\tlength\tprobability\n";
  bool found = false;
  for (const auto& [sig, rc] : len.rules()) {
    if (!o.rule.empty() && sig != o.rule) continue;
    found = true;
    for (std::size_t p = 0; p < rc.arity; ++p)
      for (const auto& [l, prob] : len.marginal(sig, p))
        body += sig + "\t" + std::to_string(p + 1) + "\t" + std::to_string(l) + "\t" + num(prob) + "\n";
  }
  if (!o.rule.empty() && !found) throw Error(ErrorCategory::Data, "rule '" + o.rule + "' not in the model");
  text::write_file(o.out, body);
  m["rule"] = o.rule;
  m["output"] = o.out;
}

void cmd_plot_accuracy(const Options& o, Manifest& m) {
  need_out(o);
  if (o.report.empty()) throw Error(ErrorCategory::Usage, "no eval report given (--report)");
  m.input("report", o.report);
  text::write_file(o.out, accuracy_plot_rows(text::read_file(o.report), o.report));
  m["output"] = o.out;
}

void add_output(CLI::App* c, Options& o) { c->add_option("-o,--out", o.out, "Output file")->required(); }

void add_grammar(CLI::App* c, Options& o) {
  c->add_option("-g,--grammar", o.grammar, "Grammar file")->envname("DISAMB_GRAMMAR");
}

void add_models(CLI::App* c, Options& o) {
  c->add_option("--lex", o.lex, "Lexical model file")->envname("DISAMB_LEX_MODEL");
  c->add_option("--len", o.len, "Length model file")->envname("DISAMB_LEN_MODEL");
  c->add_option("--pcfg", o.pcfg, "PCFG model file")->envname("DISAMB_PCFG_MODEL");
  c->add_option("--lemmas", o.lemmas, "Lemma table (surface<TAB>lemma)")->envname("DISAMB_LEMMAS");
  c->add_option("--len-alpha", o.len_alpha, "Add-alpha smoothing for length probabilities (0 = off)");
  c->add_option("--len-max-length", o.len_max, "Parent length bound used by --len-alpha");
}

void add_ranking(CLI::App* c, Options& o) {
  c->add_option("--eta", o.eta, "Threshold on lexical likelihood differences");
  c->add_option("--tau", o.tau, "Threshold on syntactic likelihood differences");
  c->add_option("--cascade", o.cascade, "three (lex3, lex2, syn) or two (lex3, syn)");
  c->add_option("--seed", o.seed, "Seed for tie breaking");
  c->add_option("-j,--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  c->add_option("--cap", o.cap, "Maximum readings per sentence")->check(CLI::PositiveNumber);
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Usage: return kExitUsage;
    case ErrorCategory::Internal: return kExitInternal;
    default: return kExitData;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Structural disambiguation with lexical and length probabilities", "disamb"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* tl = app.add_subcommand("train-lex", "Count dependency triples into a lexical model");
  add_grammar(tl, o);
  add_output(tl, o);
  tl->add_option("-t,--treebank", o.treebank, "Training treebank");
  tl->add_option("--triples", o.triples, "Train from a triple dump instead of a treebank");
  tl->add_option("--lemmas", o.lemmas, "Lemma table")->envname("DISAMB_LEMMAS");

  auto* tn = app.add_subcommand("train-len", "Count child-length tuples into a length model");
  add_grammar(tn, o);
  add_output(tn, o);
  tn->add_option("-t,--treebank", o.treebank, "Training treebank")->required();

  auto* tp = app.add_subcommand("train-pcfg", "Count rule applications into a PCFG model");
  add_grammar(tp, o);
  add_output(tp, o);
  tp->add_option("-t,--treebank", o.treebank, "Training treebank")->required();

  auto* gen = app.add_subcommand("gen", "Generate a synthetic treebank");
  add_grammar(gen, o);
  add_output(gen, o);
  SynthConfig& s = o.synth;
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("-n,--sentences", s.sentences, "Number of sentences");
  gen->add_option("--max-length", s.max_length, "Maximum sentence length");
  gen->add_option("--nouns", s.nouns, "Noun vocabulary size");
  gen->add_option("--verbs", s.verbs, "Verb vocabulary size");
  gen->add_option("--adjectives", s.adjectives, "Adjective vocabulary size");
  gen->add_option("--prepositions", s.prepositions, "Prepositions")->delimiter(',');
  gen->add_option("--zipf", s.zipf, "Zipf exponent of word frequencies");
  gen->add_option("--object-rate", s.object_rate, "Share of transitive verb phrases");
  gen->add_option("--pp-rate", s.pp_rate, "Chance of adding another PP");
  gen->add_option("--max-pps", s.max_pps, "Maximum PPs after the verb");
  gen->add_option("--det-rate", s.det_rate, "Determiner rate");
  gen->add_option("--adj-rate", s.adj_rate, "Adjective rate");
  gen->add_option("--subject-pp-rate", s.subject_pp_rate, "Rate of PPs inside the subject");
  gen->add_option("--np-coord-rate", s.np_coord_rate, "Rate of coordinated objects");
  gen->add_option("--vp-coord-rate", s.vp_coord_rate, "Rate of coordinated verb phrases");
  gen->add_option("--low-attach-bias", s.low_attach_bias, "Probability that a PP attaches to the nearest site");
  gen->add_option("--parallel-bias", s.parallel_bias, "Probability that conjuncts have equal length");
  gen->add_option("--preferences", o.preferences, "Lexical preference table (head slot dependent weight)");
  gen->add_option("--preference-rate", s.preference_rate, "Share of PPs drawn from the preference table");

  auto* ps = app.add_subcommand("parse", "Dump every reading of each tagged sentence");
  add_grammar(ps, o);
  add_output(ps, o);
  ps->add_option("-i,--input", o.input, "Tagged sentences, one per line (word/TAG ...)")->required();
  ps->add_option("--lemmas", o.lemmas, "Lemma table")->envname("DISAMB_LEMMAS");
  ps->add_option("--goal", o.goal, "Goal category (default: start symbol)");
  ps->add_option("-j,--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  ps->add_option("--cap", o.cap, "Maximum readings per sentence")->check(CLI::PositiveNumber);

  auto* rk = app.add_subcommand("rank", "Rank the readings of each tagged sentence");
  add_grammar(rk, o);
  add_output(rk, o);
  add_models(rk, o);
  add_ranking(rk, o);
  rk->add_option("-i,--input", o.input, "Tagged sentences, one per line")->required();
  rk->add_option("-s,--strategy", o.strategy, "backoff-syn, backoff-pcfg, product, syn-only or det-rap");
  rk->add_option("--goal", o.goal, "Goal category (default: start symbol)");

  auto* ev = app.add_subcommand("eval", "Number-n accuracy and stage breakdown on a test treebank");
  add_grammar(ev, o);
  add_output(ev, o);
  add_models(ev, o);
  add_ranking(ev, o);
  ev->add_option("-t,--test", o.test, "Test treebank")->required();
  ev->add_option("-m,--methods", o.methods, "Comma-separated strategies")->delimiter(',');
  ev->add_option("--min-parses", o.min_parses, "Only score sentences with at least this many readings");

  auto* pd = app.add_subcommand("plot-data", "Plot-ready TSV");
  pd->require_subcommand(1);
  auto* pl = pd->add_subcommand("lengths", "Length probability against length, per rule and child position");
  add_output(pl, o);
  pl->add_option("--len", o.len, "Length model")->envname("DISAMB_LEN_MODEL");
  pl->add_option("--rule", o.rule, "Only this rule, e.g. 'NP -> NP PP'");
  auto* pa = pd->add_subcommand("accuracy", "n, accuracy, method rows from an eval report");
  add_output(pa, o);
  pa->add_option("--report", o.report, "Report written by eval")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    std::string msg = e.what();
    for (char& ch : msg)
      if (ch == '\n') ch = ' ';
    err << "error[" << to_string(ErrorCategory::Usage) << "]: " << msg << "\n";
    return kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    std::string name = sub->get_name();
    if (name == "plot-data") name += " " + sub->get_subcommands().front()->get_name();
    Manifest m(name, argc, argv);
    if (name == "train-lex") cmd_train("lex", o, m);
    else if (name == "train-len") cmd_train("len", o, m);
    else if (name == "train-pcfg") cmd_train("pcfg", o, m);
    else if (name == "gen") cmd_gen(o, m, out);
    else if (name == "parse") cmd_parse(o, m);
    else if (name == "rank") cmd_rank(o, m, out);
    else if (name == "eval") cmd_eval(o, m, out);
    else if (name == "plot-data lengths") cmd_plot_lengths(o, m);
    else if (name == "plot-data accuracy") cmd_plot_accuracy(o, m);
    else throw Error(ErrorCategory::Internal, "unhandled command " + name);
    m["grammar"] = o.grammar;
    m.write(o.out);
    return kExitOk;
  } catch (const Error& e) {
    err << "error[" << to_string(e.category()) << "]: " << e.what() << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "error[" << to_string(ErrorCategory::Internal) << "]: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace disamb
