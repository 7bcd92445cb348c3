#include "disamb/eval.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "disamb/error.h"
#include "text.h"

namespace disamb {

double number_n_accuracy(std::span<const SentenceResult> results, std::size_t n) {
  if (results.empty()) throw Error(ErrorCategory::Data, "accuracy over an empty test set");
  std::size_t hit = 0;
  for (const auto& r : results) hit += r.gold_rank >= 1 && r.gold_rank <= n;
  return static_cast<double>(hit) / static_cast<double>(results.size());
}

std::vector<BreakdownRow> breakdown(std::span<const SentenceResult> results) {
  std::map<Stage, BreakdownRow> rows;
  for (const auto& r : results) {
    BreakdownRow& row = rows[r.stage];
    row.stage = r.stage;
    (r.gold_rank == 1 ? row.correct : row.incorrect) += 1;
  }
  std::vector<BreakdownRow> out;
  for (auto& [s, row] : rows) out.push_back(row);
  return out;
}

namespace {

struct Prepared {
  enum class Status { Ok, Excluded, OverCap, Filtered } status = Status::Ok;
  std::size_t parses = 0;
  std::vector<SentenceResult> per_method;
};

Prepared evaluate_one(const Tree& gold, std::size_t index, const Grammar& g, const std::vector<Strategy>& methods,
                      const Models& models, const RankerConfig& cfg, const EvalOptions& opts) {
  Prepared p;
  ParseForest forest = parse(g, gold.tokens);
  std::vector<Interpretation> interps;
  try {
    interps = enumerate(forest, opts.cap);
  } catch (const Error& e) {
    if (e.category() != ErrorCategory::CapExceeded) throw;
    p.status = Prepared::Status::OverCap;
    return p;
  }
  p.parses = interps.size();
  std::optional<std::size_t> gold_at;
  for (std::size_t i = 0; i < interps.size(); ++i)
    if (same_tree(interps[i].tree, gold)) gold_at = i;
  if (!gold_at) {
    p.status = Prepared::Status::Excluded;
    return p;
  }
  if (interps.size() < opts.min_parses) {
    p.status = Prepared::Status::Filtered;
    return p;
  }
  std::vector<Candidate> cands = make_candidates(interps, g, models);
  RankerConfig c = cfg;
  c.seed = sentence_seed(cfg.seed, index);
  for (Strategy s : methods) {
    RankOutcome r = rank(cands, s, c);
    SentenceResult sr;
    sr.index = index;
    sr.parses = interps.size();
    sr.stage = r.top_stage;
    sr.gold_rank = static_cast<std::size_t>(std::find(r.order.begin(), r.order.end(), *gold_at) - r.order.begin()) + 1;
    p.per_method.push_back(sr);
  }
  return p;
}

std::string fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

EvalReport compare_methods(std::span<const Tree> test, const Grammar& g, const std::vector<std::string>& methods,
                           const Models& models, const RankerConfig& cfg, const EvalOptions& opts) {
  validate(cfg);
  if (methods.empty()) throw Error(ErrorCategory::Usage, "no methods to evaluate");
  std::vector<Strategy> strategies;
  for (const auto& name : methods) {
    auto s = parse_strategy(name);
    if (!s) throw Error(ErrorCategory::Usage, "unknown method '" + name + "'");
    for (const auto& need : required_models(*s)) {
      bool ok = (need == "lex" && models.lex) || (need == "len" && models.len) || (need == "pcfg" && models.pcfg);
      if (!ok) throw Error(ErrorCategory::ModelMissing, "method " + name + " needs a " + need + " model");
    }
    strategies.push_back(*s);
  }

  std::vector<Prepared> prepared(test.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < test.size(); i = next++) {
      try {
        prepared[i] = evaluate_one(test[i], i, g, strategies, models, cfg, opts);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = test.size();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opts.jobs, test.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  EvalReport rep;
  rep.test_sentences = test.size();
  rep.methods.resize(strategies.size());
  for (std::size_t m = 0; m < strategies.size(); ++m) rep.methods[m].method = methods[m];
  std::size_t parse_total = 0;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    const Prepared& p = prepared[i];
    switch (p.status) {
      case Prepared::Status::Excluded: rep.excluded.push_back(i); continue;
      case Prepared::Status::OverCap: rep.over_cap.push_back(i); continue;
      case Prepared::Status::Filtered: ++rep.filtered; continue;
      case Prepared::Status::Ok: break;
    }
    ++rep.evaluated;
    parse_total += p.parses;
    rep.ambiguous += p.parses > 1;
    for (std::size_t m = 0; m < strategies.size(); ++m) rep.methods[m].sentences.push_back(p.per_method[m]);
  }
  if (rep.evaluated == 0) throw Error(ErrorCategory::Data, "no test sentence could be evaluated");
  rep.mean_parses = static_cast<double>(parse_total) / static_cast<double>(rep.evaluated);
  for (auto& mr : rep.methods) {
    for (std::size_t n = 1; n <= kMaxReportedN; ++n) mr.accuracy[n - 1] = number_n_accuracy(mr.sentences, n);
    mr.breakdown = breakdown(mr.sentences);
  }
  return rep;
}

std::string format_report_tsv(const EvalReport& r) {
  std::ostringstream out;
  out << "#disamb-eval v1\n";
  out << "summary\ttest_sentences\t" << r.test_sentences << "\n";
  out << "summary\tevaluated\t" << r.evaluated << "\n";
  out << "summary\texcluded\t" << r.excluded.size() << "\n";
  out << "summary\tover_cap\t" << r.over_cap.size() << "\n";
  out << "summary\tfiltered\t" << r.filtered << "\n";
  out << "summary\tambiguous\t" << r.ambiguous << "\n";
  out << "summary\tmean_parses\t" << fixed(r.mean_parses) << "\n";
  for (std::size_t i : r.excluded) out << "excluded\t" << i << "\n";
  for (const auto& m : r.methods)
    for (std::size_t n = 1; n <= kMaxReportedN; ++n)
      out << "accuracy\t" << m.method << "\t" << n << "\t" << fixed(m.accuracy[n - 1], 6) << "\n";
  for (const auto& m : r.methods)
    for (const auto& b : m.breakdown)
      out << "breakdown\t" << m.method << "\t" << to_string(b.stage) << "\t" << b.correct << "\t" << b.incorrect << "\t"
          << b.total() << "\n";
  for (const auto& m : r.methods)
    for (const auto& s : m.sentences)
      out << "sentence\t" << m.method << "\t" << s.index << "\t" << s.parses << "\t" << s.gold_rank << "\t"
          << to_string(s.stage) << "\n";
  return out.str();
}

std::string format_report_table(const EvalReport& r) {
  std::ostringstream out;
  out << "sentences: " << r.test_sentences << " (evaluated " << r.evaluated << ", excluded " << r.excluded.size()
      << ", over cap " << r.over_cap.size() << ", filtered " << r.filtered << ")\n";
  out << "ambiguous: " << r.ambiguous << ", mean readings " << fixed(r.mean_parses, 2) << "\n\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-14s %7s %7s %7s %7s %7s\n", "method", "n=1", "n=2", "n=3", "n=4", "n=5");
  out << buf;
  for (const auto& m : r.methods) {
    std::snprintf(buf, sizeof buf, "%-14s", m.method.c_str());
    out << buf;
    for (double a : m.accuracy) {
      std::snprintf(buf, sizeof buf, " %6.1f%%", 100.0 * a);
      out << buf;
    }
    out << '\n';
  }
  for (const auto& m : r.methods) {
    out << "\n" << m.method << " breakdown\n";
    std::snprintf(buf, sizeof buf, "  %-8s %8s %9s %6s %8s\n", "stage", "correct", "incorrect", "total", "accuracy");
    out << buf;
    std::size_t c = 0, w = 0;
    for (const auto& b : m.breakdown) {
      std::snprintf(buf, sizeof buf, "  %-8s %8zu %9zu %6zu %7.1f%%\n", std::string(to_string(b.stage)).c_str(),
                    b.correct, b.incorrect, b.total(), 100.0 * b.accuracy());
      out << buf;
      c += b.correct;
      w += b.incorrect;
    }
    std::snprintf(buf, sizeof buf, "  %-8s %8zu %9zu %6zu\n", "total", c, w, c + w);
    out << buf;
  }
  return out.str();
}

std::string accuracy_plot_rows(std::string_view report_tsv, std::string_view source) {
  const std::string src(source);
  auto all = text::lines(report_tsv);
  if (all.empty() || text::trim(all[0]) != "#disamb-eval v1") throw FormatError(src, 1, "not a disamb eval report");
  std::string out = "n\taccuracy\tmethod\n";
  for (std::size_t i = 1; i < all.size(); ++i) {
    auto f = text::split(all[i], '\t');
    if (f.empty() || f[0] != "accuracy") continue;
    if (f.size() != 4) throw FormatError(src, i + 1, "malformed accuracy row");
    out += std::string(f[2]) + "\t" + std::string(f[3]) + "\t" + std::string(f[1]) + "\n";
  }
  return out;
}

}  // namespace disamb
