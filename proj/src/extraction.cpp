#include "hjcs/extraction.hpp"

#include <algorithm>
#include <memory>
#include <set>

#include "hjcs/errors.hpp"
#include "hjcs/hales_jewett.hpp"
#include "hjcs/span.hpp"

namespace hjcs {

std::string to_string(ExtractMode mode) { return mode == ExtractMode::kDirect ? "direct" : "proof-guided"; }

ExtractMode parse_extract_mode(std::string_view text) {
  if (text == "direct") return ExtractMode::kDirect;
  if (text == "proof-guided") return ExtractMode::kProofGuided;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "' (direct or proof-guided)");
}

namespace {

std::vector<Letter> joined(std::span<const Letter> a, std::span<const Letter> b) {
  std::vector<Letter> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<Word> dedup(std::vector<Word> words) {
  std::set<Word> seen;
  std::vector<Word> out;
  for (auto& w : words) {
    if (seen.insert(w).second) out.push_back(std::move(w));
  }
  return out;
}

std::vector<Word> reduced_products(const std::vector<VariableWord>& chain, std::size_t k,
                                   const AlphabetLadder& ladder) {
  std::vector<Word> out;
  for_each_tuple(ladder.levels(k, chain.size()), [&](std::span<const Letter> a) {
    std::vector<Letter> buffer;
    for (std::size_t j = 0; j < chain.size(); ++j) append_substituted(buffer, chain[j], a[j]);
    out.push_back(Word::unchecked(std::move(buffer)));
    return true;
  });
  return dedup(std::move(out));
}

std::vector<Word> extracted_products(const std::vector<VariableWord>& chain, std::size_t k,
                                     const AlphabetLadder& ladder) {
  SpanQuery q{chain, ladder.levels(k, chain.size()), SpanKind::kExtractedConstant};
  std::vector<Word> out;
  for (auto& w : enumerate_span(q, UINT64_MAX)) out.push_back(std::get<Word>(w));
  return out;
}

std::vector<Word> line_of(const Word& head, const VariableWord& y, const LetterSet& letters) {
  std::vector<Word> out;
  for (auto a : letters) {
    std::vector<Letter> buffer(head.vec());
    append_substituted(buffer, y, a);
    out.push_back(Word::unchecked(std::move(buffer)));
  }
  return out;
}

// y(x): window j with its x replaced by the line's j-th symbol.
VariableWord substitute_windows(const std::vector<VariableWord>& windows, const VariableWord& line) {
  std::vector<Symbol> y;
  for (std::size_t j = 0; j < windows.size(); ++j) {
    for (auto sym : windows[j].symbols()) y.push_back(sym == kVariable ? line[j] : sym);
  }
  return VariableWord(std::move(y));
}

std::optional<HJWitness> search_line(const CubeColoring& cube, const StepOptions& options) {
  LineSearchOptions line_options;
  line_options.cap = options.hj_cap;
  line_options.excluded_color = -1;
  try {
    return find_monochromatic_line(cube, line_options);
  } catch (const CapExceeded& e) {
    throw BudgetExhausted(std::string("line search too large: ") + e.what());
  }
}

void note(StepResult& out, const StepOptions& options, std::string line) {
  if (options.sink) options.sink(line);
  out.transcript.push_back(std::move(line));
}

std::string words_text(const std::vector<VariableWord>& ws) {
  std::string out;
  for (const auto& w : ws) out += (out.empty() ? "" : " ") + to_string(w);
  return out;
}

// Shared tail of both steps: the pair family, the refinement, the result.
struct Family {
  std::vector<Word> heads;
  std::vector<VariableWord> ys;
  std::vector<std::pair<std::size_t, std::size_t>> order;
};

Family make_family(std::vector<Word> heads, const std::vector<VariableWord>& windows, const LetterSet& b,
                   const Word& pair_head, const VariableWord& pair_y) {
  Family f;
  f.heads = std::move(heads);
  SpanQuery q{windows, std::vector<LetterSet>(windows.size(), b), SpanKind::kReducedVariable};
  for (auto& y : enumerate_span(q, 10'000'000)) f.ys.push_back(std::get<VariableWord>(y));
  const auto hi = static_cast<std::size_t>(std::find(f.heads.begin(), f.heads.end(), pair_head) - f.heads.begin());
  const auto yi = static_cast<std::size_t>(std::find(f.ys.begin(), f.ys.end(), pair_y) - f.ys.begin());
  f.order.emplace_back(hi, yi);
  for (std::size_t i = 0; i < f.heads.size(); ++i) {
    for (std::size_t j = 0; j < f.ys.size(); ++j) {
      if (i != hi || j != yi) f.order.emplace_back(i, j);
    }
  }
  return f;
}

StepResult finish_step(const SetOracle& e, const VarSeq& s, std::size_t k, const AlphabetLadder& ladder,
                       const StepOptions& options, bool carlson, std::size_t n0, std::size_t n, const Family& family,
                       StepResult out) {
  const auto b = ladder.level(k);
  const std::size_t m = n0 + n;
  auto part = [&](std::size_t idx) {
    const auto [hi, yi] = family.order[idx];
    auto quotient = ef_quotient(e, line_of(family.heads[hi], family.ys[yi], b));
    return memoize(carlson ? intersect(e, quotient) : quotient);
  };
  RefineResult refine;
  try {
    refine = color_refine(family.order.size(), part, s.tail(m), k + m, ladder,
                          carlson ? ProbeMode::kExtracted : ProbeMode::kReducedShifted, options.probe,
                          options.sink);
  } catch (const Inconclusive& e) {
    throw BudgetExhausted(std::string("refinement over the pair family: ") + e.what());
  }
  const auto [hi, yi] = family.order[refine.index];
  out.m = m;
  out.n0 = n0;
  out.dimension = n;
  out.w = concat(family.heads[hi], family.ys[yi]);
  out.t = refine.t;
  out.cuts = refine.cuts;
  out.f = line_of(Word{}, out.w, b);
  auto quotient = ef_quotient(e, out.f);
  out.next = memoize(carlson ? intersect(e, quotient) : quotient);
  const std::string tag = carlson ? "[carlson-step] " : "[cs-step] ";
  for (auto& line : refine.transcript) out.transcript.push_back(std::move(line));
  note(out, options, tag + "pair " + std::to_string(refine.index) + " of " +
                           std::to_string(family.order.size()) + ": w = " + to_string(out.w) + ", m = " +
                           std::to_string(m));
  return out;
}

}  // namespace

std::optional<StepResult> cs_step(const SetOracle& e, const VarSeq& s, std::size_t k, const AlphabetLadder& ladder,
                                  const StepOptions& options) {
  StepResult out;
  auto ev = largeness_probe(e, s, k, ladder, ProbeMode::kReducedShifted, options.probe);
  note(out, options, "[cs-step] probe at level " + std::to_string(k) + ": " + to_string(ev.verdict) +
                           ", chain " + words_text(ev.prefix));
  if (ev.verdict == Verdict::kCounterexamplePrefix) return std::nullopt;
  if (ev.verdict == Verdict::kBudgetExhausted) throw BudgetExhausted("cs_step: largeness probe inconclusive");
  const std::size_t n0 = ev.cuts.back();
  const auto heads = reduced_products(ev.prefix, k, ladder);
  const auto b = ladder.level(k);
  for (std::size_t n = 1; n <= options.max_dimension; ++n) {
    const std::size_t m = n0 + n;
    if (m + 1 >= s.available()) throw BudgetExhausted("cs_step: sequence too short");
    const auto windows = [&] {
      std::vector<VariableWord> w;
      for (std::size_t j = 0; j < n; ++j) w.push_back(s.item(n0 + j));
      return w;
    }();
    // Trailing word v = s_m(a) s_{m+1}^*.
    auto vstar = substitute(s.item(m), ladder.level(k + m).front()).vec();
    const auto next_star = star(s.item(m + 1));
    vstar.insert(vstar.end(), next_star.vec().begin(), next_star.vec().end());
    const auto work = sat_mul(sat_pow(b.size(), n), heads.size());
    if (work > options.cube_budget) {
      throw BudgetExhausted("cs_step: cube coloring needs " + std::to_string(work) + " tests");
    }
    auto cube = CubeColoring::from_function(b, n, [&](std::span<const Letter> letters) {
      std::vector<Letter> z;
      for (std::size_t j = 0; j < n; ++j) append_substituted(z, windows[j], letters[j]);
      z.insert(z.end(), vstar.begin(), vstar.end());
      for (std::size_t i = 0; i < heads.size(); ++i) {
        if (e(joined(heads[i].letters(), z))) return static_cast<int>(i);
      }
      return -1;
    });
    auto line = search_line(cube, options);
    if (!line) {
      note(out, options, "[cs-step] n0 = " + std::to_string(n0) + ", N = " + std::to_string(n) +
                               ": no line");
      continue;
    }
    const auto y = substitute_windows(windows, line->line);
    const auto& head = heads[static_cast<std::size_t>(line->color)];
    note(out, options, "[cs-step] n0 = " + std::to_string(n0) + ", N = " + std::to_string(n) + ", q = " +
                             std::to_string(heads.size()) + ": line " + to_string(line->line) + " head " +
                             to_string(head));
    auto family = make_family(heads, windows, b, head, y);
    return finish_step(e, s, k, ladder, options, false, n0, n, family, std::move(out));
  }
  throw BudgetExhausted("cs_step: no line up to dimension " + std::to_string(options.max_dimension));
}

std::optional<StepResult> carlson_step(const SetOracle& e, const VarSeq& s, std::size_t k,
                                       const AlphabetLadder& ladder, const StepOptions& options) {
  StepResult out;
  auto ev = largeness_probe(e, s, k, ladder, ProbeMode::kExtracted, options.probe);
  note(out, options, "[carlson-step] probe at level " + std::to_string(k) + ": " + to_string(ev.verdict) +
                           ", chain " + words_text(ev.prefix));
  if (ev.verdict == Verdict::kCounterexamplePrefix) return std::nullopt;
  if (ev.verdict == Verdict::kBudgetExhausted) throw BudgetExhausted("carlson_step: largeness probe inconclusive");
  const std::size_t n0 = ev.cuts.back();
  const std::size_t r = ev.prefix.size() - 1;
  const auto heads = extracted_products(ev.prefix, k, ladder);
  const auto extra = ladder.level(k + r + 1);
  const auto b = ladder.level(k);
  for (std::size_t n = 1; n <= options.max_dimension; ++n) {
    const std::size_t m = n0 + n;
    if (m >= s.available()) throw BudgetExhausted("carlson_step: sequence too short");
    std::vector<VariableWord> windows;
    for (std::size_t j = 0; j < n; ++j) windows.push_back(s.item(n0 + j));
    // v(x) with v(a) in E for every a, as in the proof; s_m if none turns up.
    VariableWord v = s.item(m);
    try {
      if (auto mono = one_mono_word(e, s.tail(m), k + m, ladder, options.mono)) v = mono->w;
    } catch (const BudgetExhausted&) {
    }
    const auto work = sat_mul(sat_mul(sat_pow(b.size(), n), heads.size()), extra.size());
    if (work > options.cube_budget) {
      throw BudgetExhausted("carlson_step: cube coloring needs " + std::to_string(work) + " tests");
    }
    auto cube = CubeColoring::from_function(b, n, [&](std::span<const Letter> letters) {
      std::vector<Letter> prefix;
      for (std::size_t j = 0; j < n; ++j) append_substituted(prefix, windows[j], letters[j]);
      std::vector<Letter> z;
      for (std::size_t i = 0; i < heads.size(); ++i) {
        for (std::size_t ai = 0; ai < extra.size(); ++ai) {
          z.assign(heads[i].vec().begin(), heads[i].vec().end());
          z.insert(z.end(), prefix.begin(), prefix.end());
          append_substituted(z, v, extra[ai]);
          if (e(z)) return static_cast<int>(i * extra.size() + ai);
        }
      }
      return -1;
    });
    auto line = search_line(cube, options);
    if (!line) {
      note(out, options, "[carlson-step] n0 = " + std::to_string(n0) + ", N = " + std::to_string(n) +
                               ": no line");
      continue;
    }
    const auto y = substitute_windows(windows, line->line);
    const auto& head = heads[static_cast<std::size_t>(line->color) / extra.size()];
    note(out, options, "[carlson-step] n0 = " + std::to_string(n0) + ", N = " + std::to_string(n) +
                             ", q = " + std::to_string(heads.size() * extra.size()) + ": v = " + to_string(v) +
                             ", line " + to_string(line->line) + " head " + to_string(head));
    auto family = make_family(heads, windows, b, head, y);
    return finish_step(e, s, k, ladder, options, true, n0, n, family, std::move(out));
  }
  throw BudgetExhausted("carlson_step: no line up to dimension " + std::to_string(options.max_dimension));
}

namespace {

// Records a transcript line and forwards it to the caller's sink at once.
struct Log {
  std::vector<std::string>& lines;
  const std::function<void(const std::string&)>& sink;
  void operator()(std::string line) const {
    if (sink) sink(line);
    lines.push_back(std::move(line));
  }
};

std::string reference_of(const ColoringOracle& c) {
  if (const auto* b = std::get_if<BuiltinSource>(&c.source())) return builtin_reference(*b);
  return "inline";
}

Certificate base_certificate(CertificateKind kind, const ColoringOracle& c, const AlphabetLadder& ladder,
                             std::size_t depth, const ExtractOptions& options) {
  Certificate cert;
  cert.kind = kind;
  cert.ladder = ladder;
  cert.depth = depth;
  cert.coloring = c;
  cert.coloring_ref = reference_of(c);
  cert.budget = options.budget;
  cert.mode = to_string(options.mode);
  return cert;
}

void finalize(ExtractResult& result, const Log& log) {
  auto report = verify_certificate(result.certificate);
  log("[verify] " + std::string(report.ok ? "ok" : "FAILED") + ", " +
                              std::to_string(report.products) + " products" +
                              (report.ok ? "" : ": " + report.reason));
  if (!report.ok) throw Inconclusive("constructed certificate failed verification: " + report.reason);
  result.certificate.transcript = result.transcript;
}

// Backtracking over (w_0, ..., w_d) by total length, then word by word in
// enumeration order. The letter at absolute position p comes from A_p so the
// result is a block subsequence of (x, x, ...).
class DirectSearch {
 public:
  DirectSearch(const ColoringOracle& c, const AlphabetLadder& ladder, std::size_t depth, bool carlson,
               std::size_t max_length, Budget& budget)
      : c_(c), ladder_(ladder), depth_(depth), carlson_(carlson), max_length_(max_length), budget_(budget) {}

  std::optional<std::vector<VariableWord>> run(std::size_t total) {
    words_.clear();
    pools_.clear();
    if (place(0, 0, total)) return words_;
    return std::nullopt;
  }
  int color() const { return color_; }

 private:
  const ColoringOracle& c_;
  const AlphabetLadder& ladder_;
  std::size_t depth_;
  bool carlson_;
  std::size_t max_length_;
  Budget& budget_;
  std::vector<VariableWord> words_;
  std::vector<std::vector<Word>> pools_;  // products that later words extend
  int color_ = 0;

  // Products ending in w_n; false as soon as one has the wrong color.
  bool extend(std::size_t n, const VariableWord& w, std::vector<Word>& fresh) {
    const auto letters = ladder_.level(n);
    std::vector<Word> bases;
    if (n == 0 || carlson_) bases.emplace_back();
    if (n > 0) bases.insert(bases.end(), pools_.back().begin(), pools_.back().end());
    for (const auto& base : bases) {
      for (auto a : letters) {
        std::vector<Letter> buffer(base.vec());
        append_substituted(buffer, w, a);
        budget_.charge();
        const int got = c_(buffer);
        if (n == 0 && fresh.empty()) color_ = got;
        if (got != color_) return false;
        fresh.push_back(Word::unchecked(std::move(buffer)));
      }
    }
    return true;
  }

  bool place(std::size_t n, std::size_t pos, std::size_t remaining) {
    if (n > depth_) return remaining == 0;
    const std::size_t later = depth_ - n;
    if (remaining < later + 1) return false;
    const std::size_t hi = std::min(max_length_, remaining - later);
    const std::size_t lo = n == depth_ ? remaining : 1;
    for (std::size_t len = lo; len <= hi; ++len) {
      std::vector<std::vector<Symbol>> options;
      for (std::size_t i = 0; i < len; ++i) {
        std::vector<Symbol> o{kVariable};
        if (!(i == 0 && n >= 1 && !carlson_)) {
          const auto level = ladder_.level(pos + i);
          o.insert(o.end(), level.begin(), level.end());
        }
        options.push_back(std::move(o));
      }
      bool found = false;
      for_each_tuple(options, [&](std::span<const Symbol> symbols) {
        if (std::find(symbols.begin(), symbols.end(), kVariable) == symbols.end()) return true;
        auto w = VariableWord::unchecked(std::vector<Symbol>(symbols.begin(), symbols.end()));
        std::vector<Word> fresh;
        if (!extend(n, w, fresh)) return true;
        if (carlson_ && n > 0) fresh.insert(fresh.begin(), pools_.back().begin(), pools_.back().end());
        words_.push_back(std::move(w));
        pools_.push_back(std::move(fresh));
        if (place(n + 1, pos + len, remaining - len)) {
          found = true;
          return false;
        }
        words_.pop_back();
        pools_.pop_back();
        return true;
      });
      if (found) return true;
    }
    return false;
  }
};

ExtractResult direct_extract(CertificateKind kind, const ColoringOracle& c, const AlphabetLadder& ladder,
                             std::size_t depth, const ExtractOptions& options) {
  ExtractResult result;
  const Log log{result.transcript, options.sink};
  result.certificate = base_certificate(kind, c, ladder, depth, options);
  Budget budget(options.budget);
  DirectSearch search(c, ladder, depth, kind == CertificateKind::kCarlson, options.max_word_length, budget);
  const std::size_t longest = (depth + 1) * options.max_word_length;
  for (std::size_t total = depth + 1; total <= longest; ++total) {
    if (auto words = search.run(total)) {
      result.certificate.words = std::move(*words);
      result.certificate.color = search.color();
      log("[extract] direct: total length " + std::to_string(total) + ", " +
                                  std::to_string(budget.used()) + " evaluations, words " +
                                  words_text(result.certificate.words));
      finalize(result, log);
      return result;
    }
  }
  throw BudgetExhausted("direct search found nothing with words of length <= " +
                        std::to_string(options.max_word_length) + " (" + std::to_string(budget.used()) +
                        " evaluations)");
}

// The iterated single-step chain (w_n), grown on demand.
class StepChain {
 public:
  StepChain(bool carlson, const AlphabetLadder& ladder, const StepOptions& options, SetOracle e, VarSeq t, Log log)
      : carlson_(carlson), ladder_(ladder), options_(options), e_(std::move(e)), t_(std::move(t)), log_(log) {
    options_.sink = log.sink;
  }

  const VariableWord& w(std::size_t n) {
    while (w_.size() <= n) extend();
    return w_[n];
  }
  std::size_t k(std::size_t n) {
    while (k_.size() <= n) extend();
    return k_[n];
  }
  const std::vector<FusionStep>& steps() const { return steps_; }

 private:
  bool carlson_;
  const AlphabetLadder& ladder_;
  StepOptions options_;
  SetOracle e_;
  VarSeq t_;
  Log log_;
  std::vector<VariableWord> w_;
  std::vector<std::size_t> k_{0};
  std::vector<FusionStep> steps_;

  void extend() {
    auto step = carlson_ ? carlson_step(e_, t_, k_.back(), ladder_, options_)
                         : cs_step(e_, t_, k_.back(), ladder_, options_);
    if (!step) {
      throw Inconclusive("step " + std::to_string(w_.size()) + ": the probe rejected the current set");
    }
    for (auto& line : step->transcript) log_.lines.push_back(std::move(line));
    const std::size_t next_k = k_.back() + step->m;
    log_("[chain] w_" + std::to_string(w_.size()) + " = " + to_string(step->w) + ", k_" +
                          std::to_string(w_.size() + 1) + " = " + std::to_string(next_k));
    w_.push_back(step->w);
    k_.push_back(next_k);
    steps_.push_back(FusionStep{step->m, next_k, step->w, step->t, step->cuts});
    e_ = step->next;
    t_ = step->t;
  }
};

struct Refined {
  int color;
  SetOracle e;
  VarSeq s;
};

Refined refine_classes(const ColoringOracle& c, const AlphabetLadder& ladder, bool carlson,
                       const ExtractOptions& options, const std::shared_ptr<Budget>& budget, const Log& log) {
  std::vector<SetOracle> classes;
  for (int i = 1; i <= c.q(); ++i) classes.push_back(memoize(color_class(c, i, budget)));
  auto refine = color_refine(classes, VarSeq::all_x(options.seed_length), 0, ladder,
                             carlson ? ProbeMode::kExtracted : ProbeMode::kReducedShifted, options.step.probe,
                             log.sink);
  for (auto& line : refine.transcript) log.lines.push_back(std::move(line));
  const int color = static_cast<int>(refine.index) + 1;
  log("[extract] color " + std::to_string(color) + " is large in the refined seed");
  return Refined{color, classes[refine.index], refine.t};
}

std::string numbers_text(const std::vector<std::size_t>& v) {
  std::string out;
  for (auto n : v) out += (out.empty() ? "" : " ") + std::to_string(n);
  return out;
}

void run_fusion(ExtractResult& result, const Log& log, const VarSeq& seed, const StepChain& chain,
                const AlphabetLadder& ladder, SpanKind kind) {
  result.fusion = fusion_reindex(0, seed, chain.steps(), ladder, kind);
  log("[fusion] p = " + numbers_text(result.fusion));
}

ExtractResult proof_guided_cs(const ColoringOracle& c, const AlphabetLadder& ladder, std::size_t depth,
                              const ExtractOptions& options) {
  ExtractResult result;
  const Log log{result.transcript, options.sink};
  auto& cert = result.certificate;
  cert = base_certificate(CertificateKind::kCS, c, ladder, depth, options);
  if (c.q() == 1) {
    cert.words.assign(depth + 1, VariableWord::x());
    log("[extract] one color: (x, x, ...)");
    finalize(result, log);
    return result;
  }
  auto budget = std::make_shared<Budget>(options.budget);
  auto refined = refine_classes(c, ladder, false, options, budget, log);
  cert.color = refined.color;
  const auto& e = refined.e;
  StepChain chain(false, ladder, options.step, e, refined.s, log);

  // t_0 = w_0; each later t_{n+1} merges a run of w's starting at r_{n+1}.
  std::vector<VariableWord> t{chain.w(0)};
  std::size_t start = 1;
  std::vector<Word> g = line_of(Word{}, t[0], ladder.level(chain.k(0)));
  for (std::size_t n = 0; n <= depth; ++n) {
    std::optional<VariableWord> next;
    std::size_t run = 0;
    for (; run < options.max_block_run && !next; ++run) {
      const auto& last = chain.w(start + run + 1);
      std::vector<LetterSet> letters;
      for (std::size_t i = 0; i <= run; ++i) letters.push_back(ladder.level(chain.k(start + i)));
      const auto last_star = star(last);
      for_each_tuple(letters, [&](std::span<const Letter> a) {
        std::vector<Letter> tail;
        for (std::size_t i = 0; i <= run; ++i) append_substituted(tail, chain.w(start + i), a[i]);
        const std::size_t head = tail.size();
        tail.insert(tail.end(), last_star.vec().begin(), last_star.vec().end());
        for (const auto& u : g) {
          if (!e(joined(u.letters(), tail))) return true;
        }
        std::vector<Symbol> word(tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(head));
        word.insert(word.end(), last.vec().begin(), last.vec().end());
        next = VariableWord(std::move(word));
        return false;
      });
      if (next) break;
    }
    if (!next) {
      throw Inconclusive("no t_" + std::to_string(n + 1) + " within runs of " +
                         std::to_string(options.max_block_run) + " words");
    }
    t.push_back(*next);
    start = start + run + 2;
    log("[lemma] t_" + std::to_string(n + 1) + " = " + to_string(*next) + ", r_" +
                                std::to_string(n + 2) + " = " + std::to_string(start));
    if (n < depth) g = word_product(g, line_of(Word{}, *next, ladder.level(chain.k(start - 1))));
  }
  run_fusion(result, log, refined.s, chain, ladder, SpanKind::kReducedVariable);
  // The shifted sequence of t: u_0 = t_0 t_1^*, u_n = t_n^** t_{n+1}^*.
  cert.words.push_back(concat(t[0], star(t[1])));
  for (std::size_t n = 1; n <= depth; ++n) cert.words.push_back(concat(double_star(t[n]), star(t[n + 1])));
  log("[extract] proof-guided: " + std::to_string(budget->used()) +
                              " evaluations, words " + words_text(cert.words));
  finalize(result, log);
  return result;
}

ExtractResult proof_guided_carlson(const ColoringOracle& c, const AlphabetLadder& ladder, std::size_t depth,
                                   const ExtractOptions& options) {
  ExtractResult result;
  const Log log{result.transcript, options.sink};
  auto& cert = result.certificate;
  cert = base_certificate(CertificateKind::kCarlson, c, ladder, depth, options);
  if (c.q() == 1) {
    cert.words.assign(depth + 1, VariableWord::x());
    log("[extract] one color: (x, x, ...)");
    finalize(result, log);
    return result;
  }
  auto budget = std::make_shared<Budget>(options.budget);
  auto refined = refine_classes(c, ladder, true, options, budget, log);
  cert.color = refined.color;
  const auto& e = refined.e;
  auto chain = std::make_shared<StepChain>(true, ladder, options.step, e, refined.s, log);

  std::vector<VariableWord> t{chain->w(0)};
  std::size_t start = 1;
  std::vector<Word> g = line_of(Word{}, t[0], ladder.level(chain->k(0)));
  for (std::size_t n = 0; n <= 2 * depth; ++n) {
    const auto target = intersect(e, memoize(ef_quotient(e, g)));
    VarSeq rest({}, [chain, start](std::size_t i) { return chain->w(start + i); }, options.seed_length);
    LevelFn level = [&](std::size_t i) { return ladder.level(chain->k(start + i)); };
    auto mono = one_mono_word(target, rest, level, options.step.mono);
    if (!mono) throw Inconclusive("no t_" + std::to_string(n + 1) + " within the word scan");
    t.push_back(mono->w);
    const std::size_t level_now = chain->k(start);
    start += mono->m + 1;
    log("[lemma] t_" + std::to_string(n + 1) + " = " + to_string(mono->w) + ", r_" +
                                std::to_string(n + 2) + " = " + std::to_string(start));
    if (n < 2 * depth) {
      const auto line = line_of(Word{}, mono->w, ladder.level(level_now));
      auto both = word_product(g, line);
      g.insert(g.end(), line.begin(), line.end());
      g.insert(g.end(), both.begin(), both.end());
      g = dedup(std::move(g));
    }
  }
  run_fusion(result, log, refined.s, *chain, ladder, SpanKind::kExtractedVariable);
  for (std::size_t n = 0; n <= depth; ++n) cert.words.push_back(concat(t[2 * n], t[2 * n + 1]));
  log("[extract] proof-guided: " + std::to_string(budget->used()) +
                              " evaluations, words " + words_text(cert.words));
  finalize(result, log);
  return result;
}

}  // namespace

ExtractResult cs_extract(const ColoringOracle& c, const AlphabetLadder& ladder, std::size_t depth,
                         const ExtractOptions& options) {
  if (options.mode == ExtractMode::kDirect) return direct_extract(CertificateKind::kCS, c, ladder, depth, options);
  return proof_guided_cs(c, ladder, depth, options);
}

ExtractResult carlson_extract(const ColoringOracle& c, const AlphabetLadder& ladder, std::size_t depth,
                              const ExtractOptions& options) {
  if (options.mode == ExtractMode::kDirect) {
    return direct_extract(CertificateKind::kCarlson, c, ladder, depth, options);
  }
  return proof_guided_carlson(c, ladder, depth, options);
}

}  // namespace hjcs
