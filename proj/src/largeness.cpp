#include "hjcs/largeness.hpp"

#include <algorithm>
#include <set>

#include "hjcs/errors.hpp"
#include "hjcs/hales_jewett.hpp"

namespace hjcs {

std::size_t BlockCuts::operator()(std::size_t j) const {
  if (j < cuts.size()) return cuts[j];
  const std::size_t extra = j - (cuts.size() - 1);
  const std::size_t period = strides.size();
  std::size_t out = cuts.back();
  std::size_t sum = 0;
  for (auto d : strides) sum += d;
  out += (extra / period) * sum;
  for (std::size_t i = 0; i < extra % period; ++i) out += strides[i];
  return out;
}

BlockCuts BlockCuts::compose(const BlockCuts& inner) const {
  BlockCuts out;
  out.cuts.clear();
  std::size_t j = 0;
  for (;; ++j) {
    out.cuts.push_back((*this)(inner(j)));
    if (j + 1 >= inner.cuts.size() && inner(j) + 1 >= cuts.size()) break;
  }
  // From here both sides cycle; the phase of the pair repeats within this many items.
  const std::size_t period = inner.strides.size() * strides.size();
  out.strides.clear();
  for (std::size_t i = 0; i < period; ++i) {
    out.strides.push_back((*this)(inner(j + i + 1)) - (*this)(inner(j + i)));
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kFoundPrefix: return "FoundPrefix";
    case Verdict::kCounterexamplePrefix: return "CounterexamplePrefix";
    case Verdict::kBudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

namespace {

struct OutOfEvaluations {};

class Meter {
 public:
  Meter(const SetOracle& e, std::uint64_t limit) : e_(e), limit_(limit) {}
  bool operator()(std::span<const Letter> w) {
    if (used_ >= limit_) throw OutOfEvaluations{};
    ++used_;
    return e_(w);
  }
  std::uint64_t used() const { return used_; }

 private:
  const SetOracle& e_;
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

// w_0(a_0)...w_r(a_r) for every a in prod A_{k+j}, in tuple order.
std::vector<Word> reduced_products(const std::vector<VariableWord>& chain, std::size_t k, const AlphabetLadder& ladder) {
  std::vector<std::vector<Letter>> options;
  for (std::size_t j = 0; j < chain.size(); ++j) options.push_back(ladder.level(k + j));
  std::vector<Word> out;
  std::vector<Letter> buffer;
  for_each_tuple(options, [&](std::span<const Letter> a) {
    buffer.clear();
    for (std::size_t j = 0; j < chain.size(); ++j) append_substituted(buffer, chain[j], a[j]);
    out.push_back(Word::unchecked(buffer));
    return true;
  });
  return out;
}

std::vector<Word> extracted_products(const std::vector<VariableWord>& chain, std::size_t k,
                                     const AlphabetLadder& ladder) {
  SpanQuery q{chain, ladder.levels(k, chain.size()), SpanKind::kExtractedConstant};
  std::vector<Word> out;
  for (auto& w : enumerate_span(q, UINT64_MAX)) out.push_back(std::get<Word>(w));
  return out;
}

std::vector<Letter> joined(std::span<const Letter> a, std::span<const Letter> b) {
  std::vector<Letter> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// One pass of the reduced-shifted check. Returns the bad extension (and the
// end of its window) or nullopt when every extension passed.
struct BadExtension {
  VariableWord w;
  std::size_t end;
  std::vector<Symbol> pattern;
};

std::optional<BadExtension> reduced_round(Meter& member, const VarSeq& s, std::size_t k, const AlphabetLadder& ladder,
                                          const ProbeOptions& options, LargenessEvidence& ev, bool& checked_any) {
  const std::size_t n0 = ev.cuts.back();
  const auto products = reduced_products(ev.prefix, k, ladder);
  std::optional<BadExtension> bad;
  for (std::size_t i = 0; i < options.extension_depth && !bad; ++i) {
    if (n0 + i >= s.available()) break;
    std::vector<std::vector<Letter>> letters;
    std::vector<VariableWord> items;
    for (std::size_t j = 0; j < i; ++j) {
      letters.push_back(ladder.level(k + n0 + j));
      items.push_back(s.item(n0 + j));
    }
    const auto last = s.item(n0 + i);
    const auto last_star = star(last);
    for_each_tuple(letters, [&](std::span<const Letter> b) {
      std::vector<Letter> tau;
      for (std::size_t j = 0; j < i; ++j) append_substituted(tau, items[j], b[j]);
      const std::size_t head = tau.size();
      tau.insert(tau.end(), last_star.vec().begin(), last_star.vec().end());
      checked_any = true;
      ProbeRecord rec{ev.prefix.size(), Word::unchecked(tau), std::nullopt};
      for (const auto& p : products) {
        auto candidate = joined(p.letters(), tau);
        if (member(candidate)) {
          rec.product = Word::unchecked(std::move(candidate));
          break;
        }
      }
      const bool good = rec.product.has_value();
      ev.records.push_back(std::move(rec));
      if (good) return true;
      std::vector<Symbol> w(tau.begin(), tau.begin() + static_cast<std::ptrdiff_t>(head));
      w.insert(w.end(), last.vec().begin(), last.vec().end());
      std::vector<Symbol> pattern(b.begin(), b.end());
      pattern.push_back(kVariable);
      bad = BadExtension{VariableWord(std::move(w)), n0 + i + 1, std::move(pattern)};
      return false;
    });
  }
  return bad;
}

std::optional<BadExtension> extracted_round(Meter& member, const VarSeq& s, std::size_t k,
                                            const AlphabetLadder& ladder, const ProbeOptions& options,
                                            LargenessEvidence& ev, bool& checked_any) {
  const std::size_t n0 = ev.cuts.back();
  const std::size_t r = ev.prefix.size() - 1;
  if (n0 >= s.available()) return std::nullopt;
  const std::size_t depth = std::min(options.extension_depth, s.available() - n0);
  if (depth == 0) return std::nullopt;
  const auto products = extracted_products(ev.prefix, k, ladder);
  const auto letters = ladder.level(k + r + 1);
  SpanQuery q;
  q.kind = SpanKind::kExtractedVariable;
  for (std::size_t j = 0; j < depth; ++j) {
    q.seq.push_back(s.item(n0 + j));
    q.alphabets.push_back(ladder.level(k + n0 + j));
  }
  std::optional<BadExtension> bad;
  std::set<std::vector<Symbol>> seen;
  for_each_span_selection(q, [&](const AnyWord& any, const SpanSelection& sel) {
    const auto& w = std::get<VariableWord>(any);
    if (!seen.insert(w.vec()).second) return true;
    checked_any = true;
    ProbeRecord rec{ev.prefix.size(), w, std::nullopt};
    std::vector<Letter> buffer;
    for (const auto& v : products) {
      for (auto a : letters) {
        buffer.assign(v.vec().begin(), v.vec().end());
        append_substituted(buffer, w, a);
        if (member(buffer)) {
          rec.product = Word::unchecked(buffer);
          break;
        }
      }
      if (rec.product) break;
    }
    const bool good = rec.product.has_value();
    ev.records.push_back(std::move(rec));
    if (good) return true;
    std::vector<Symbol> pattern(sel.indices.back() + 1, kSkipped);
    for (std::size_t j = 0; j < sel.indices.size(); ++j) pattern[sel.indices[j]] = sel.symbols[j];
    bad = BadExtension{w, n0 + sel.indices.back() + 1, std::move(pattern)};
    return false;
  });
  return bad;
}

// Shortest p such that the last p patterns repeat the p before them.
std::size_t tail_period(const std::vector<std::vector<Symbol>>& units) {
  const std::size_t n = units.size();
  for (std::size_t p = 1; 2 * p <= n; ++p) {
    bool ok = true;
    for (std::size_t i = 0; i < p && ok; ++i) ok = units[n - 1 - i] == units[n - 1 - i - p];
    if (ok) return p;
  }
  return 1;
}

// `head`, then the cycle of `patterns` applied to consecutive windows of `rest`.
VarSeq repeat_patterns(std::vector<VariableWord> head, const VarSeq& rest, std::vector<std::vector<Symbol>> patterns) {
  std::vector<std::size_t> starts{0};
  for (const auto& p : patterns) starts.push_back(starts.back() + p.size());
  const std::size_t width = starts.back();
  std::size_t count = (rest.available() / width) * patterns.size();
  for (std::size_t i = 0; i < patterns.size() && starts[i + 1] <= rest.available() % width; ++i) ++count;
  if (count == 0) return VarSeq(std::move(head));
  const std::size_t budget = head.size() + count;
  auto gen = [rest, patterns = std::move(patterns), starts, width](std::size_t i) {
    const std::size_t phase = i % patterns.size();
    const std::size_t base = (i / patterns.size()) * width + starts[phase];
    const auto& pattern = patterns[phase];
    std::vector<Symbol> out;
    for (std::size_t j = 0; j < pattern.size(); ++j) {
      if (pattern[j] == kSkipped) continue;
      const auto item = rest.item(base + j);
      if (pattern[j] == kVariable) {
        out.insert(out.end(), item.vec().begin(), item.vec().end());
      } else {
        append_substituted(out, item, pattern[j]);
      }
    }
    return VariableWord::unchecked(std::move(out));
  };
  return VarSeq(std::move(head), std::move(gen), budget);
}

}  // namespace

LargenessEvidence largeness_probe(const SetOracle& e, const VarSeq& s, std::size_t k, const AlphabetLadder& ladder,
                                  ProbeMode mode, const ProbeOptions& options) {
  LargenessEvidence ev;
  if (s.available() == 0) return ev;
  Meter member(e, options.eval_budget);
  ev.prefix.push_back(s.item(0));
  ev.cuts = {0, 1};
  ev.patterns = {{kVariable}};
  try {
    while (true) {
      if (ev.prefix.size() > options.max_chain) {
        ev.verdict = Verdict::kCounterexamplePrefix;
        break;
      }
      bool checked_any = false;
      auto bad = mode == ProbeMode::kReducedShifted
                     ? reduced_round(member, s, k, ladder, options, ev, checked_any)
                     : extracted_round(member, s, k, ladder, options, ev, checked_any);
      if (bad) {
        ev.prefix.push_back(std::move(bad->w));
        ev.cuts.push_back(bad->end);
        ev.patterns.push_back(std::move(bad->pattern));
        continue;
      }
      ev.verdict = checked_any ? Verdict::kFoundPrefix : Verdict::kBudgetExhausted;
      break;
    }
  } catch (const OutOfEvaluations&) {
    ev.verdict = Verdict::kBudgetExhausted;
  }
  ev.evaluations = member.used();
  return ev;
}

RefineResult color_refine(std::size_t part_count, const std::function<SetOracle(std::size_t)>& part, const VarSeq& s,
                          std::size_t k, const AlphabetLadder& ladder, ProbeMode mode, const ProbeOptions& options,
                          const Sink& sink) {
  RefineResult result;
  result.t = s;
  for (std::size_t i = 0; i < part_count; ++i) {
    auto ev = largeness_probe(part(i), result.t, k, ladder, mode, options);
    result.transcript.push_back("[refine] part " + std::to_string(i) + ": " + to_string(ev.verdict) + " (chain " +
                                std::to_string(ev.prefix.size()) + ", " + std::to_string(ev.evaluations) +
                                " evaluations)");
    if (sink) sink(result.transcript.back());
    if (ev.verdict == Verdict::kFoundPrefix) {
      result.index = i;
      result.evidence = std::move(ev);
      return result;
    }
    if (ev.verdict != Verdict::kCounterexamplePrefix) continue;
    std::vector<VariableWord> items;
    BlockCuts inner;
    std::vector<std::vector<Symbol>> units;
    if (mode == ProbeMode::kReducedShifted) {
      items = ev.prefix;
      inner.cuts = ev.cuts;
      units = ev.patterns;
    } else {
      inner.cuts = {0};
      for (std::size_t j = 0; 2 * j + 1 < ev.prefix.size(); ++j) {
        items.push_back(concat(ev.prefix[2 * j], ev.prefix[2 * j + 1]));
        inner.cuts.push_back(ev.cuts[2 * j + 2]);
        auto unit = ev.patterns[2 * j];
        unit.insert(unit.end(), ev.patterns[2 * j + 1].begin(), ev.patterns[2 * j + 1].end());
        units.push_back(std::move(unit));
      }
    }
    const std::size_t period = tail_period(units);
    std::vector<std::vector<Symbol>> cycle(units.end() - static_cast<std::ptrdiff_t>(period), units.end());
    inner.strides.clear();
    for (const auto& u : cycle) inner.strides.push_back(u.size());
    result.t = repeat_patterns(std::move(items), result.t.tail(inner.cuts.back()), std::move(cycle));
    result.cuts = result.cuts.compose(inner);
  }
  throw Inconclusive("no part certified within the probe budget");
}

RefineResult color_refine(const std::vector<SetOracle>& parts, const VarSeq& s, std::size_t k,
                          const AlphabetLadder& ladder, ProbeMode mode, const ProbeOptions& options,
                          const Sink& sink) {
  return color_refine(
      parts.size(), [&](std::size_t i) { return parts[i]; }, s, k, ladder, mode, options, sink);
}

std::optional<MonoWord> one_mono_word(const SetOracle& e, const VarSeq& s, const LevelFn& level,
                                      const MonoOptions& options) {
  const auto sub = level(0);
  std::uint64_t used = 0;
  std::set<std::vector<Symbol>> seen;
  std::optional<MonoWord> found;
  SpanQuery q;
  q.kind = SpanKind::kExtractedVariable;
  for (std::size_t m = 0; m < options.max_items && m < s.available(); ++m) {
    q.seq.push_back(s.item(m));
    q.alphabets.push_back(level(m));
    if (m >= 63) break;
    std::vector<std::size_t> indices;
    for (std::uint64_t lower = 0; lower < (std::uint64_t{1} << m) && !found; ++lower) {
      indices.clear();
      for (std::size_t i = 0; i < m; ++i) {
        if (lower & (std::uint64_t{1} << i)) indices.push_back(i);
      }
      indices.push_back(m);
      for_each_subset_selection(q, indices, [&](const AnyWord& any, const SpanSelection& sel) {
        const auto& w = std::get<VariableWord>(any);
        if (!seen.insert(w.vec()).second) return true;
        std::vector<Letter> buffer;
        for (auto a : sub) {
          if (++used > options.eval_budget) throw BudgetExhausted("one_mono_word evaluation budget exhausted");
          buffer.clear();
          append_substituted(buffer, w, a);
          if (!e(buffer)) return true;
        }
        found = MonoWord{m, w, sel};
        return false;
      });
    }
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<MonoWord> one_mono_word(const SetOracle& e, const VarSeq& s, std::size_t k,
                                      const AlphabetLadder& ladder, const MonoOptions& options) {
  return one_mono_word(
      e, s, [&ladder, k](std::size_t i) { return ladder.level(k + i); }, options);
}

std::optional<MonoWord> one_mono_word_literal(const SetOracle& e, const VarSeq& s, std::size_t k,
                                              const AlphabetLadder& ladder, const MonoOptions& options) {
  std::vector<VariableWord> chain;
  std::size_t n0 = 0;
  std::uint64_t used = 0;
  for (std::size_t n = 0;; ++n) {
    // Products over optional letters: the empty choice drops w_i entirely.
    std::vector<std::vector<Letter>> prefixes{{}};
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::vector<Letter>> next;
      for (const auto& p : prefixes) {
        next.push_back(p);
        for (auto a : ladder.level(k + i)) {
          auto extended = p;
          append_substituted(extended, chain[i], a);
          next.push_back(std::move(extended));
        }
      }
      prefixes = std::move(next);
    }
    if (prefixes.size() > 30) throw BudgetExhausted("subset coloring needs more than 2^30 colors");
    const auto b = ladder.level(k + n);
    bool extended_chain = false;
    for (std::size_t h = 1; !extended_chain; ++h) {
      if (n0 + h > s.available() || n0 + h > options.max_items) return std::nullopt;
      std::vector<VariableWord> window;
      for (std::size_t j = 0; j < h; ++j) window.push_back(s.item(n0 + j));
      used += sat_mul(sat_pow(b.size(), h), prefixes.size());
      if (used > options.eval_budget) throw BudgetExhausted("subset coloring evaluation budget exhausted");
      auto cube = CubeColoring::from_function(b, h, [&](std::span<const Letter> letters) {
        std::vector<Letter> u;
        for (std::size_t j = 0; j < h; ++j) append_substituted(u, window[j], letters[j]);
        int mask = 0;
        for (std::size_t p = 0; p < prefixes.size(); ++p) {
          if (e(joined(prefixes[p], u))) mask |= 1 << p;
        }
        return mask;
      });
      LineSearchOptions line_options;
      line_options.cap = options.hj_cap;
      auto line = find_monochromatic_line(cube, line_options);
      if (!line) continue;
      std::vector<Symbol> y;
      for (std::size_t j = 0; j < h; ++j) {
        const Symbol c = line->line[j];
        for (auto sym : window[j].symbols()) y.push_back(sym == kVariable ? c : sym);
      }
      if (line->color != 0) {
        const auto p = static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(line->color)));
        std::vector<Symbol> w(prefixes[p].begin(), prefixes[p].end());
        w.insert(w.end(), y.begin(), y.end());
        MonoWord out{n0 + h - 1, VariableWord(std::move(w)), {}};
        SpanQuery q{s.materialize(out.m + 1), ladder.levels(k, out.m + 1), SpanKind::kExtractedVariable};
        if (auto sel = span_contains(q, out.w)) out.selection = *sel;
        return out;
      }
      chain.push_back(VariableWord(std::move(y)));
      n0 += h;
      extended_chain = true;
    }
  }
}

}  // namespace hjcs
