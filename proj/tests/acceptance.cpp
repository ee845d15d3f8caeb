// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hjcs/certificate.hpp"
#include "hjcs/cli.hpp"
#include "hjcs/errors.hpp"
#include "hjcs/extraction.hpp"
#include "hjcs/fusion.hpp"
#include "hjcs/hales_jewett.hpp"
#include "hjcs/largeness.hpp"
#include "hjcs/set_oracle.hpp"
#include "hjcs/span.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hjcs;
using hjcs::testing::pick;
using hjcs::testing::Rng;

namespace {

// Pinned tolerances. Every count comparison below is exact.
constexpr double kHJSeconds = 1.0;
constexpr std::size_t kWordSamples = 1000;
constexpr std::size_t kSpanSamples = 500;
constexpr std::size_t kQuotientSamples = 100;
constexpr std::size_t kFusionSamples = 50;
constexpr std::size_t kCorpusMinimum = 50;
constexpr std::uint64_t kExtractBudget = 10'000'000;
constexpr std::uint64_t kProofGuidedBudget = 2'000'000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome hj_exact() {
  const auto start = std::chrono::steady_clock::now();
  const auto lib = hj_number(2, 2, 3);
  const auto ref = oracle::hj_number(2, 2, 3);
  const double t = seconds_since(start);
  // N = 1: the coloring 0 -> 1, 1 -> 2 has no line.
  const bool n1_free = !oracle::has_line({0, 1}, 2, 1);
  std::ostringstream d;
  d << "hj_number(2,2,3) = " << (lib.least ? std::to_string(*lib.least) : "none") << ", oracle "
    << (ref ? std::to_string(*ref) : "none") << ", " << oracle::lines(2, 2).size() << " lines at N=2, " << t << " s";
  return {lib.least == std::optional<std::size_t>(2) && ref == lib.least && n1_free &&
              oracle::lines(2, 2).size() == 5 && t < kHJSeconds,
          d.str()};
}

Outcome hj_trivial() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  for (std::size_t q = 1; q <= 5; ++q) {
    ok = ok && hj_number(1, q, 1).least == std::optional<std::size_t>(1) && oracle::hj_number(1, q, 1) == 1u;
  }
  const double t = seconds_since(start);
  return {ok && t < kHJSeconds, "q = 1..5, " + std::to_string(t) + " s"};
}

Outcome word_laws() {
  Rng rng(3);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < kWordSamples; ++i) {
    const auto alphabet = pick(rng, 1, 3);
    const auto v = testing::random_variable_word(rng, alphabet, 8);
    const auto [head, tail] = split_star(v);
    if (concat(head, tail) != v || !tail.is_left_variable()) ++failures;
    for (Letter a = 0; a < static_cast<Letter>(alphabet); ++a) {
      for (Letter b = a + 1; b < static_cast<Letter>(alphabet); ++b) {
        if (substitute(v, a) == substitute(v, b)) ++failures;
      }
    }
    // A sequence built around v: shift is idempotent, and fixes it once the
    // items after the first are left variable.
    auto items = testing::random_items(rng, pick(rng, 2, 5), alphabet, 8);
    items[0] = v;
    const VarSeq s(items);
    const auto once = shift(s);
    if (once.available() >= 2) {
      const auto twice = shift(once);
      if (twice.materialize(twice.available()) != once.materialize(twice.available())) ++failures;
    }
    for (std::size_t j = 1; j < once.available(); ++j) {
      if (!once.item(j).is_left_variable()) ++failures;
    }
    std::vector<VariableWord> left{v};
    for (std::size_t j = 1; j < items.size(); ++j) left.push_back(concat(VariableWord::x(), substitute(items[j], 0)));
    const auto fixed = shift(VarSeq(left));
    if (fixed.materialize(fixed.available()) !=
        std::vector<VariableWord>(left.begin(), left.begin() + static_cast<std::ptrdiff_t>(fixed.available()))) {
      ++failures;
    }
  }
  return {failures == 0, std::to_string(kWordSamples) + " words, " + std::to_string(failures) + " failures"};
}

std::vector<AnyWord> as_words(const std::set<oracle::Symbols>& set) {
  std::vector<AnyWord> out;
  for (const auto& s : set) out.push_back(parse_any_word(render_symbols(s)));
  return out;
}

Outcome span_laws() {
  Rng rng(4);
  std::size_t failures = 0;
  std::size_t checked_membership = 0;
  const std::vector<std::string> ladders{"2", "3", "2,3+", "1,2,3+"};
  for (std::size_t i = 0; i < kSpanSamples; ++i) {
    // Cardinalities and membership on a random query.
    SpanQuery q;
    q.kind = static_cast<SpanKind>(pick(rng, 0, 3));
    const auto windows = pick(rng, 1, 3);
    q.seq = testing::random_items(rng, windows, 3, 3);
    for (std::size_t j = 0; j < windows; ++j) q.alphabets.push_back(testing::random_letter_set(rng, 3));
    const auto ref = oracle::span(q.seq, q.alphabets, q.kind);
    const auto lib = enumerate_span(q, 1'000'000);
    std::set<oracle::Symbols> lib_set;
    for (const auto& w : lib) lib_set.insert(oracle::Symbols(symbols_of(w).begin(), symbols_of(w).end()));
    if (lib_set != ref || lib_set.size() != lib.size()) ++failures;
    std::uint64_t prod = 1, prod1 = 1, prod2 = 1;
    for (const auto& a : q.alphabets) {
      prod *= a.size();
      prod1 *= a.size() + 1;
      prod2 *= a.size() + 2;
    }
    switch (q.kind) {
      case SpanKind::kReducedConstant:
        if (ref.size() != prod || span_selection_count(q) != prod) ++failures;
        break;
      case SpanKind::kReducedVariable:
        if (ref.size() != prod1 - prod || span_selection_count(q) != prod1 - prod) ++failures;
        break;
      case SpanKind::kExtractedConstant:
        if (span_selection_count(q) != prod1 - 1) ++failures;
        break;
      case SpanKind::kExtractedVariable:
        if (span_selection_count(q) != prod2 - prod1) ++failures;
        break;
    }
    std::vector<AnyWord> probes = as_words(ref);
    for (int j = 0; j < 6; ++j) {
      std::vector<Symbol> noise(pick(rng, 0, 8));
      for (auto& s : noise) s = static_cast<Symbol>(pick(rng, 0, 3)) - 1;
      const bool variable = is_variable_kind(q.kind);
      const bool has_x = std::find(noise.begin(), noise.end(), kVariable) != noise.end();
      if (variable && !has_x) noise.push_back(kVariable);
      if (!variable) std::erase(noise, kVariable);
      probes.push_back(parse_any_word(render_symbols(noise)));
    }
    for (const auto& w : probes) {
      const oracle::Symbols sym(symbols_of(w).begin(), symbols_of(w).end());
      const auto witness = span_contains(q, w);
      ++checked_membership;
      if (witness.has_value() != (ref.count(sym) > 0)) ++failures;
      if (witness) {
        oracle::Symbols rebuilt;
        for (std::size_t j = 0; j < witness->indices.size(); ++j) {
          for (auto s : q.seq[witness->indices[j]].symbols()) {
            rebuilt.push_back(s == kVariable ? witness->symbols[j] : s);
          }
        }
        if (rebuilt != sym) ++failures;
      }
    }

    // Nesting, transitivity and shift on a random block subsequence.
    const bool extracted = pick(rng, 0, 1) == 1;
    const auto ladder = AlphabetLadder::parse(ladders[pick(rng, 0, ladders.size() - 1)]);
    const auto k = pick(rng, 0, 2);
    const auto s = testing::random_items(rng, 6, 2, 2);
    const auto blocks = testing::random_block_subseq(rng, s, k, ladder, extracted, pick(rng, 1, 3), 2);
    const auto& t = blocks.t;
    const VarSeq s_seq(s);
    const auto recognized = is_block_subseq(extracted ? SpanKind::kExtractedVariable : SpanKind::kReducedVariable, t,
                                            s_seq, k, ladder);
    if (!recognized || !oracle::block_subseq(t, s, k, ladder, extracted)) ++failures;
    const auto kinds = extracted ? std::vector<SpanKind>{SpanKind::kExtractedConstant, SpanKind::kExtractedVariable}
                                 : std::vector<SpanKind>{SpanKind::kReducedConstant, SpanKind::kReducedVariable};
    for (auto kind : kinds) {
      // Span of t_0..t_j inside the span of the s window it covers.
      for (std::size_t j = 0; j < t.size(); ++j) {
        const std::vector<VariableWord> tp(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(j + 1));
        const std::vector<VariableWord> sp(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(blocks.cuts[j + 1]));
        const auto inner = oracle::span(tp, ladder.levels(k, tp.size()), kind);
        const auto outer = oracle::span(sp, ladder.levels(k, sp.size()), kind);
        for (const auto& w : inner) {
          if (!outer.count(w)) ++failures;
        }
      }
    }
    if (t.size() >= 2) {
      const auto k0 = pick(rng, 0, k);
      const auto inner = testing::random_block_subseq(rng, t, k0, ladder, extracted, 2, 2);
      const auto kind = extracted ? SpanKind::kExtractedVariable : SpanKind::kReducedVariable;
      if (!is_block_subseq(kind, inner.t, VarSeq(t), k0, ladder)) ++failures;
      if (!is_block_subseq(kind, inner.t, s_seq, k, ladder)) ++failures;
    }
    if (!extracted && t.size() >= 2 && blocks.cuts.back() + 1 < s.size()) {
      // shift(t) against shift(s); the extra items of s give the lookahead.
      const auto st = shift(VarSeq(t));
      const auto ss = shift(s_seq);
      try {
        if (!is_reduced_block_subseq(st.materialize(st.available()), ss, k, ladder)) ++failures;
      } catch (const InsufficientPrefix&) {
        ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(kSpanSamples) + " instances, " + std::to_string(checked_membership) +
                             " membership queries, " + std::to_string(failures) + " failures"};
}

Outcome quotient_law() {
  Rng rng(5);
  const auto entries = testing::corpus();
  const auto domain = testing::all_words(3, 4);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < kQuotientSamples; ++i) {
    const auto& entry = entries[pick(rng, 0, entries.size() - 1)];
    const auto e = color_class(entry.coloring, static_cast<int>(pick(rng, 1, static_cast<std::size_t>(entry.coloring.q()))));
    std::vector<Word> f1, f2;
    for (std::size_t j = pick(rng, 1, 2); j > 0; --j) f1.push_back(testing::random_word(rng, 3, 3));
    for (std::size_t j = pick(rng, 1, 2); j > 0; --j) f2.push_back(testing::random_word(rng, 3, 3));
    const auto nested = ef_quotient(ef_quotient(e, f1), f2);
    const auto joined = ef_quotient(e, word_product(f1, f2));
    for (const auto& z : domain) {
      bool direct = true;
      for (const auto& a : f1) {
        for (const auto& b : f2) {
          auto w = a.vec();
          w.insert(w.end(), b.vec().begin(), b.vec().end());
          w.insert(w.end(), z.vec().begin(), z.vec().end());
          direct = direct && e(w);
        }
      }
      if (nested.contains(z) != joined.contains(z) || joined.contains(z) != direct) ++failures;
    }
  }
  return {failures == 0, std::to_string(kQuotientSamples) + " triples over " + std::to_string(domain.size()) +
                             " words, " + std::to_string(failures) + " failures"};
}

struct CorpusRun {
  std::size_t direct_ok = 0;
  std::size_t guided_ok = 0;
  std::size_t both = 0;
  std::size_t bad = 0;
  std::vector<std::string> notes;
};

CorpusRun run_corpus(bool carlson) {
  CorpusRun run;
  for (const auto& entry : testing::corpus()) {
    const auto extract = carlson ? &carlson_extract : &cs_extract;
    bool direct_ok = false;
    bool guided_ok = false;
    ExtractOptions direct;
    direct.budget = kExtractBudget;
    try {
      const auto r = extract(entry.coloring, entry.ladder, 2, direct);
      direct_ok = verify_certificate(r.certificate).ok && oracle::certificate_holds(r.certificate);
      if (!direct_ok) run.notes.push_back(entry.name + ": direct certificate rejected");
    } catch (const std::exception& e) {
      run.notes.push_back(entry.name + ": direct " + e.what());
    }
    ExtractOptions guided;
    guided.mode = ExtractMode::kProofGuided;
    guided.budget = kProofGuidedBudget;
    try {
      const auto r = extract(entry.coloring, entry.ladder, 2, guided);
      guided_ok = verify_certificate(r.certificate).ok && oracle::certificate_holds(r.certificate);
      if (!guided_ok) {
        ++run.bad;
        run.notes.push_back(entry.name + ": proof-guided certificate rejected");
      }
    } catch (const BudgetExhausted&) {
    } catch (const Inconclusive&) {
    } catch (const std::exception& e) {
      ++run.bad;
      run.notes.push_back(entry.name + ": proof-guided " + e.what());
    }
    run.direct_ok += direct_ok;
    run.guided_ok += guided_ok;
    run.both += direct_ok && guided_ok;
  }
  return run;
}

Outcome corpus_criterion(bool carlson) {
  const auto start = std::chrono::steady_clock::now();
  const auto size = testing::corpus().size();
  const auto run = run_corpus(carlson);
  std::ostringstream d;
  d << size << " colorings, direct " << run.direct_ok << "/" << size << ", proof-guided " << run.guided_ok << "/"
    << size << ", both " << run.both << ", " << seconds_since(start) << " s";
  for (const auto& n : run.notes) d << "\n    " << n;
  return {size >= kCorpusMinimum && run.direct_ok == size && run.bad == 0, d.str()};
}

Outcome fusion_soundness() {
  Rng rng(8);
  std::size_t failures = 0;
  const std::vector<std::string> ladders{"2", "2,3+", "1,2,3+"};
  for (std::size_t i = 0; i < kFusionSamples; ++i) {
    const auto ladder = AlphabetLadder::parse(ladders[i % ladders.size()]);
    const bool identity = i % 5 == 0;
    const std::size_t k0 = pick(rng, 0, 1);
    const auto t0_items = identity ? std::vector<VariableWord>(24, VariableWord::x()) : testing::random_items(rng, 40, 2, 2);
    const VarSeq t0(t0_items);
    std::vector<FusionStep> steps;
    std::vector<VariableWord> parent = t0_items;
    std::size_t k = k0;
    for (std::size_t n = 1; n <= 3; ++n) {
      FusionStep st;
      st.m = identity ? 1 : pick(rng, 1, 2);
      if (parent.size() < st.m + 3) break;
      st.k = k + st.m;
      // w_{n-1}: one reduced word over the first m items.
      const std::vector<VariableWord> head(parent.begin(), parent.begin() + static_cast<std::ptrdiff_t>(st.m));
      const auto w = testing::random_block_subseq(rng, head, k, ladder, false, 1, st.m);
      if (w.cuts.back() != st.m) {
        // Force a single window covering all m items.
        std::vector<Symbol> sym;
        for (std::size_t j = 0; j < st.m; ++j) {
          for (auto s : head[j].symbols()) sym.push_back(s == kVariable && j + 1 < st.m ? ladder.level(k + j)[0] : s);
        }
        st.w = VariableWord(sym);
      } else {
        st.w = w.t[0];
      }
      const std::vector<VariableWord> rest(parent.begin() + static_cast<std::ptrdiff_t>(st.m), parent.end());
      std::vector<VariableWord> next;
      if (identity) {
        next = rest;
        st.cuts.cuts.clear();
        for (std::size_t j = 0; j <= rest.size(); ++j) st.cuts.cuts.push_back(j);
      } else {
        const auto blocks = testing::random_block_subseq(rng, rest, st.k, ladder, false, rest.size(), 2);
        next = blocks.t;
        st.cuts.cuts = blocks.cuts;
      }
      st.t = VarSeq(next);
      steps.push_back(st);
      parent = next;
      k = st.k;
    }
    try {
      const auto p = fusion_reindex(k0, t0, steps, ladder);
      bool ok = p.size() == steps.size() + 1 && p[0] == 0;
      for (std::size_t n = 1; n < p.size(); ++n) {
        ok = ok && p[n] > p[n - 1] && k0 + p[n] >= steps[n - 1].k;
        if (identity) ok = ok && p[n] == n && k0 + p[n] == steps[n - 1].k;
      }
      // (C2) and (C3) by brute-force recheck.
      for (std::size_t n = 0; n + 1 < p.size(); ++n) {
        const std::vector<VariableWord> window(t0_items.begin() + static_cast<std::ptrdiff_t>(p[n]),
                                               t0_items.begin() + static_cast<std::ptrdiff_t>(p[n + 1]));
        std::vector<LetterSet> levels;
        for (std::size_t j = p[n]; j < p[n + 1]; ++j) levels.push_back(ladder.level(k0 + j));
        ok = ok && oracle::span(window, levels, SpanKind::kReducedVariable).count(steps[n].w.vec()) > 0;
      }
      for (std::size_t n = 0; n < steps.size(); ++n) {
        std::vector<VariableWord> ws;
        for (std::size_t j = n; j < steps.size(); ++j) ws.push_back(steps[j].w);
        const auto& tn = n == 0 ? t0 : steps[n - 1].t;
        const auto level = n == 0 ? k0 : steps[n - 1].k;
        ok = ok && is_reduced_block_subseq(ws, tn, level, ladder).has_value();
      }
      ok = ok && check_fusion(k0, t0, steps, p, ladder).ok();
      if (!ok) ++failures;
    } catch (const std::exception&) {
      ++failures;
    }
  }
  // A broken hypothesis must be refused.
  bool refused = false;
  {
    const auto ladder = AlphabetLadder::constant(2);
    const VarSeq t0 = VarSeq::all_x(10);
    FusionStep st;
    st.m = 1;
    st.k = 3;
    st.t = t0.tail(1);
    try {
      fusion_reindex(0, t0, {st}, ladder);
    } catch (const WitnessInconsistent&) {
      refused = true;
    }
  }
  return {failures == 0 && refused,
          std::to_string(kFusionSamples) + " instances, " + std::to_string(failures) + " failures" +
              (refused ? "" : ", bad k_n accepted")};
}

Outcome probe_consistency() {
  std::size_t found = 0, failures = 0, checked = 0;
  for (const auto& entry : testing::corpus()) {
    for (int color = 1; color <= entry.coloring.q(); ++color) {
      const auto e = color_class(entry.coloring, color);
      const auto s = VarSeq::all_x(64);
      const auto ev = largeness_probe(e, s, 0, entry.ladder, ProbeMode::kExtracted);
      ++checked;
      if (ev.verdict != Verdict::kFoundPrefix) continue;
      ++found;
      try {
        const auto mono = one_mono_word(e, s, 0, entry.ladder);
        bool ok = mono.has_value();
        if (ok) {
          for (auto a : entry.ladder.level(0)) ok = ok && e.contains(substitute(mono->w, a));
        }
        if (!ok) ++failures;
      } catch (const BudgetExhausted&) {
        ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(checked) + " color classes, " + std::to_string(found) + " FoundPrefix, " +
                             std::to_string(failures) + " without a word"};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "hjcs_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::vector<std::string>> runs{
      {"cs-extract", "--coloring", "builtin:length-mod:2", "--ladder", "2", "--depth", "2"},
      {"cs-extract", "--coloring", "builtin:last-letter:2", "--ladder", "2,3+", "--depth", "2", "--mode",
       "proof-guided"},
      {"carlson-extract", "--coloring", "builtin:length-mod:3", "--ladder", "3", "--depth", "2"},
      {"carlson-extract", "--coloring", "builtin:letter-count-mod:1:2", "--ladder", "2", "--depth", "2", "--mode",
       "proof-guided"},
      {"hj-search", "--coloring", "builtin:letter-count-mod:1:2", "--p", "2", "--n", "3"},
  };
  auto read = [](const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream b;
    b << f.rdbuf();
    return b.str();
  };
  std::size_t identical = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::string text[2], transcript[2];
    int code[2];
    const auto path = dir / ("run" + std::to_string(i) + ".cert");
    for (int r = 0; r < 2; ++r) {
      std::filesystem::remove(path);
      auto args = runs[i];
      args.push_back("--out");
      args.push_back(path.string());
      std::ostringstream out, err;
      code[r] = cli::run(args, out, err);
      transcript[r] = out.str();
      text[r] = read(path);
    }
    if (code[0] == 0 && code[0] == code[1] && !text[0].empty() && text[0] == text[1] &&
        transcript[0] == transcript[1]) {
      ++identical;
    }
  }
  std::filesystem::remove_all(dir);
  return {identical == runs.size(),
          std::to_string(identical) + "/" + std::to_string(runs.size()) + " runs byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"HJ exact value", hj_exact},
      {"HJ triviality", hj_trivial},
      {"word-algebra laws", word_laws},
      {"span laws", span_laws},
      {"quotient law", quotient_law},
      {"Carlson-Simpson extraction corpus", [] { return corpus_criterion(false); }},
      {"Carlson extraction corpus", [] { return corpus_criterion(true); }},
      {"fusion soundness", fusion_soundness},
      {"probe consistency", probe_consistency},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
