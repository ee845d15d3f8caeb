#pragma once

// Generators and the coloring corpus shared by the unit tests and the
// acceptance binary. Everything is seeded, so runs are reproducible.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hjcs/coloring.hpp"
#include "hjcs/ladder.hpp"
#include "hjcs/span.hpp"
#include "hjcs/varseq.hpp"
#include "hjcs/word.hpp"

namespace hjcs::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Word random_word(Rng& rng, std::size_t alphabet, std::size_t max_len) {
  std::vector<Letter> out(pick(rng, 0, max_len));
  for (auto& l : out) l = static_cast<Letter>(pick(rng, 0, alphabet - 1));
  return Word(std::move(out));
}

/// Length in [1, max_len]; one position is forced to x.
inline VariableWord random_variable_word(Rng& rng, std::size_t alphabet, std::size_t max_len) {
  std::vector<Symbol> out(pick(rng, 1, max_len));
  for (auto& s : out) s = pick(rng, 0, 2) == 0 ? kVariable : static_cast<Symbol>(pick(rng, 0, alphabet - 1));
  out[pick(rng, 0, out.size() - 1)] = kVariable;
  return VariableWord(std::move(out));
}

inline std::vector<VariableWord> random_items(Rng& rng, std::size_t count, std::size_t alphabet,
                                              std::size_t max_len) {
  std::vector<VariableWord> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_variable_word(rng, alphabet, max_len));
  return out;
}

inline LetterSet random_letter_set(Rng& rng, std::size_t max_size) {
  std::set<Letter> s;
  const auto size = pick(rng, 1, max_size);
  while (s.size() < size) s.insert(static_cast<Letter>(pick(rng, 0, 3)));
  return LetterSet(s.begin(), s.end());
}

/// Every constant word over {0..alphabet-1} of length <= max_len.
inline std::vector<Word> all_words(std::size_t alphabet, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (std::size_t a = 0; a < alphabet; ++a) {
        auto v = w.vec();
        v.push_back(static_cast<Letter>(a));
        next.emplace_back(std::move(v));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline DfaSource random_dfa(Rng& rng, std::size_t states, std::size_t alphabet, int q) {
  DfaSource d;
  d.q = q;
  d.alphabet_size = alphabet;
  d.transitions.assign(states, std::vector<int>(alphabet));
  for (auto& row : d.transitions) {
    for (auto& t : row) t = static_cast<int>(pick(rng, 0, states - 1));
  }
  d.state_colors.resize(states);
  for (auto& c : d.state_colors) c = static_cast<int>(pick(rng, 1, static_cast<std::size_t>(q)));
  return d;
}

inline ColoringOracle random_prefix_table(Rng& rng, std::size_t alphabet, int q, std::size_t horizon) {
  std::vector<std::pair<Word, int>> entries;
  std::set<Word> seen;
  const auto count = pick(rng, 3, 10);
  while (entries.size() < count) {
    auto w = random_word(rng, alphabet, horizon);
    if (!seen.insert(w).second) continue;
    entries.emplace_back(std::move(w), static_cast<int>(pick(rng, 1, static_cast<std::size_t>(q))));
  }
  return prefix_table_coloring(std::move(entries), horizon, static_cast<int>(pick(rng, 1, static_cast<std::size_t>(q))),
                               q);
}

struct RandomBlocks {
  std::vector<VariableWord> t;
  std::vector<std::size_t> cuts{0};
};

/// `windows` consecutive windows of 1..max_window items of s, each turned into
/// one variable word of its reduced (or extracted) variable span at level k.
inline RandomBlocks random_block_subseq(Rng& rng, const std::vector<VariableWord>& s, std::size_t k,
                                        const AlphabetLadder& ladder, bool extracted, std::size_t windows,
                                        std::size_t max_window) {
  RandomBlocks out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < windows && start < s.size(); ++i) {
    const auto len = pick(rng, 1, std::min(max_window, s.size() - start));
    std::vector<Symbol> choice(len);
    std::vector<bool> used(len, true);
    for (std::size_t j = 0; j < len; ++j) {
      const auto alphabet = ladder.level(k + start + j);
      const auto r = pick(rng, 0, alphabet.size());
      choice[j] = r == alphabet.size() ? kVariable : alphabet[r];
      if (extracted) used[j] = pick(rng, 0, 1) == 1;
    }
    const auto forced = pick(rng, 0, len - 1);
    used[forced] = true;
    choice[forced] = kVariable;
    std::vector<Symbol> w;
    for (std::size_t j = 0; j < len; ++j) {
      if (!used[j]) continue;
      for (auto sym : s[start + j].symbols()) w.push_back(sym == kVariable ? choice[j] : sym);
    }
    out.t.emplace_back(std::move(w));
    start += len;
    out.cuts.push_back(start);
  }
  return out;
}

struct CorpusEntry {
  std::string name;
  ColoringOracle coloring;
  AlphabetLadder ladder;
};

/// Builtins with q in {2, 3}, random 2-4 state DFAs and random prefix tables
/// of horizon 6, spread over the ladders "2", "3" and "2,3+".
inline std::vector<CorpusEntry> corpus() {
  const std::vector<std::string> ladders{"2", "3", "2,3+"};
  std::vector<CorpusEntry> out;
  std::size_t slot = 0;
  auto add = [&](std::string name, ColoringOracle c) {
    auto ladder = AlphabetLadder::parse(ladders[slot++ % ladders.size()]);
    out.push_back({name + " @" + ladder.describe(), std::move(c), std::move(ladder)});
  };
  for (int q : {2, 3}) {
    add("length-mod:" + std::to_string(q), builtin_coloring("length-mod", {q}));
    add("last-letter:" + std::to_string(q), builtin_coloring("last-letter", {q, 1}));
    add("letter-count-mod:0:" + std::to_string(q), builtin_coloring("letter-count-mod", {0, q}));
    add("letter-count-mod:1:" + std::to_string(q), builtin_coloring("letter-count-mod", {1, q}));
  }
  Rng rng(20261018);
  for (int i = 0; i < 24; ++i) {
    const auto states = 2 + static_cast<std::size_t>(i % 3);
    const int q = 2 + i % 2;
    add("dfa#" + std::to_string(i), dfa_coloring(random_dfa(rng, states, 3, q)));
  }
  for (int i = 0; i < 20; ++i) {
    const int q = 2 + i % 2;
    add("table#" + std::to_string(i), random_prefix_table(rng, 3, q, 6));
  }
  return out;
}

}  // namespace hjcs::testing
