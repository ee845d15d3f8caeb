#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hjcs/word.hpp"

namespace hjcs {

class ColoringOracle;

/// Named families: "length-mod" {q}, "last-letter" {q, color of the empty
/// word}, "letter-count-mod" {letter, q}, "constant" {}.
struct BuiltinSource {
  std::string name;
  std::vector<std::int64_t> params;
  friend bool operator==(const BuiltinSource&, const BuiltinSource&) = default;
};

/// Longest entry that is a prefix of the word wins; words longer than the
/// horizon, and words no entry matches, get the default color.
struct PrefixTableSource {
  int q = 1;
  std::vector<std::pair<Word, int>> entries;
  std::size_t horizon = 0;
  int default_color = 1;
  friend bool operator==(const PrefixTableSource&, const PrefixTableSource&) = default;
};

/// Start state 0. transitions[state][letter] is the next state.
struct DfaSource {
  int q = 1;
  std::size_t alphabet_size = 0;
  std::vector<std::vector<int>> transitions;
  std::vector<int> state_colors;
  friend bool operator==(const DfaSource&, const DfaSource&) = default;
};

struct ProductSource {
  std::vector<ColoringOracle> components;
  friend bool operator==(const ProductSource&, const ProductSource&);
};

using ColoringSource = std::variant<BuiltinSource, PrefixTableSource, DfaSource, ProductSource>;

/// A pure map from words to colors 1..q. Immutable and safe to evaluate from
/// several threads at once.
class ColoringOracle {
 public:
  int q() const noexcept { return q_; }
  int operator()(std::span<const Letter> word) const;
  int operator()(const Word& w) const { return (*this)(w.letters()); }
  const ColoringSource& source() const noexcept { return *source_; }

  friend bool operator==(const ColoringOracle& a, const ColoringOracle& b) { return a.source() == b.source(); }

  static ColoringOracle make(ColoringSource source);

 private:
  struct TrieNode {
    std::vector<std::pair<Letter, std::uint32_t>> children;
    int color = 0;  // 0 = no entry ends here
  };
  int q_ = 1;
  std::shared_ptr<const ColoringSource> source_;
  std::shared_ptr<const std::vector<TrieNode>> trie_;
  int (*eval_)(const ColoringOracle&, std::span<const Letter>) = nullptr;

  static int eval_builtin(const ColoringOracle&, std::span<const Letter>);
  static int eval_table(const ColoringOracle&, std::span<const Letter>);
  static int eval_dfa(const ColoringOracle&, std::span<const Letter>);
  static int eval_product(const ColoringOracle&, std::span<const Letter>);
};

/// Throws UnknownName for an unrecognized family and std::invalid_argument
/// for bad parameters.
ColoringOracle builtin_coloring(std::string_view name, std::vector<std::int64_t> params = {});
ColoringOracle prefix_table_coloring(std::vector<std::pair<Word, int>> entries, std::size_t horizon, int default_color,
                                     int q);
/// Throws IncompleteTable when a transition is missing (negative entry) or a
/// state has no color.
ColoringOracle dfa_coloring(DfaSource dfa);
ColoringOracle product_coloring(std::vector<ColoringOracle> components);

/// Component colors of a product color, in component order.
std::vector<int> decode_product(const ColoringOracle& product, int color);

/// "builtin:length-mod:2" style reference.
std::string builtin_reference(const BuiltinSource& b);
/// Parses "builtin:name:p1:p2..." or loads the file at `ref`.
ColoringOracle resolve_coloring(std::string_view ref);

std::string save_coloring(const ColoringOracle& c);
/// Throws ParseError with the line and column of the first problem.
ColoringOracle load_coloring(std::string_view document);

}  // namespace hjcs
