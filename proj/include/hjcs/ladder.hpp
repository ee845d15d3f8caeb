#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hjcs/word.hpp"

namespace hjcs {

/// Sorted, duplicate-free list of letter ids.
using LetterSet = std::vector<Letter>;

bool contains(const LetterSet& set, Letter a);
LetterSet letter_range(std::size_t size);

enum class TailRule { kConstant, kArithmetic };

/// An increasing chain A_0 ⊆ A_1 ⊆ ... of finite alphabets given by a list of
/// explicit levels and a rule for every level past the list.
///
/// With TailRule::kArithmetic each level past the list adds `step` fresh
/// letters (the next ids above the current maximum).
class AlphabetLadder {
 public:
  explicit AlphabetLadder(std::vector<LetterSet> explicit_levels,
                          TailRule tail = TailRule::kConstant, std::size_t step = 0);

  /// A_n = {0, ..., size-1} for every n.
  static AlphabetLadder constant(std::size_t size);

  /// Terse form: "p", "2,3,3+", "2,3+1", or brace form "{0,1},{0,1,5}+".
  static AlphabetLadder parse(std::string_view text);

  LetterSet level(std::size_t n) const;
  std::size_t level_size(std::size_t n) const;
  /// Levels offset, offset+1, ..., offset+count-1.
  std::vector<LetterSet> levels(std::size_t offset, std::size_t count) const;

  const std::vector<LetterSet>& explicit_levels() const noexcept { return explicit_; }
  TailRule tail_rule() const noexcept { return tail_; }
  std::size_t step() const noexcept { return step_; }

  /// Canonical text; parse(describe()) reproduces the ladder.
  std::string describe() const;

  friend bool operator==(const AlphabetLadder&, const AlphabetLadder&) = default;

 private:
  std::vector<LetterSet> explicit_;
  TailRule tail_;
  std::size_t step_;
};

}  // namespace hjcs
