#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "hjcs/word.hpp"

namespace hjcs {

/// A finite sequence of variable words, or a lazily generated one with a hard
/// length budget. The first `prefix().size()` items are stored; the rest come
/// from the generator, indexed from the end of the prefix.
class VarSeq {
 public:
  using Generator = std::function<VariableWord(std::size_t)>;

  VarSeq() = default;
  explicit VarSeq(std::vector<VariableWord> items);
  VarSeq(std::vector<VariableWord> prefix, Generator generator, std::size_t budget);

  /// (x, x, x, ...) with `budget` items.
  static VarSeq all_x(std::size_t budget);

  /// Total number of items that can ever be produced.
  std::size_t available() const noexcept { return budget_; }
  bool has_generator() const noexcept { return static_cast<bool>(generator_); }
  const std::vector<VariableWord>& prefix() const noexcept { return prefix_; }

  /// Throws InsufficientPrefix when i >= available().
  VariableWord item(std::size_t i) const;
  std::vector<VariableWord> materialize(std::size_t count) const;

  /// The sequence (s_m, s_{m+1}, ...).
  VarSeq tail(std::size_t m) const;
  /// `head` followed by every item of `rest`.
  static VarSeq splice(std::vector<VariableWord> head, const VarSeq& rest);

 private:
  std::vector<VariableWord> prefix_;
  std::shared_ptr<const Generator> generator_;
  std::size_t offset_ = 0;  // added to generator indices
  std::size_t budget_ = 0;
};

/// The re-cutting map: item 0 is s_0 s_1^*, item n >= 1 is s_n^** s_{n+1}^*.
/// Consumes one item of lookahead, so the result has one item fewer.
/// Throws InsufficientPrefix when fewer than two items are available.
VarSeq shift(const VarSeq& s);

}  // namespace hjcs
