#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace hjcs {

// Letters are small non-negative ids. The variable x is the reserved value -1,
// so it sorts before every letter; all enumeration orders rely on that.
using Symbol = std::int32_t;
using Letter = Symbol;
inline constexpr Symbol kVariable = -1;

/// A constant word: a finite, possibly empty, sequence of letters.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}

  /// Skips validation; the caller guarantees every entry is a letter.
  static Word unchecked(std::vector<Letter> letters) {
    Word w;
    w.letters_ = std::move(letters);
    return w;
  }

  std::span<const Letter> letters() const noexcept { return letters_; }
  const std::vector<Letter>& vec() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// A word over letters and x with at least one occurrence of x.
class VariableWord {
 public:
  explicit VariableWord(std::vector<Symbol> symbols);

  static VariableWord x() { return VariableWord(std::vector<Symbol>{kVariable}); }
  static VariableWord unchecked(std::vector<Symbol> symbols) {
    VariableWord v;
    v.symbols_ = std::move(symbols);
    return v;
  }

  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  const std::vector<Symbol>& vec() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  bool is_left_variable() const noexcept { return symbols_.front() == kVariable; }
  std::size_t variable_count() const noexcept;

  friend bool operator==(const VariableWord&, const VariableWord&) = default;
  friend auto operator<=>(const VariableWord&, const VariableWord&) = default;

 private:
  VariableWord() = default;
  std::vector<Symbol> symbols_;
};

using AnyWord = std::variant<Word, VariableWord>;

Word substitute(const VariableWord& v, Letter a);

Word concat(const Word& u, const Word& w);
VariableWord concat(const Word& u, const VariableWord& w);
VariableWord concat(const VariableWord& u, const Word& w);
VariableWord concat(const VariableWord& u, const VariableWord& w);
AnyWord concat(const AnyWord& u, const AnyWord& w);

/// Appends the symbols of `v` to `out`, replacing x by `a`.
void append_substituted(std::vector<Letter>& out, const VariableWord& v, Letter a);

/// Maximal constant prefix (everything before the first x).
Word star(const VariableWord& v);
/// Maximal left-variable suffix (everything from the first x on).
VariableWord double_star(const VariableWord& v);
std::pair<Word, VariableWord> split_star(const VariableWord& v);

std::span<const Symbol> symbols_of(const AnyWord& w);
bool is_variable(const AnyWord& w) noexcept;

// Text form: decimal ids run together when every id is below 10, otherwise
// dot-separated; x is "x" and the empty word is "ε". A lone letter id >= 10 is
// written with a trailing dot ("12.") so it cannot be misread as "1" "2".
inline constexpr std::string_view kEmptyWordToken = "ε";

std::string render_symbols(std::span<const Symbol> symbols);
std::string to_string(const Word& w);
std::string to_string(const VariableWord& v);
std::string to_string(const AnyWord& w);

/// Parses the text form back into symbols. Throws std::invalid_argument.
std::vector<Symbol> parse_symbols(std::string_view text);
Word parse_word(std::string_view text);
VariableWord parse_variable_word(std::string_view text);
AnyWord parse_any_word(std::string_view text);

}  // namespace hjcs

template <>
struct std::hash<hjcs::Word> {
  std::size_t operator()(const hjcs::Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto l : w.letters()) {
      h ^= static_cast<std::size_t>(l) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};
