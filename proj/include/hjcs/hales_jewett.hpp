#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hjcs/ladder.hpp"
#include "hjcs/word.hpp"

namespace hjcs {

/// A coloring of alphabet^n stored as a table indexed by mixed-radix rank
/// (first letter most significant, letters ranked by position in `alphabet`).
/// Color values are arbitrary ints; callers may reserve one as "no color".
class CubeColoring {
 public:
  CubeColoring(LetterSet alphabet, std::size_t n, std::vector<int> colors);
  static CubeColoring from_function(LetterSet alphabet, std::size_t n,
                                    const std::function<int(std::span<const Letter>)>& color);

  const LetterSet& alphabet() const noexcept { return alphabet_; }
  std::size_t dimension() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return colors_.size(); }
  int at_rank(std::uint64_t rank) const { return colors_[rank]; }
  int operator()(std::span<const Letter> word) const { return colors_[rank(word)]; }

  std::uint64_t rank(std::span<const Letter> word) const;
  Word unrank(std::uint64_t rank) const;

 private:
  LetterSet alphabet_;
  std::size_t n_;
  std::vector<int> colors_;
};

struct HJWitness {
  std::size_t n = 0;
  LetterSet alphabet;
  VariableWord line = VariableWord::x();
  int color = 0;
};

/// (p+1)^n - p^n, saturating.
std::uint64_t hj_candidate_count(std::size_t p, std::size_t n);

struct LineSearchOptions {
  std::uint64_t cap = 100'000'000;
  /// Lines whose common color equals this value are not accepted.
  std::optional<int> excluded_color;
};

/// The first monochromatic line in lexicographic order with x first. Throws
/// CapExceeded when the candidate count exceeds options.cap.
std::optional<HJWitness> find_monochromatic_line(const CubeColoring& c, const LineSearchOptions& options = {});

/// True iff every substitution of the line has the witness color under `c`.
bool verify_hj_witness(const HJWitness& w, const std::function<int(const Word&)>& c);

struct HJNumberOptions {
  std::uint64_t cap = 1'000'000'000;
  /// Visit only colorings whose first occurrences of colors appear in order
  /// 1, 2, 3, ... Line existence does not depend on renaming colors.
  bool prune_color_symmetry = false;
};

struct HJNumberResult {
  std::optional<std::size_t> least;
  std::vector<std::size_t> holds_at;
};

/// Work needed for hj_number(p, q, n_max): sum over N of
/// q^(p^N) * ((p+1)^N - p^N) candidate evaluations, saturating.
std::uint64_t hj_number_work(std::size_t p, std::size_t q, std::size_t n_max);

/// Exhausts every q-coloring of {0..p-1}^N for N = 1..n_max. Throws
/// CapExceeded (with the exact work) when hj_number_work exceeds the cap.
HJNumberResult hj_number(std::size_t p, std::size_t q, std::size_t n_max, const HJNumberOptions& options = {});

/// Single-threaded references for the parallel kernels above.
namespace serial {
std::optional<HJWitness> find_monochromatic_line(const CubeColoring& c, const LineSearchOptions& options = {});
HJNumberResult hj_number(std::size_t p, std::size_t q, std::size_t n_max, const HJNumberOptions& options = {});
}  // namespace serial

}  // namespace hjcs
