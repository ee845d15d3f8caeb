#include "hjcs/hales_jewett.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>

#include <omp.h>

#include "hjcs/errors.hpp"
#include "hjcs/span.hpp"

namespace hjcs {

CubeColoring::CubeColoring(LetterSet alphabet, std::size_t n, std::vector<int> colors)
    : alphabet_(std::move(alphabet)), n_(n), colors_(std::move(colors)) {
  if (alphabet_.empty()) throw std::invalid_argument("cube coloring over an empty alphabet");
  if (colors_.size() != sat_pow(alphabet_.size(), n_)) throw std::invalid_argument("cube table has the wrong size");
}

CubeColoring CubeColoring::from_function(LetterSet alphabet, std::size_t n,
                                         const std::function<int(std::span<const Letter>)>& color) {
  const std::uint64_t total = sat_pow(alphabet.size(), n);
  if (total > (std::uint64_t{1} << 32)) throw CapExceeded("cube too large to tabulate", total);
  std::vector<int> colors(total);
  std::vector<std::size_t> digits(n, 0);
  std::vector<Letter> word(n, alphabet.empty() ? 0 : alphabet[0]);
  for (std::uint64_t r = 0; r < total; ++r) {
    colors[r] = color(word);
    for (std::size_t pos = n; pos-- > 0;) {
      if (++digits[pos] < alphabet.size()) {
        word[pos] = alphabet[digits[pos]];
        break;
      }
      digits[pos] = 0;
      word[pos] = alphabet[0];
    }
  }
  return CubeColoring(std::move(alphabet), n, std::move(colors));
}

std::uint64_t CubeColoring::rank(std::span<const Letter> word) const {
  if (word.size() != n_) throw std::invalid_argument("word length does not match cube dimension");
  std::uint64_t r = 0;
  for (auto a : word) {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), a);
    if (it == alphabet_.end() || *it != a) throw std::invalid_argument("letter outside the cube alphabet");
    r = r * alphabet_.size() + static_cast<std::uint64_t>(it - alphabet_.begin());
  }
  return r;
}

Word CubeColoring::unrank(std::uint64_t rank) const {
  std::vector<Letter> out(n_);
  for (std::size_t pos = n_; pos-- > 0;) {
    out[pos] = alphabet_[rank % alphabet_.size()];
    rank /= alphabet_.size();
  }
  return Word::unchecked(std::move(out));
}

std::uint64_t hj_candidate_count(std::size_t p, std::size_t n) {
  const auto all = sat_pow(p + 1, n);
  return all == std::numeric_limits<std::uint64_t>::max() ? all : all - sat_pow(p, n);
}

namespace {

// Line rank L in base p+1, digit 0 = x, digit j = alphabet[j-1]. The
// substitution of letter index j has cube rank base + j * weight.
struct LineShape {
  std::uint64_t base = 0;
  std::uint64_t weight = 0;
};

LineShape decode_line(std::uint64_t line_rank, std::size_t p, std::size_t n) {
  LineShape shape;
  std::uint64_t place = 1;
  for (std::size_t pos = n; pos-- > 0;) {
    const auto digit = line_rank % (p + 1);
    line_rank /= (p + 1);
    if (digit == 0) {
      shape.weight += place;
    } else {
      shape.base += (digit - 1) * place;
    }
    place *= p;
  }
  return shape;
}

// Returns the common color or nullopt.
std::optional<int> line_color(const CubeColoring& c, const LineShape& shape, std::size_t p) {
  const int first = c.at_rank(shape.base);
  for (std::size_t j = 1; j < p; ++j) {
    if (c.at_rank(shape.base + j * shape.weight) != first) return std::nullopt;
  }
  return first;
}

bool accepted(std::optional<int> color, const LineSearchOptions& options) {
  return color && (!options.excluded_color || *color != *options.excluded_color);
}

HJWitness make_witness(const CubeColoring& c, std::uint64_t line_rank, int color) {
  const std::size_t p = c.alphabet().size();
  const std::size_t n = c.dimension();
  std::vector<Symbol> symbols(n);
  for (std::size_t pos = n; pos-- > 0;) {
    const auto digit = line_rank % (p + 1);
    line_rank /= (p + 1);
    symbols[pos] = digit == 0 ? kVariable : c.alphabet()[digit - 1];
  }
  return HJWitness{n, c.alphabet(), VariableWord(std::move(symbols)), color};
}

std::uint64_t line_space(const CubeColoring& c, const LineSearchOptions& options) {
  const std::size_t p = c.alphabet().size();
  const std::size_t n = c.dimension();
  if (n == 0) throw std::invalid_argument("line search needs dimension >= 1");
  const auto count = hj_candidate_count(p, n);
  if (count > options.cap) throw CapExceeded("line search", count);
  return sat_pow(p + 1, n);
}

bool has_x(std::uint64_t line_rank, std::size_t p, std::size_t n) {
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (line_rank % (p + 1) == 0) return true;
    line_rank /= (p + 1);
  }
  return false;
}

}  // namespace

namespace serial {

std::optional<HJWitness> find_monochromatic_line(const CubeColoring& c, const LineSearchOptions& options) {
  const std::uint64_t total = line_space(c, options);
  const std::size_t p = c.alphabet().size();
  const std::size_t n = c.dimension();
  for (std::uint64_t l = 0; l < total; ++l) {
    if (!has_x(l, p, n)) continue;
    auto color = line_color(c, decode_line(l, p, n), p);
    if (accepted(color, options)) return make_witness(c, l, *color);
  }
  return std::nullopt;
}

}  // namespace serial

std::optional<HJWitness> find_monochromatic_line(const CubeColoring& c, const LineSearchOptions& options) {
  const std::uint64_t total = line_space(c, options);
  const std::size_t p = c.alphabet().size();
  const std::size_t n = c.dimension();
  if (total < 4096 || omp_get_max_threads() == 1) return serial::find_monochromatic_line(c, options);
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  const auto signed_total = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < signed_total; ++i) {
    const auto l = static_cast<std::uint64_t>(i);
    if (l > best.load(std::memory_order_relaxed) || !has_x(l, p, n)) continue;
    if (accepted(line_color(c, decode_line(l, p, n), p), options)) {
      auto cur = best.load();
      while (l < cur && !best.compare_exchange_weak(cur, l)) {
      }
    }
  }
  const auto l = best.load();
  if (l == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return make_witness(c, l, *line_color(c, decode_line(l, p, n), p));
}

bool verify_hj_witness(const HJWitness& w, const std::function<int(const Word&)>& c) {
  if (w.line.size() != w.n || w.alphabet.empty()) return false;
  for (auto a : w.alphabet) {
    if (c(substitute(w.line, a)) != w.color) return false;
  }
  return true;
}

std::uint64_t hj_number_work(std::size_t p, std::size_t q, std::size_t n_max) {
  std::uint64_t work = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    work = sat_add(work, sat_mul(sat_pow(q, sat_pow(p, n)), hj_candidate_count(p, n)));
  }
  return work;
}

namespace {

void check_hj_args(std::size_t p, std::size_t q, std::size_t n_max, const HJNumberOptions& options) {
  if (p == 0 || q == 0) throw std::invalid_argument("hj_number needs p, q >= 1");
  const auto work = hj_number_work(p, q, n_max);
  if (work > options.cap) throw CapExceeded("hj_number", work);
}

// Advances `digits` to the next base-q counter value; with `rgs` only
// restricted growth strings are produced. Returns false after the last one.
bool next_coloring(std::vector<int>& digits, int q, bool rgs) {
  const std::size_t size = digits.size();
  for (std::size_t pos = size; pos-- > 0;) {
    int limit = q;
    if (rgs) {
      int max_before = -1;
      for (std::size_t j = 0; j < pos; ++j) max_before = std::max(max_before, digits[j]);
      limit = std::min(q, max_before + 2);
    }
    if (digits[pos] + 1 < limit) {
      ++digits[pos];
      std::fill(digits.begin() + static_cast<std::ptrdiff_t>(pos) + 1, digits.end(), 0);
      return true;
    }
  }
  return false;
}

bool has_line(const CubeColoring& c) {
  LineSearchOptions options;
  options.cap = std::numeric_limits<std::uint64_t>::max();
  return serial::find_monochromatic_line(c, options).has_value();
}

std::vector<int> digits_of(std::uint64_t index, std::size_t size, int q) {
  std::vector<int> digits(size);
  for (std::size_t pos = size; pos-- > 0;) {
    digits[pos] = static_cast<int>(index % static_cast<std::uint64_t>(q));
    index /= static_cast<std::uint64_t>(q);
  }
  return digits;
}

}  // namespace

namespace serial {

HJNumberResult hj_number(std::size_t p, std::size_t q, std::size_t n_max, const HJNumberOptions& options) {
  check_hj_args(p, q, n_max, options);
  HJNumberResult result;
  const LetterSet alphabet = letter_range(p);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::size_t cells = sat_pow(p, n);
    std::vector<int> digits(cells, 0);
    bool holds = true;
    do {
      if (!has_line(CubeColoring(alphabet, n, digits))) {
        holds = false;
        break;
      }
    } while (next_coloring(digits, static_cast<int>(q), options.prune_color_symmetry));
    if (holds) {
      result.holds_at.push_back(n);
      if (!result.least) result.least = n;
    }
  }
  return result;
}

}  // namespace serial

HJNumberResult hj_number(std::size_t p, std::size_t q, std::size_t n_max, const HJNumberOptions& options) {
  check_hj_args(p, q, n_max, options);
  HJNumberResult result;
  const LetterSet alphabet = letter_range(p);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::size_t cells = sat_pow(p, n);
    const std::uint64_t colorings = sat_pow(q, cells);
    std::atomic<bool> counterexample{false};
    const auto signed_total = static_cast<std::int64_t>(colorings);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < signed_total; ++i) {
      if (counterexample.load(std::memory_order_relaxed)) continue;
      auto digits = digits_of(static_cast<std::uint64_t>(i), cells, static_cast<int>(q));
      if (options.prune_color_symmetry) {
        int max_seen = -1;
        bool rgs = true;
        for (int d : digits) {
          if (d > max_seen + 1) {
            rgs = false;
            break;
          }
          max_seen = std::max(max_seen, d);
        }
        if (!rgs) continue;
      }
      if (!has_line(CubeColoring(alphabet, n, std::move(digits)))) counterexample.store(true);
    }
    if (!counterexample.load()) {
      result.holds_at.push_back(n);
      if (!result.least) result.least = n;
    }
  }
  return result;
}

}  // namespace hjcs
