#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hjcs/ladder.hpp"
#include "hjcs/varseq.hpp"
#include "hjcs/word.hpp"

namespace hjcs {

enum class SpanKind { kReducedConstant, kReducedVariable, kExtractedConstant, kExtractedVariable };

constexpr bool is_extracted(SpanKind k) {
  return k == SpanKind::kExtractedConstant || k == SpanKind::kExtractedVariable;
}
constexpr bool is_variable_kind(SpanKind k) {
  return k == SpanKind::kReducedVariable || k == SpanKind::kExtractedVariable;
}

/// Words s_0..s_m with one alphabet per word.
struct SpanQuery {
  std::vector<VariableWord> seq;
  std::vector<LetterSet> alphabets;
  SpanKind kind = SpanKind::kReducedConstant;

  /// Throws std::invalid_argument on mismatched lengths or empty alphabets.
  void validate() const;
};

/// Which words of the query were used and what each x became.
struct SpanSelection {
  std::vector<std::size_t> indices;
  std::vector<Symbol> symbols;
  friend bool operator==(const SpanSelection&, const SpanSelection&) = default;
};

/// Number of selections the enumeration visits, before deduplication:
///   reduced-constant   prod |B_i|
///   reduced-variable   prod (|B_i|+1) - prod |B_i|
///   extracted-constant prod (|B_i|+1) - 1
///   extracted-variable prod (|B_i|+2) - prod (|B_i|+1)
/// Saturates at UINT64_MAX.
std::uint64_t span_selection_count(const SpanQuery& q);

/// Visits every selection in the normative order: index subsets by increasing
/// bitmask (reduced kinds use only the full set), then symbol tuples in
/// lexicographic order with x first. Duplicated words are visited again.
/// The visitor returns false to stop.
void for_each_span_selection(const SpanQuery& q,
                             const std::function<bool(const AnyWord&, const SpanSelection&)>& visit);

/// The part of the enumeration that uses exactly the given increasing index
/// subset. Returns false if the visitor stopped it.
bool for_each_subset_selection(const SpanQuery& q, const std::vector<std::size_t>& indices,
                               const std::function<bool(const AnyWord&, const SpanSelection&)>& visit);

/// Distinct members in first-visit order. Throws CapExceeded when the
/// selection count is above `cap`.
std::vector<AnyWord> enumerate_span(const SpanQuery& q, std::uint64_t cap);

/// The first selection (in enumeration order) producing `w`, if any.
std::optional<SpanSelection> span_contains(const SpanQuery& q, const AnyWord& w);

/// Cuts 0 = m_0 < ... < m_{l+1} into the parent plus the selection inside each
/// window; selection indices are absolute positions in the parent.
struct BlockWitness {
  std::vector<std::size_t> cuts;
  std::vector<SpanSelection> selections;
};

/// Decides t ⊴_k s for reduced spans. Window lengths are forced by lengths,
/// so the witness is unique. Throws InsufficientPrefix when the available
/// items of `s` run out before `t` is covered.
std::optional<BlockWitness> is_reduced_block_subseq(std::span<const VariableWord> t, const VarSeq& s,
                                                    std::size_t k, const AlphabetLadder& ladder);

/// Decides t ⊴_k s for extracted spans and returns the lexicographically
/// least (cuts, inner indices) witness. Throws InsufficientPrefix when the
/// remaining items of `s` hold fewer letters than the rest of `t` needs.
std::optional<BlockWitness> is_extracted_block_subseq(std::span<const VariableWord> t, const VarSeq& s,
                                                      std::size_t k, const AlphabetLadder& ladder);

std::optional<BlockWitness> is_block_subseq(SpanKind kind, std::span<const VariableWord> t, const VarSeq& s,
                                            std::size_t k, const AlphabetLadder& ladder);

/// Calls visit(tuple) for every element of options[0] x options[1] x ... in
/// lexicographic order; stops when visit returns false. Returns false if
/// stopped early.
template <class T, class F>
bool for_each_tuple(const std::vector<std::vector<T>>& options, F&& visit) {
  for (const auto& o : options) {
    if (o.empty()) return true;
  }
  std::vector<std::size_t> idx(options.size(), 0);
  std::vector<T> tuple(options.size());
  for (std::size_t i = 0; i < options.size(); ++i) tuple[i] = options[i][0];
  while (true) {
    if (!visit(std::span<const T>(tuple))) return false;
    std::size_t pos = options.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < options[pos].size()) {
        tuple[pos] = options[pos][idx[pos]];
        break;
      }
      idx[pos] = 0;
      tuple[pos] = options[pos][0];
      if (pos == 0) return true;
    }
    if (options.empty()) return true;
  }
}

/// Saturating helpers for closed-form counts.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp);

}  // namespace hjcs
