#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hjcs/ladder.hpp"
#include "hjcs/set_oracle.hpp"
#include "hjcs/span.hpp"
#include "hjcs/varseq.hpp"
#include "hjcs/word.hpp"

namespace hjcs {

/// Where each item of a block subsequence starts in its parent. Items past
/// the explicit cuts take strides[0], strides[1], ... parent items, cycling.
struct BlockCuts {
  std::vector<std::size_t> cuts{0};
  std::vector<std::size_t> strides{1};

  std::size_t operator()(std::size_t j) const;
  /// Cuts of `inner` (a block subsequence of this one) inside this one's parent.
  BlockCuts compose(const BlockCuts& inner) const;
  static BlockCuts identity() { return BlockCuts{}; }
};

inline constexpr Symbol kSkipped = -2;

enum class ProbeMode { kReducedShifted, kExtracted };
enum class Verdict { kFoundPrefix, kCounterexamplePrefix, kBudgetExhausted };

std::string to_string(Verdict v);

/// One extension checked by the probe and the product found in E, if any.
struct ProbeRecord {
  std::size_t chain_length = 0;
  AnyWord extension;
  std::optional<Word> product;
};

struct LargenessEvidence {
  Verdict verdict = Verdict::kBudgetExhausted;
  /// The chain w_0..w_r; cuts[i]..cuts[i+1] is the parent window of w_i.
  std::vector<VariableWord> prefix;
  std::vector<std::size_t> cuts{0};
  /// Per chain item, what happens to each parent item of its window: a
  /// letter, kVariable, or kSkipped (extracted mode only).
  std::vector<std::vector<Symbol>> patterns;
  std::vector<ProbeRecord> records;
  std::uint64_t evaluations = 0;
};

struct ProbeOptions {
  std::size_t max_chain = 6;
  std::size_t extension_depth = 3;
  std::uint64_t eval_budget = 200'000;
};

/// Bounded form of the largeness test. The chain starts at s_0 and grows by
/// one bad extension whenever some extension admits no good product.
///
/// reduced-shifted: the extensions are the constant prefixes
///   s_{n0}(b_0)...s_{n0+i-1}(b_{i-1}) s_{n0+i}^*  (i < extension_depth),
/// and a good product is w_0(a_0)...w_r(a_r) tau in E with a_j in A_{k+j}.
/// extracted: the extensions are the extracted variable span of the next
/// extension_depth items, and a good product is v w(a) in E with v in the
/// extracted constant span of the chain and a in A_{k+r+1}.
LargenessEvidence largeness_probe(const SetOracle& e, const VarSeq& s, std::size_t k, const AlphabetLadder& ladder,
                                  ProbeMode mode, const ProbeOptions& options = {});

struct RefineResult {
  std::size_t index = 0;
  VarSeq t;
  BlockCuts cuts;  // t inside s
  LargenessEvidence evidence;
  std::vector<std::string> transcript;
};

/// Receives transcript lines as they are produced.
using Sink = std::function<void(const std::string&)>;

/// Probes the parts in order and passes to the counterexample subsequence
/// after each rejected part. Past the bad chain that subsequence repeats the
/// last bad item's pattern on later parent items, so it stays hostile to the
/// rejected part further out than the chain itself reaches. Parts whose
/// probe runs out of budget are skipped. Throws Inconclusive when no part certifies.
RefineResult color_refine(std::size_t part_count, const std::function<SetOracle(std::size_t)>& part, const VarSeq& s,
                          std::size_t k, const AlphabetLadder& ladder, ProbeMode mode,
                          const ProbeOptions& options = {}, const Sink& sink = {});
RefineResult color_refine(const std::vector<SetOracle>& parts, const VarSeq& s, std::size_t k,
                          const AlphabetLadder& ladder, ProbeMode mode, const ProbeOptions& options = {},
                          const Sink& sink = {});

struct MonoWord {
  std::size_t m = 0;  // index of the last item the span may use
  VariableWord w = VariableWord::x();
  SpanSelection selection;
};

struct MonoOptions {
  std::size_t max_items = 8;
  std::uint64_t eval_budget = 2'000'000;
  std::uint64_t hj_cap = 10'000'000;
};

/// Alphabet of item i of the sequence being searched.
using LevelFn = std::function<LetterSet(std::size_t)>;

/// Scans the extracted variable span of s_0..s_m for m = 0, 1, ... (only
/// selections using s_m are new at step m) for a word with w(a) in E for
/// every a in level(0). Returns nullopt when max_items or the sequence runs
/// out; throws BudgetExhausted when eval_budget runs out.
std::optional<MonoWord> one_mono_word(const SetOracle& e, const VarSeq& s, const LevelFn& level,
                                      const MonoOptions& options = {});
std::optional<MonoWord> one_mono_word(const SetOracle& e, const VarSeq& s, std::size_t k,
                                      const AlphabetLadder& ladder, const MonoOptions& options = {});

/// The subset-coloring construction: builds a bad chain one block at a time
/// by finding monochromatic lines for the coloring that records, for each
/// optional-letter tuple over the chain, whether the product lands in E.
/// Stops as soon as some line's color admits a product inside E. Only
/// feasible for tiny alphabets.
std::optional<MonoWord> one_mono_word_literal(const SetOracle& e, const VarSeq& s, std::size_t k,
                                              const AlphabetLadder& ladder, const MonoOptions& options = {});

}  // namespace hjcs
