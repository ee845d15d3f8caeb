#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hjcs/certificate.hpp"
#include "hjcs/coloring.hpp"
#include "hjcs/fusion.hpp"
#include "hjcs/ladder.hpp"
#include "hjcs/largeness.hpp"
#include "hjcs/set_oracle.hpp"
#include "hjcs/varseq.hpp"

namespace hjcs {

struct StepOptions {
  ProbeOptions probe;
  MonoOptions mono;
  /// Iterative deepening on the line dimension N stops here.
  std::size_t max_dimension = 4;
  std::uint64_t hj_cap = 10'000'000;
  /// Membership tests spent building one induced cube coloring.
  std::uint64_t cube_budget = 2'000'000;
  /// Receives each transcript line as it is produced.
  Sink sink;
};

/// One application of the single-step lemma.
struct StepResult {
  std::size_t m = 1;
  VariableWord w = VariableWord::x();
  VarSeq t;
  BlockCuts cuts;  // t inside (s_m, s_{m+1}, ...)
  std::vector<Word> f;
  /// E_F for cs_step, E ∩ E_F for carlson_step.
  SetOracle next = SetOracle::everything();
  std::size_t n0 = 0;
  std::size_t dimension = 0;
  std::vector<std::string> transcript;
};

/// Returns nullopt when the probe finds E not large in s (a counterexample
/// chain). Throws BudgetExhausted when the probe, the cube, the line search
/// or the refinement runs out of room.
std::optional<StepResult> cs_step(const SetOracle& e, const VarSeq& s, std::size_t k, const AlphabetLadder& ladder,
                                  const StepOptions& options = {});
std::optional<StepResult> carlson_step(const SetOracle& e, const VarSeq& s, std::size_t k,
                                       const AlphabetLadder& ladder, const StepOptions& options = {});

enum class ExtractMode { kDirect, kProofGuided };

std::string to_string(ExtractMode mode);
ExtractMode parse_extract_mode(std::string_view text);

struct ExtractOptions {
  ExtractMode mode = ExtractMode::kDirect;
  /// Coloring evaluations for the whole run.
  std::uint64_t budget = 10'000'000;
  /// Direct mode: longest word tried.
  std::size_t max_word_length = 8;
  StepOptions step;
  /// Proof-guided mode: longest run of w's merged into one t.
  std::size_t max_block_run = 6;
  /// Length budget of the seed sequence (x, x, ...).
  std::size_t seed_length = 1 << 16;
  /// Receives every transcript line, also when the run fails.
  Sink sink;
};

struct ExtractResult {
  Certificate certificate;
  /// Proof-guided mode: start of each w_n in the refined seed.
  std::vector<std::size_t> fusion;
  std::vector<std::string> transcript;
};

/// Both modes throw BudgetExhausted when the budget runs out and Inconclusive
/// when a bounded search gives up. Neither claims nonexistence. Every result
/// has passed verify_certificate.
ExtractResult cs_extract(const ColoringOracle& c, const AlphabetLadder& ladder, std::size_t depth,
                         const ExtractOptions& options = {});
ExtractResult carlson_extract(const ColoringOracle& c, const AlphabetLadder& ladder, std::size_t depth,
                              const ExtractOptions& options = {});

}  // namespace hjcs
