#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hjcs/largeness.hpp"
#include "hjcs/ladder.hpp"
#include "hjcs/span.hpp"
#include "hjcs/varseq.hpp"

namespace hjcs {

/// Step n >= 1 of an iterated extraction: w_{n-1} sits in the first m_n items
/// of t_{n-1}, and t_n is a block subsequence of t_{n-1} from item m_n on.
struct FusionStep {
  std::size_t m = 1;      // m_n
  std::size_t k = 0;      // k_n
  VariableWord w = VariableWord::x();  // w_{n-1}
  VarSeq t;               // t_n
  BlockCuts cuts;         // t_n inside (t_{n-1} items m_n, m_n + 1, ...)
};

/// Start of w_n inside t_0 for n = 0..steps.size(), via the table
/// p[n][n] = 0, p[n][l-1] = m_l + cuts_l(p[n][l]). Throws WitnessInconsistent
/// when k_n != k_{n-1} + m_n, m_n < 1, cuts are malformed, or w_{n-1} is
/// not in the variable span of the first m_n items of t_{n-1}. `kind` picks
/// reduced or extracted spans (kReducedVariable or kExtractedVariable).
std::vector<std::size_t> fusion_reindex(std::size_t k0, const VarSeq& t0, const std::vector<FusionStep>& steps,
                                        const AlphabetLadder& ladder, SpanKind kind = SpanKind::kReducedVariable);

struct FusionCheck {
  bool c1 = true;  // k_0 + p_n >= k_n
  bool c2 = true;  // w_n in the variable span of t_0 items [p_n, p_{n+1})
  bool c3 = true;  // (w_i)_{i>=n} is a k_n-block subsequence of t_n
  std::string detail;
  bool ok() const { return c1 && c2 && c3; }
};

/// Rechecks the three conclusions on the materialized data.
FusionCheck check_fusion(std::size_t k0, const VarSeq& t0, const std::vector<FusionStep>& steps,
                         const std::vector<std::size_t>& p, const AlphabetLadder& ladder,
                         SpanKind kind = SpanKind::kReducedVariable);

}  // namespace hjcs
