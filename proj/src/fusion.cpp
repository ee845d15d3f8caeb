#include "hjcs/fusion.hpp"

#include <stdexcept>

#include "hjcs/errors.hpp"
#include "hjcs/span.hpp"

namespace hjcs {

namespace {

const VarSeq& parent_of(std::size_t n, const VarSeq& t0, const std::vector<FusionStep>& steps) {
  return n == 0 ? t0 : steps[n - 1].t;
}

std::size_t level_of(std::size_t n, std::size_t k0, const std::vector<FusionStep>& steps) {
  return n == 0 ? k0 : steps[n - 1].k;
}

bool in_span(SpanKind kind, const VariableWord& w, const VarSeq& s, std::size_t begin, std::size_t end,
             std::size_t k, const AlphabetLadder& ladder) {
  if (end <= begin || end > s.available()) return false;
  SpanQuery q;
  q.kind = kind;
  for (std::size_t i = begin; i < end; ++i) {
    q.seq.push_back(s.item(i));
    q.alphabets.push_back(ladder.level(k + i));
  }
  return span_contains(q, w).has_value();
}

}  // namespace

std::vector<std::size_t> fusion_reindex(std::size_t k0, const VarSeq& t0, const std::vector<FusionStep>& steps,
                                        const AlphabetLadder& ladder, SpanKind kind) {
  for (std::size_t n = 1; n <= steps.size(); ++n) {
    const auto& st = steps[n - 1];
    const std::string at = "step " + std::to_string(n) + ": ";
    if (st.m < 1) throw WitnessInconsistent(at + "m_n must be at least 1");
    if (kind != SpanKind::kReducedVariable && kind != SpanKind::kExtractedVariable) {
      throw std::invalid_argument("fusion needs a variable span kind");
    }
    if (st.k != level_of(n - 1, k0, steps) + st.m) throw WitnessInconsistent(at + "k_n != k_{n-1} + m_n");
    const auto& cuts = st.cuts.cuts;
    if (cuts.empty() || cuts[0] != 0) throw WitnessInconsistent(at + "cuts must start at 0");
    for (std::size_t j = 1; j < cuts.size(); ++j) {
      if (cuts[j] <= cuts[j - 1]) throw WitnessInconsistent(at + "cuts must increase");
    }
    const auto& parent = parent_of(n - 1, t0, steps);
    bool placed = false;
    try {
      placed = in_span(kind, st.w, parent, 0, st.m, level_of(n - 1, k0, steps), ladder);
    } catch (const InsufficientPrefix&) {
      placed = false;
    }
    if (!placed) throw WitnessInconsistent(at + "w_{n-1} is not in the first m_n items of t_{n-1}");
  }
  std::vector<std::size_t> p{0};
  for (std::size_t n = 1; n <= steps.size(); ++n) {
    std::size_t pos = 0;  // p[n][n]
    for (std::size_t l = n; l >= 1; --l) pos = steps[l - 1].m + steps[l - 1].cuts(pos);
    p.push_back(pos);
  }
  return p;
}

FusionCheck check_fusion(std::size_t k0, const VarSeq& t0, const std::vector<FusionStep>& steps,
                         const std::vector<std::size_t>& p, const AlphabetLadder& ladder, SpanKind kind) {
  FusionCheck out;
  std::vector<VariableWord> ws;
  for (const auto& st : steps) ws.push_back(st.w);
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (n > 0 && p[n] <= p[n - 1]) {
      out.c1 = false;
      out.detail += "p not increasing at " + std::to_string(n) + "; ";
    }
    if (k0 + p[n] < level_of(n, k0, steps)) {
      out.c1 = false;
      out.detail += "(C1) fails at " + std::to_string(n) + "; ";
    }
  }
  for (std::size_t n = 0; n + 1 < p.size(); ++n) {
    bool ok = false;
    try {
      ok = in_span(kind, ws[n], t0, p[n], p[n + 1], k0, ladder);
    } catch (const InsufficientPrefix&) {
    }
    if (!ok) {
      out.c2 = false;
      out.detail += "(C2) fails at " + std::to_string(n) + "; ";
    }
  }
  for (std::size_t n = 0; n < ws.size(); ++n) {
    std::vector<VariableWord> rest(ws.begin() + static_cast<std::ptrdiff_t>(n), ws.end());
    bool ok = false;
    try {
      ok = is_block_subseq(kind, rest, parent_of(n, t0, steps), level_of(n, k0, steps), ladder).has_value();
    } catch (const InsufficientPrefix&) {
    }
    if (!ok) {
      out.c3 = false;
      out.detail += "(C3) fails at " + std::to_string(n) + "; ";
    }
  }
  return out;
}

}  // namespace hjcs
