#include "hjcs/span.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "hjcs/errors.hpp"

namespace hjcs {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) return std::numeric_limits<std::uint64_t>::max();
  return a + b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) out = sat_mul(out, base);
  return out;
}

void SpanQuery::validate() const {
  if (seq.empty()) throw std::invalid_argument("span query needs at least one word");
  if (seq.size() != alphabets.size()) throw std::invalid_argument("one alphabet per word required");
  for (const auto& a : alphabets) {
    if (a.empty()) throw std::invalid_argument("empty alphabet in span query");
  }
}

std::uint64_t span_selection_count(const SpanQuery& q) {
  q.validate();
  std::uint64_t p0 = 1, p1 = 1, p2 = 1;
  for (const auto& a : q.alphabets) {
    p0 = sat_mul(p0, a.size());
    p1 = sat_mul(p1, a.size() + 1);
    p2 = sat_mul(p2, a.size() + 2);
  }
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  switch (q.kind) {
    case SpanKind::kReducedConstant: return p0;
    case SpanKind::kReducedVariable: return p1 == kMax ? kMax : p1 - p0;
    case SpanKind::kExtractedConstant: return p1 == kMax ? kMax : p1 - 1;
    case SpanKind::kExtractedVariable: return p2 == kMax ? kMax : p2 - p1;
  }
  return 0;
}

namespace {

std::vector<Symbol> options_for(const LetterSet& alphabet, bool variable) {
  std::vector<Symbol> out;
  if (variable) out.push_back(kVariable);
  out.insert(out.end(), alphabet.begin(), alphabet.end());
  return out;
}

// Visits the tuples for one index subset; stops (returns false) on request.
bool visit_subset(const SpanQuery& q, const std::vector<std::size_t>& indices,
                  const std::function<bool(const AnyWord&, const SpanSelection&)>& visit) {
  const bool variable = is_variable_kind(q.kind);
  std::vector<std::vector<Symbol>> options;
  options.reserve(indices.size());
  for (auto i : indices) options.push_back(options_for(q.alphabets[i], variable));
  std::vector<Symbol> buffer;
  return for_each_tuple(options, [&](std::span<const Symbol> tuple) {
    bool any_x = std::find(tuple.begin(), tuple.end(), kVariable) != tuple.end();
    if (variable && !any_x) return true;
    buffer.clear();
    for (std::size_t j = 0; j < indices.size(); ++j) {
      for (auto s : q.seq[indices[j]].symbols()) buffer.push_back(s == kVariable ? tuple[j] : s);
    }
    SpanSelection sel{indices, std::vector<Symbol>(tuple.begin(), tuple.end())};
    AnyWord w = any_x ? AnyWord(VariableWord::unchecked(buffer)) : AnyWord(Word::unchecked(buffer));
    return visit(w, sel);
  });
}

}  // namespace

bool for_each_subset_selection(const SpanQuery& q, const std::vector<std::size_t>& indices,
                               const std::function<bool(const AnyWord&, const SpanSelection&)>& visit) {
  return visit_subset(q, indices, visit);
}

void for_each_span_selection(const SpanQuery& q,
                             const std::function<bool(const AnyWord&, const SpanSelection&)>& visit) {
  q.validate();
  const std::size_t m = q.seq.size();
  if (!is_extracted(q.kind)) {
    std::vector<std::size_t> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = i;
    visit_subset(q, all, visit);
    return;
  }
  // Subsets are walked as bitmasks. Membership tests have no such limit.
  if (m >= 64) throw std::invalid_argument("extracted enumeration over too many words");
  const std::uint64_t limit = std::uint64_t{1} << m;
  std::vector<std::size_t> indices;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    indices.clear();
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::uint64_t{1} << i)) indices.push_back(i);
    }
    if (!visit_subset(q, indices, visit)) return;
  }
}

std::vector<AnyWord> enumerate_span(const SpanQuery& q, std::uint64_t cap) {
  const auto count = span_selection_count(q);
  if (count > cap) throw CapExceeded("span enumeration", count);
  std::vector<AnyWord> out;
  std::set<std::vector<Symbol>> seen;
  for_each_span_selection(q, [&](const AnyWord& w, const SpanSelection&) {
    auto sym = symbols_of(w);
    if (seen.emplace(sym.begin(), sym.end()).second) out.push_back(w);
    return true;
  });
  return out;
}

namespace {

// Matches word item `s` against w[offset, offset+|s|) and returns the symbol
// that x must stand for, or nullopt if the segment does not fit.
std::optional<Symbol> forced_symbol(const VariableWord& s, std::span<const Symbol> w, std::size_t offset,
                                    const LetterSet& alphabet, bool variable) {
  if (offset + s.size() > w.size()) return std::nullopt;
  std::optional<Symbol> b;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const Symbol c = w[offset + j];
    if (s[j] != kVariable) {
      if (s[j] != c) return std::nullopt;
    } else if (!b) {
      b = c;
    } else if (*b != c) {
      return std::nullopt;
    }
  }
  if (*b == kVariable) return variable ? b : std::nullopt;
  if (!contains(alphabet, *b)) return std::nullopt;
  return b;
}

std::optional<SpanSelection> reduced_contains(const SpanQuery& q, std::span<const Symbol> w, bool variable) {
  std::size_t total = 0;
  for (const auto& s : q.seq) total += s.size();
  if (total != w.size()) return std::nullopt;
  SpanSelection sel;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < q.seq.size(); ++i) {
    auto b = forced_symbol(q.seq[i], w, offset, q.alphabets[i], variable);
    if (!b) return std::nullopt;
    sel.indices.push_back(i);
    sel.symbols.push_back(*b);
    offset += q.seq[i].size();
  }
  return sel;
}

std::optional<SpanSelection> extracted_contains(const SpanQuery& q, std::span<const Symbol> w, bool variable) {
  const std::size_t m = q.seq.size();
  const std::size_t len = w.size();
  if (len == 0) return std::nullopt;
  // match[i][p]: word i fits at offset p. reach[i][p]: w[0,p) is a product of
  // a subset of words with index < i.
  std::vector<std::vector<std::optional<Symbol>>> match(m, std::vector<std::optional<Symbol>>(len + 1));
  std::vector<std::vector<char>> reach(m + 1, std::vector<char>(len + 1, 0));
  reach[0][0] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    const auto li = q.seq[i].size();
    for (std::size_t p = 0; p + li <= len; ++p) match[i][p] = forced_symbol(q.seq[i], w, p, q.alphabets[i], variable);
    for (std::size_t p = 0; p <= len; ++p) {
      reach[i + 1][p] = reach[i][p] || (p >= li && reach[i][p - li] && match[i][p - li].has_value());
    }
  }
  if (!reach[m][len]) return std::nullopt;
  // Least bitmask: the highest used index is as small as possible, then the
  // next highest, and so on.
  SpanSelection sel;
  std::size_t end = len;
  std::size_t hi = m;
  while (end > 0) {
    bool found = false;
    for (std::size_t j = 0; j < hi; ++j) {
      const auto lj = q.seq[j].size();
      if (lj <= end && match[j][end - lj] && reach[j][end - lj]) {
        sel.indices.push_back(j);
        sel.symbols.push_back(*match[j][end - lj]);
        end -= lj;
        hi = j;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;  // unreachable when reach[m][len] holds
  }
  std::reverse(sel.indices.begin(), sel.indices.end());
  std::reverse(sel.symbols.begin(), sel.symbols.end());
  return sel;
}

}  // namespace

std::optional<SpanSelection> span_contains(const SpanQuery& q, const AnyWord& w) {
  q.validate();
  const bool variable = is_variable_kind(q.kind);
  if (variable != is_variable(w)) return std::nullopt;
  auto sym = symbols_of(w);
  return is_extracted(q.kind) ? extracted_contains(q, sym, variable) : reduced_contains(q, sym, variable);
}

namespace {

std::size_t letters_from(const VarSeq& s, std::size_t start) {
  std::size_t total = 0;
  for (std::size_t i = start; i < s.available(); ++i) total += s.item(i).size();
  return total;
}

std::size_t total_length(std::span<const VariableWord> t, std::size_t from) {
  std::size_t total = 0;
  for (std::size_t i = from; i < t.size(); ++i) total += t[i].size();
  return total;
}

SpanQuery window_query(const VarSeq& s, std::size_t start, std::size_t end, std::size_t k,
                       const AlphabetLadder& ladder, SpanKind kind) {
  SpanQuery q;
  q.kind = kind;
  for (std::size_t i = start; i < end; ++i) {
    q.seq.push_back(s.item(i));
    q.alphabets.push_back(ladder.level(k + i));
  }
  return q;
}

void shift_indices(SpanSelection& sel, std::size_t by) {
  for (auto& i : sel.indices) i += by;
}

}  // namespace

std::optional<BlockWitness> is_reduced_block_subseq(std::span<const VariableWord> t, const VarSeq& s,
                                                    std::size_t k, const AlphabetLadder& ladder) {
  BlockWitness witness;
  witness.cuts.push_back(0);
  std::size_t pos = 0;
  for (const auto& ti : t) {
    const std::size_t start = pos;
    std::size_t covered = 0;
    while (covered < ti.size()) {
      if (pos >= s.available()) throw InsufficientPrefix("parent sequence too short for reduced block");
      covered += s.item(pos).size();
      ++pos;
    }
    if (covered != ti.size()) return std::nullopt;
    auto q = window_query(s, start, pos, k, ladder, SpanKind::kReducedVariable);
    auto sel = span_contains(q, ti);
    if (!sel) return std::nullopt;
    shift_indices(*sel, start);
    witness.cuts.push_back(pos);
    witness.selections.push_back(std::move(*sel));
  }
  return witness;
}

std::optional<BlockWitness> is_extracted_block_subseq(std::span<const VariableWord> t, const VarSeq& s,
                                                      std::size_t k, const AlphabetLadder& ladder) {
  BlockWitness witness;
  witness.cuts.push_back(0);
  std::size_t pos = 0;
  for (std::size_t ti_index = 0; ti_index < t.size(); ++ti_index) {
    const auto& ti = t[ti_index];
    const auto target = ti.symbols();
    const std::size_t start = pos;
    // reach[p]: ti[0,p) is a product of a subset of the items seen so far.
    std::vector<char> reach(ti.size() + 1, 0);
    reach[0] = 1;
    std::optional<std::size_t> end;
    for (std::size_t j = start; j < s.available() && !end; ++j) {
      const auto item = s.item(j);
      const auto alphabet = ladder.level(k + j);
      for (std::size_t p = ti.size(); p-- > 0;) {
        if (reach[p] && forced_symbol(item, target, p, alphabet, true) && p + item.size() <= ti.size()) {
          reach[p + item.size()] = 1;
        }
      }
      if (reach[ti.size()]) end = j + 1;
    }
    if (!end) {
      if (letters_from(s, start) < total_length(t, ti_index)) {
        throw InsufficientPrefix("parent sequence too short for extracted block");
      }
      return std::nullopt;
    }
    auto q = window_query(s, start, *end, k, ladder, SpanKind::kExtractedVariable);
    auto sel = span_contains(q, ti);
    if (!sel) return std::nullopt;
    shift_indices(*sel, start);
    pos = *end;
    witness.cuts.push_back(pos);
    witness.selections.push_back(std::move(*sel));
  }
  return witness;
}

std::optional<BlockWitness> is_block_subseq(SpanKind kind, std::span<const VariableWord> t, const VarSeq& s,
                                            std::size_t k, const AlphabetLadder& ladder) {
  return is_extracted(kind) ? is_extracted_block_subseq(t, s, k, ladder)
                            : is_reduced_block_subseq(t, s, k, ladder);
}

}  // namespace hjcs
