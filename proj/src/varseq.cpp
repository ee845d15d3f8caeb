#include "hjcs/varseq.hpp"

#include <algorithm>
#include <string>

#include "hjcs/errors.hpp"

namespace hjcs {

VarSeq::VarSeq(std::vector<VariableWord> items) : prefix_(std::move(items)), budget_(prefix_.size()) {}

VarSeq::VarSeq(std::vector<VariableWord> prefix, Generator generator, std::size_t budget)
    : prefix_(std::move(prefix)), budget_(budget) {
  if (generator) generator_ = std::make_shared<const Generator>(std::move(generator));
  if (!generator_) budget_ = prefix_.size();
  if (prefix_.size() > budget_) prefix_.resize(budget_, VariableWord::x());
}

VarSeq VarSeq::all_x(std::size_t budget) {
  return VarSeq({}, [](std::size_t) { return VariableWord::x(); }, budget);
}

VariableWord VarSeq::item(std::size_t i) const {
  if (i >= budget_) {
    throw InsufficientPrefix("item " + std::to_string(i) + " requested from a sequence of " +
                             std::to_string(budget_));
  }
  if (i < prefix_.size()) return prefix_[i];
  return (*generator_)(offset_ + i - prefix_.size());
}

std::vector<VariableWord> VarSeq::materialize(std::size_t count) const {
  std::vector<VariableWord> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(item(i));
  return out;
}

VarSeq VarSeq::tail(std::size_t m) const {
  if (m > budget_) throw InsufficientPrefix("tail past the end of the sequence");
  VarSeq out;
  out.budget_ = budget_ - m;
  if (m <= prefix_.size()) {
    out.prefix_.assign(prefix_.begin() + static_cast<std::ptrdiff_t>(m), prefix_.end());
    out.generator_ = generator_;
    out.offset_ = offset_;
  } else {
    out.generator_ = generator_;
    out.offset_ = offset_ + (m - prefix_.size());
  }
  return out;
}

VarSeq VarSeq::splice(std::vector<VariableWord> head, const VarSeq& rest) {
  VarSeq out;
  out.budget_ = head.size() + rest.budget_;
  out.prefix_ = std::move(head);
  out.prefix_.insert(out.prefix_.end(), rest.prefix_.begin(), rest.prefix_.end());
  out.generator_ = rest.generator_;
  out.offset_ = rest.offset_;
  return out;
}

namespace {

VariableWord shifted_item(const VarSeq& s, std::size_t i) {
  const auto next_star = star(s.item(i + 1));
  if (i == 0) return concat(s.item(0), next_star);
  return concat(double_star(s.item(i)), next_star);
}

}  // namespace

VarSeq shift(const VarSeq& s) {
  if (s.available() < 2) throw InsufficientPrefix("shift needs at least two items");
  const std::size_t stored = s.prefix().size() >= 2 ? s.prefix().size() - 1 : 0;
  std::vector<VariableWord> prefix;
  prefix.reserve(stored);
  for (std::size_t i = 0; i < stored; ++i) prefix.push_back(shifted_item(s, i));
  if (!s.has_generator()) return VarSeq(std::move(prefix));
  return VarSeq(std::move(prefix), [s, stored](std::size_t j) { return shifted_item(s, j + stored); },
                s.available() - 1);
}

}  // namespace hjcs
