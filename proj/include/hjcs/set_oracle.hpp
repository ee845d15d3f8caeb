#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hjcs/coloring.hpp"
#include "hjcs/word.hpp"

namespace hjcs {

/// Shared evaluation counter. charge() throws BudgetExhausted once the
/// limit is passed; safe to charge from several threads.
class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}
  void charge(std::uint64_t n = 1);
  std::uint64_t used() const noexcept { return used_.load(std::memory_order_relaxed); }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::atomic<std::uint64_t> used_{0};
  std::uint64_t limit_;
};

/// A set E of constant words given by a pure membership test.
class SetOracle {
 public:
  using Member = std::function<bool(std::span<const Letter>)>;

  SetOracle(Member member, std::string description)
      : member_(std::make_shared<const Member>(std::move(member))), description_(std::move(description)) {}

  bool operator()(std::span<const Letter> w) const { return (*member_)(w); }
  bool contains(const Word& w) const { return (*member_)(w.letters()); }
  const std::string& description() const noexcept { return description_; }

  static SetOracle everything();
  static SetOracle nothing();

 private:
  std::shared_ptr<const Member> member_;
  std::string description_;
};

/// E_F = {z : wz in E for every w in F}. Throws std::invalid_argument on an
/// empty F.
SetOracle ef_quotient(const SetOracle& e, std::vector<Word> f);
SetOracle intersect(const SetOracle& a, const SetOracle& b);
/// Words colored `color`. Each evaluation is charged to `budget` when given.
SetOracle color_class(const ColoringOracle& c, int color, std::shared_ptr<Budget> budget = nullptr);

/// Same set; answers are cached so nested quotients stay affordable.
SetOracle memoize(const SetOracle& e);

/// F1 F2 = {w1 w2}.
std::vector<Word> word_product(const std::vector<Word>& f1, const std::vector<Word>& f2);

}  // namespace hjcs
