#include "hjcs/set_oracle.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "hjcs/errors.hpp"

namespace hjcs {

void Budget::charge(std::uint64_t n) {
  const auto before = used_.fetch_add(n, std::memory_order_relaxed);
  if (before + n > limit_) throw BudgetExhausted("evaluation budget of " + std::to_string(limit_) + " exhausted");
}

SetOracle SetOracle::everything() {
  return SetOracle([](std::span<const Letter>) { return true; }, "W(A)");
}

SetOracle SetOracle::nothing() {
  return SetOracle([](std::span<const Letter>) { return false; }, "empty");
}

SetOracle ef_quotient(const SetOracle& e, std::vector<Word> f) {
  if (f.empty()) throw std::invalid_argument("quotient by an empty set");
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  std::string description = e.description() + "_{" + std::to_string(f.size()) + " words}";
  return SetOracle(
      [e, f = std::move(f)](std::span<const Letter> z) {
        std::vector<Letter> buffer;
        for (const auto& w : f) {
          buffer.assign(w.vec().begin(), w.vec().end());
          buffer.insert(buffer.end(), z.begin(), z.end());
          if (!e(buffer)) return false;
        }
        return true;
      },
      std::move(description));
}

SetOracle intersect(const SetOracle& a, const SetOracle& b) {
  return SetOracle([a, b](std::span<const Letter> w) { return a(w) && b(w); },
                   "(" + a.description() + " ∩ " + b.description() + ")");
}

SetOracle color_class(const ColoringOracle& c, int color, std::shared_ptr<Budget> budget) {
  return SetOracle(
      [c, color, budget = std::move(budget)](std::span<const Letter> w) {
        if (budget) budget->charge();
        return c(w) == color;
      },
      "color " + std::to_string(color));
}

SetOracle memoize(const SetOracle& e) {
  struct Cache {
    std::mutex mutex;
    std::unordered_map<Word, bool> answers;
  };
  auto cache = std::make_shared<Cache>();
  return SetOracle(
      [e, cache](std::span<const Letter> w) {
        auto key = Word::unchecked(std::vector<Letter>(w.begin(), w.end()));
        {
          std::lock_guard lock(cache->mutex);
          if (auto it = cache->answers.find(key); it != cache->answers.end()) return it->second;
        }
        const bool answer = e(w);
        std::lock_guard lock(cache->mutex);
        cache->answers.emplace(std::move(key), answer);
        return answer;
      },
      e.description());
}

std::vector<Word> word_product(const std::vector<Word>& f1, const std::vector<Word>& f2) {
  std::vector<Word> out;
  out.reserve(f1.size() * f2.size());
  for (const auto& a : f1) {
    for (const auto& b : f2) out.push_back(concat(a, b));
  }
  return out;
}

}  // namespace hjcs
