#include "hjcs/ladder.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace hjcs {

bool contains(const LetterSet& set, Letter a) { return std::binary_search(set.begin(), set.end(), a); }

LetterSet letter_range(std::size_t size) {
  LetterSet out(size);
  for (std::size_t i = 0; i < size; ++i) out[i] = static_cast<Letter>(i);
  return out;
}

AlphabetLadder::AlphabetLadder(std::vector<LetterSet> explicit_levels, TailRule tail, std::size_t step)
    : explicit_(std::move(explicit_levels)), tail_(tail), step_(step) {
  if (explicit_.empty()) throw std::invalid_argument("ladder needs at least one explicit level");
  for (auto& level : explicit_) {
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
    if (level.empty()) throw std::invalid_argument("ladder level is empty");
    if (level.front() < 0) throw std::invalid_argument("negative letter id in ladder");
  }
  for (std::size_t i = 1; i < explicit_.size(); ++i) {
    if (!std::includes(explicit_[i].begin(), explicit_[i].end(), explicit_[i - 1].begin(),
                       explicit_[i - 1].end())) {
      throw std::invalid_argument("ladder levels must be increasing (level " + std::to_string(i) + ")");
    }
  }
  if (tail_ == TailRule::kArithmetic && step_ == 0) tail_ = TailRule::kConstant;
  if (tail_ == TailRule::kConstant) step_ = 0;
}

AlphabetLadder AlphabetLadder::constant(std::size_t size) {
  if (size == 0) throw std::invalid_argument("empty alphabet");
  return AlphabetLadder({letter_range(size)});
}

LetterSet AlphabetLadder::level(std::size_t n) const {
  if (n < explicit_.size()) return explicit_[n];
  LetterSet out = explicit_.back();
  if (tail_ == TailRule::kArithmetic) {
    const std::size_t extra = step_ * (n - explicit_.size() + 1);
    Letter next = out.back() + 1;
    for (std::size_t i = 0; i < extra; ++i) out.push_back(next++);
  }
  return out;
}

std::size_t AlphabetLadder::level_size(std::size_t n) const {
  if (n < explicit_.size()) return explicit_[n].size();
  return explicit_.back().size() + (tail_ == TailRule::kArithmetic ? step_ * (n - explicit_.size() + 1) : 0);
}

std::vector<LetterSet> AlphabetLadder::levels(std::size_t offset, std::size_t count) const {
  std::vector<LetterSet> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(level(offset + i));
  return out;
}

namespace {

bool is_prefix_range(const LetterSet& set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] != static_cast<Letter>(i)) return false;
  }
  return true;
}

std::size_t parse_count(std::string_view tok) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw std::invalid_argument("bad number '" + std::string(tok) + "' in ladder");
  }
  return value;
}

std::vector<std::string_view> split_top_level(std::string_view text) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '{') ++depth;
    if (text[i] == '}') --depth;
    if (text[i] == ',' && depth == 0) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(text.substr(start));
  return parts;
}

}  // namespace

AlphabetLadder AlphabetLadder::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty ladder");
  TailRule tail = TailRule::kConstant;
  std::size_t step = 0;
  // A trailing "+" or "+k" belongs to the last level.
  auto plus = text.rfind('+');
  if (plus != std::string_view::npos) {
    auto rest = text.substr(plus + 1);
    if (!rest.empty()) {
      step = parse_count(rest);
      tail = TailRule::kArithmetic;
    }
    text = text.substr(0, plus);
  }
  std::vector<LetterSet> levels;
  for (auto part : split_top_level(text)) {
    if (!part.empty() && part.front() == '{') {
      if (part.back() != '}') throw std::invalid_argument("unterminated brace in ladder");
      LetterSet set;
      auto body = part.substr(1, part.size() - 2);
      std::size_t start = 0;
      while (start <= body.size() && !body.empty()) {
        auto comma = body.find(',', start);
        set.push_back(static_cast<Letter>(parse_count(body.substr(start, comma - start))));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      levels.push_back(std::move(set));
    } else {
      auto size = parse_count(part);
      if (size == 0) throw std::invalid_argument("empty alphabet level");
      levels.push_back(letter_range(size));
    }
  }
  return AlphabetLadder(std::move(levels), tail, step);
}

std::string AlphabetLadder::describe() const {
  const bool ranges = std::all_of(explicit_.begin(), explicit_.end(), is_prefix_range);
  std::string out;
  for (std::size_t i = 0; i < explicit_.size(); ++i) {
    if (i > 0) out += ',';
    if (ranges) {
      out += std::to_string(explicit_[i].size());
    } else {
      out += '{';
      for (std::size_t j = 0; j < explicit_[i].size(); ++j) {
        if (j > 0) out += ',';
        out += std::to_string(explicit_[i][j]);
      }
      out += '}';
    }
  }
  // A single constant level prints as "p"; anything else carries its tail.
  if (tail_ == TailRule::kArithmetic) {
    out += '+' + std::to_string(step_);
  } else if (explicit_.size() > 1) {
    out += '+';
  }
  return out;
}

}  // namespace hjcs
