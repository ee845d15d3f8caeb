#include "hjcs/word.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace hjcs {

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (auto l : letters_) {
    if (l < 0) throw std::invalid_argument("constant word contains the variable or a negative id");
  }
}

VariableWord::VariableWord(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  bool has_x = false;
  for (auto s : symbols_) {
    if (s == kVariable) {
      has_x = true;
    } else if (s < 0) {
      throw std::invalid_argument("negative letter id");
    }
  }
  if (!has_x) throw std::invalid_argument("variable word must contain x");
}

std::size_t VariableWord::variable_count() const noexcept {
  return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), kVariable));
}

Word substitute(const VariableWord& v, Letter a) {
  std::vector<Letter> out;
  out.reserve(v.size());
  append_substituted(out, v, a);
  return Word::unchecked(std::move(out));
}

void append_substituted(std::vector<Letter>& out, const VariableWord& v, Letter a) {
  for (auto s : v.symbols()) out.push_back(s == kVariable ? a : s);
}

namespace {

template <class A, class B>
std::vector<Symbol> joined(const A& u, const B& w) {
  std::vector<Symbol> out;
  out.reserve(u.size() + w.size());
  out.insert(out.end(), u.vec().begin(), u.vec().end());
  out.insert(out.end(), w.vec().begin(), w.vec().end());
  return out;
}

}  // namespace

Word concat(const Word& u, const Word& w) { return Word::unchecked(joined(u, w)); }
VariableWord concat(const Word& u, const VariableWord& w) { return VariableWord::unchecked(joined(u, w)); }
VariableWord concat(const VariableWord& u, const Word& w) { return VariableWord::unchecked(joined(u, w)); }
VariableWord concat(const VariableWord& u, const VariableWord& w) {
  return VariableWord::unchecked(joined(u, w));
}

AnyWord concat(const AnyWord& u, const AnyWord& w) {
  return std::visit([](const auto& a, const auto& b) -> AnyWord { return concat(a, b); }, u, w);
}

Word star(const VariableWord& v) {
  auto first = std::find(v.vec().begin(), v.vec().end(), kVariable);
  return Word::unchecked(std::vector<Letter>(v.vec().begin(), first));
}

VariableWord double_star(const VariableWord& v) {
  auto first = std::find(v.vec().begin(), v.vec().end(), kVariable);
  return VariableWord::unchecked(std::vector<Symbol>(first, v.vec().end()));
}

std::pair<Word, VariableWord> split_star(const VariableWord& v) { return {star(v), double_star(v)}; }

std::span<const Symbol> symbols_of(const AnyWord& w) {
  return std::visit([](const auto& x) -> std::span<const Symbol> { return x.vec(); }, w);
}

bool is_variable(const AnyWord& w) noexcept { return std::holds_alternative<VariableWord>(w); }

std::string render_symbols(std::span<const Symbol> symbols) {
  if (symbols.empty()) return std::string(kEmptyWordToken);
  const bool compact = std::all_of(symbols.begin(), symbols.end(), [](Symbol s) { return s < 10; });
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!compact && i > 0) out += '.';
    if (symbols[i] == kVariable) {
      out += 'x';
    } else {
      out += std::to_string(symbols[i]);
    }
  }
  if (!compact && symbols.size() == 1) out += '.';
  return out;
}

std::string to_string(const Word& w) { return render_symbols(w.letters()); }
std::string to_string(const VariableWord& v) { return render_symbols(v.symbols()); }
std::string to_string(const AnyWord& w) { return render_symbols(symbols_of(w)); }

namespace {

Symbol parse_token(std::string_view tok) {
  if (tok == "x") return kVariable;
  if (tok.empty()) throw std::invalid_argument("empty letter token");
  Symbol value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 0) {
    throw std::invalid_argument("bad letter token '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

std::vector<Symbol> parse_symbols(std::string_view text) {
  std::vector<Symbol> out;
  if (text == kEmptyWordToken) return out;
  if (text.empty()) throw std::invalid_argument("empty word text (use ε)");
  if (text.find('.') != std::string_view::npos) {
    if (text.back() == '.') text.remove_suffix(1);
    std::size_t start = 0;
    while (true) {
      auto dot = text.find('.', start);
      out.push_back(parse_token(text.substr(start, dot - start)));
      if (dot == std::string_view::npos) break;
      start = dot + 1;
    }
    return out;
  }
  for (char c : text) out.push_back(parse_token(std::string_view(&c, 1)));
  return out;
}

Word parse_word(std::string_view text) { return Word(parse_symbols(text)); }
VariableWord parse_variable_word(std::string_view text) { return VariableWord(parse_symbols(text)); }

AnyWord parse_any_word(std::string_view text) {
  auto symbols = parse_symbols(text);
  if (std::find(symbols.begin(), symbols.end(), kVariable) != symbols.end()) {
    return VariableWord::unchecked(std::move(symbols));
  }
  return Word::unchecked(std::move(symbols));
}

}  // namespace hjcs
