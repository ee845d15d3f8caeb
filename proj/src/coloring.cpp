#include "hjcs/coloring.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hjcs/errors.hpp"

namespace hjcs {

bool operator==(const ProductSource& a, const ProductSource& b) { return a.components == b.components; }

int ColoringOracle::operator()(std::span<const Letter> word) const { return eval_(*this, word); }

int ColoringOracle::eval_builtin(const ColoringOracle& c, std::span<const Letter> w) {
  const auto& b = std::get<BuiltinSource>(*c.source_);
  if (b.name == "length-mod") return 1 + static_cast<int>(w.size() % static_cast<std::size_t>(b.params[0]));
  if (b.name == "last-letter") {
    if (w.empty()) return static_cast<int>(b.params[1]);
    return 1 + static_cast<int>(w.back() % b.params[0]);
  }
  if (b.name == "letter-count-mod") {
    const auto n = std::count(w.begin(), w.end(), static_cast<Letter>(b.params[0]));
    return 1 + static_cast<int>(n % b.params[1]);
  }
  return 1;
}

int ColoringOracle::eval_table(const ColoringOracle& c, std::span<const Letter> w) {
  const auto& t = std::get<PrefixTableSource>(*c.source_);
  if (w.size() > t.horizon) return t.default_color;
  const auto& trie = *c.trie_;
  std::uint32_t node = 0;
  int best = trie[0].color;
  for (auto a : w) {
    const auto& kids = trie[node].children;
    auto it = std::lower_bound(kids.begin(), kids.end(), a,
                               [](const std::pair<Letter, std::uint32_t>& e, Letter l) { return e.first < l; });
    if (it == kids.end() || it->first != a) break;
    node = it->second;
    if (trie[node].color != 0) best = trie[node].color;
  }
  return best != 0 ? best : t.default_color;
}

int ColoringOracle::eval_dfa(const ColoringOracle& c, std::span<const Letter> w) {
  const auto& d = std::get<DfaSource>(*c.source_);
  std::size_t state = 0;
  for (auto a : w) {
    if (a < 0 || static_cast<std::size_t>(a) >= d.alphabet_size) {
      throw IncompleteTable("letter " + std::to_string(a) + " outside the automaton alphabet");
    }
    state = static_cast<std::size_t>(d.transitions[state][static_cast<std::size_t>(a)]);
  }
  return d.state_colors[state];
}

int ColoringOracle::eval_product(const ColoringOracle& c, std::span<const Letter> w) {
  const auto& p = std::get<ProductSource>(*c.source_);
  int index = 0;
  for (const auto& comp : p.components) index = index * comp.q() + (comp(w) - 1);
  return index + 1;
}

ColoringOracle ColoringOracle::make(ColoringSource source) {
  ColoringOracle c;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BuiltinSource>) {
          c.eval_ = &eval_builtin;
          if (s.name == "length-mod" || s.name == "last-letter") c.q_ = static_cast<int>(s.params[0]);
          if (s.name == "letter-count-mod") c.q_ = static_cast<int>(s.params[1]);
        } else if constexpr (std::is_same_v<T, PrefixTableSource>) {
          c.eval_ = &eval_table;
          c.q_ = s.q;
          std::vector<TrieNode> trie(1);
          for (const auto& [w, color] : s.entries) {
            std::uint32_t node = 0;
            for (auto a : w.letters()) {
              auto& kids = trie[node].children;
              auto it = std::lower_bound(kids.begin(), kids.end(), a, [](const auto& e, Letter l) { return e.first < l; });
              if (it != kids.end() && it->first == a) {
                node = it->second;
              } else {
                const auto next = static_cast<std::uint32_t>(trie.size());
                kids.insert(it, {a, next});
                trie.emplace_back();
                node = next;
              }
            }
            trie[node].color = color;
          }
          c.trie_ = std::make_shared<const std::vector<TrieNode>>(std::move(trie));
        } else if constexpr (std::is_same_v<T, DfaSource>) {
          c.eval_ = &eval_dfa;
          c.q_ = s.q;
        } else {
          c.eval_ = &eval_product;
          int q = 1;
          for (const auto& comp : s.components) q *= comp.q();
          c.q_ = q;
        }
      },
      source);
  c.source_ = std::make_shared<const ColoringSource>(std::move(source));
  return c;
}

ColoringOracle builtin_coloring(std::string_view name, std::vector<std::int64_t> params) {
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (params.size() < lo || params.size() > hi) {
      throw std::invalid_argument("wrong number of parameters for builtin " + std::string(name));
    }
  };
  if (name == "length-mod") {
    need(1, 1);
    if (params[0] < 1) throw std::invalid_argument("length-mod needs q >= 1");
  } else if (name == "last-letter") {
    need(1, 2);
    if (params[0] < 1) throw std::invalid_argument("last-letter needs q >= 1");
    if (params.size() == 1) params.push_back(1);
    if (params[1] < 1 || params[1] > params[0]) throw std::invalid_argument("last-letter empty-word color out of range");
  } else if (name == "letter-count-mod") {
    need(2, 2);
    if (params[0] < 0 || params[1] < 1) throw std::invalid_argument("letter-count-mod needs letter >= 0, q >= 1");
  } else if (name == "constant") {
    need(0, 0);
  } else {
    throw UnknownName("unknown builtin coloring '" + std::string(name) + "'");
  }
  return ColoringOracle::make(BuiltinSource{std::string(name), std::move(params)});
}

ColoringOracle prefix_table_coloring(std::vector<std::pair<Word, int>> entries, std::size_t horizon, int default_color,
                                     int q) {
  if (q < 1) throw std::invalid_argument("table needs q >= 1");
  auto in_range = [q](int c) { return c >= 1 && c <= q; };
  if (!in_range(default_color)) throw std::invalid_argument("default color out of range");
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!in_range(entries[i].second)) throw std::invalid_argument("table color out of range");
    if (i > 0 && entries[i].first == entries[i - 1].first) throw std::invalid_argument("duplicate table entry");
  }
  return ColoringOracle::make(PrefixTableSource{q, std::move(entries), horizon, default_color});
}

ColoringOracle dfa_coloring(DfaSource dfa) {
  if (dfa.q < 1) throw std::invalid_argument("automaton needs q >= 1");
  const auto states = dfa.transitions.size();
  if (states == 0) throw IncompleteTable("automaton has no states");
  if (dfa.state_colors.size() != states) throw IncompleteTable("every state needs a color");
  for (std::size_t s = 0; s < states; ++s) {
    if (dfa.transitions[s].size() != dfa.alphabet_size) {
      throw IncompleteTable("state " + std::to_string(s) + " lacks transitions");
    }
    for (std::size_t a = 0; a < dfa.alphabet_size; ++a) {
      const int to = dfa.transitions[s][a];
      if (to < 0 || static_cast<std::size_t>(to) >= states) {
        throw IncompleteTable("missing transition from state " + std::to_string(s) + " on letter " +
                              std::to_string(a));
      }
    }
    if (dfa.state_colors[s] < 1 || dfa.state_colors[s] > dfa.q) {
      throw IncompleteTable("state " + std::to_string(s) + " has no valid color");
    }
  }
  return ColoringOracle::make(std::move(dfa));
}

ColoringOracle product_coloring(std::vector<ColoringOracle> components) {
  if (components.empty()) throw std::invalid_argument("product of no colorings");
  return ColoringOracle::make(ProductSource{std::move(components)});
}

std::vector<int> decode_product(const ColoringOracle& product, int color) {
  const auto* p = std::get_if<ProductSource>(&product.source());
  if (!p) throw std::invalid_argument("not a product coloring");
  std::vector<int> out(p->components.size());
  int index = color - 1;
  for (std::size_t i = p->components.size(); i-- > 0;) {
    const int q = p->components[i].q();
    out[i] = index % q + 1;
    index /= q;
  }
  return out;
}

std::string builtin_reference(const BuiltinSource& b) {
  std::string out = "builtin:" + b.name;
  for (auto v : b.params) out += ':' + std::to_string(v);
  return out;
}

namespace {

std::int64_t parse_int(std::string_view tok) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw std::invalid_argument("bad integer '" + std::string(tok) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

ColoringOracle resolve_coloring(std::string_view ref) {
  if (ref.starts_with("builtin:")) {
    auto parts = split(ref.substr(8), ':');
    std::vector<std::int64_t> params;
    for (std::size_t i = 1; i < parts.size(); ++i) params.push_back(parse_int(parts[i]));
    return builtin_coloring(parts[0], std::move(params));
  }
  std::ifstream in{std::string(ref)};
  if (!in) throw std::invalid_argument("cannot open coloring file '" + std::string(ref) + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_coloring(buffer.str());
}

// Document form
//
//   [header]
//   kind: builtin | prefix-table | dfa | product
//   q: <colors>
//   alphabet: <letter ids>        (prefix-table, dfa)
//   horizon: <n>                  (prefix-table)
//   default: <color>              (prefix-table)
//   [builtin]   name: ... / params: ...
//   [table]     <word> -> <color>
//   [dfa]       <state>, <letter> -> <state>
//   [colors]    <state> -> <color>
//   [component] <nested document> [end]
//
// Blank lines and text after '#' are ignored. "→" is accepted for "->".

namespace {

void write_document(std::ostringstream& out, const ColoringOracle& c) {
  out << "[header]\n";
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BuiltinSource>) {
          out << "kind: builtin\nq: " << c.q() << "\n[builtin]\nname: " << s.name << "\nparams:";
          for (auto v : s.params) out << ' ' << v;
          out << '\n';
        } else if constexpr (std::is_same_v<T, PrefixTableSource>) {
          std::set<Letter> letters;
          for (const auto& [w, color] : s.entries) letters.insert(w.vec().begin(), w.vec().end());
          out << "kind: prefix-table\nq: " << s.q << "\nalphabet:";
          for (auto a : letters) out << ' ' << a;
          out << "\nhorizon: " << s.horizon << "\ndefault: " << s.default_color << "\n[table]\n";
          for (const auto& [w, color] : s.entries) out << to_string(w) << " -> " << color << '\n';
        } else if constexpr (std::is_same_v<T, DfaSource>) {
          out << "kind: dfa\nq: " << s.q << "\nalphabet:";
          for (std::size_t a = 0; a < s.alphabet_size; ++a) out << ' ' << a;
          out << "\n[dfa]\n";
          for (std::size_t st = 0; st < s.transitions.size(); ++st) {
            for (std::size_t a = 0; a < s.alphabet_size; ++a) {
              out << st << ", " << a << " -> " << s.transitions[st][a] << '\n';
            }
          }
          out << "[colors]\n";
          for (std::size_t st = 0; st < s.state_colors.size(); ++st) out << st << " -> " << s.state_colors[st] << '\n';
        } else {
          out << "kind: product\nq: " << c.q() << '\n';
          for (const auto& comp : s.components) {
            out << "[component]\n";
            write_document(out, comp);
            out << "[end]\n";
          }
        }
      },
      c.source());
}

struct Line {
  std::size_t number;
  std::size_t indent;  // column of the first non-blank character, 1-based
  std::string text;    // trimmed, comment removed
};

std::vector<Line> split_lines(std::string_view doc) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= doc.size()) {
    auto end = doc.find('\n', start);
    if (end == std::string_view::npos) end = doc.size();
    ++number;
    std::string_view raw = doc.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto first = raw.find_first_not_of(" \t\r");
    if (first != std::string_view::npos) {
      const auto last = raw.find_last_not_of(" \t\r");
      out.push_back(Line{number, first + 1, std::string(raw.substr(first, last - first + 1))});
    }
    start = end + 1;
  }
  return out;
}

class DocumentParser {
 public:
  explicit DocumentParser(std::vector<Line> lines) : lines_(std::move(lines)) {}

  ColoringOracle parse_all() {
    auto c = parse_block(false);
    if (pos_ < lines_.size()) fail(lines_[pos_], 1, "unexpected content after the document");
    return c;
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;

  [[noreturn]] static void fail(const Line& line, std::size_t offset, const std::string& what) {
    throw ParseError(what, line.number, line.indent + offset - 1);
  }
  [[noreturn]] void fail_eof(const std::string& what) const {
    const std::size_t n = lines_.empty() ? 1 : lines_.back().number;
    throw ParseError(what, n, 1);
  }

  static bool is_section(const Line& l) { return l.text.size() >= 2 && l.text.front() == '[' && l.text.back() == ']'; }

  static std::pair<std::string, std::string> key_value(const Line& l) {
    auto colon = l.text.find(':');
    if (colon == std::string::npos) fail(l, 1, "expected 'key: value'");
    std::string key = l.text.substr(0, colon);
    std::string value = l.text.substr(colon + 1);
    auto trim = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
    };
    trim(key);
    trim(value);
    return {key, value};
  }

  // Splits "lhs -> rhs"; returns the column offset of rhs as well.
  static std::tuple<std::string, std::string, std::size_t> arrow(const Line& l) {
    std::size_t at = l.text.find("->");
    std::size_t width = 2;
    if (at == std::string::npos) {
      at = l.text.find("→");
      width = std::string_view("→").size();
    }
    if (at == std::string::npos) fail(l, 1, "expected '->'");
    std::string lhs = l.text.substr(0, at);
    std::string rhs = l.text.substr(at + width);
    lhs.erase(lhs.find_last_not_of(" \t") + 1);
    const auto skip = rhs.find_first_not_of(" \t");
    if (skip == std::string::npos) fail(l, at + width + 1, "missing value after '->'");
    rhs.erase(0, skip);
    return {lhs, rhs, at + width + skip + 1};
  }

  static std::int64_t number(const Line& l, std::string_view tok, std::size_t offset) {
    try {
      return parse_int(tok);
    } catch (const std::invalid_argument&) {
      fail(l, offset, "expected an integer, got '" + std::string(tok) + "'");
    }
  }

  static std::vector<std::int64_t> numbers(const Line& l, const std::string& value) {
    std::vector<std::int64_t> out;
    std::istringstream in(value);
    std::string tok;
    while (in >> tok) out.push_back(number(l, tok, l.text.find(tok) + 1));
    return out;
  }

  ColoringOracle parse_block(bool nested) {
    if (pos_ >= lines_.size()) fail_eof("missing [header] section");
    if (lines_[pos_].text != "[header]") fail(lines_[pos_], 1, "expected [header]");
    ++pos_;
    std::map<std::string, std::pair<std::string, std::size_t>> header;  // value, line index
    while (pos_ < lines_.size() && !is_section(lines_[pos_])) {
      auto [k, v] = key_value(lines_[pos_]);
      if (k != "kind" && k != "q" && k != "alphabet" && k != "horizon" && k != "default") {
        fail(lines_[pos_], 1, "unknown header key '" + k + "'");
      }
      header[k] = {v, pos_};
      ++pos_;
    }
    auto get = [&](const std::string& key) -> std::pair<std::string, const Line*> {
      auto it = header.find(key);
      if (it == header.end()) {
        if (pos_ > 0) fail(lines_[pos_ - 1], 1, "header lacks '" + key + "'");
        fail_eof("header lacks '" + key + "'");
      }
      return {it->second.first, &lines_[it->second.second]};
    };
    auto [kind, kind_line] = get("kind");
    auto [q_text, q_line] = get("q");
    const int q = static_cast<int>(number(*q_line, q_text, 4));
    std::vector<Letter> alphabet;
    if (header.count("alphabet")) {
      auto [a_text, a_line] = get("alphabet");
      for (auto v : numbers(*a_line, a_text)) alphabet.push_back(static_cast<Letter>(v));
    }

    ColoringOracle result = builtin_coloring("constant");
    try {
      if (kind == "builtin") {
        result = parse_builtin();
      } else if (kind == "prefix-table") {
        auto [h_text, h_line] = get("horizon");
        auto [d_text, d_line] = get("default");
        result = parse_table(q, alphabet, static_cast<std::size_t>(number(*h_line, h_text, 10)),
                             static_cast<int>(number(*d_line, d_text, 10)));
      } else if (kind == "dfa") {
        result = parse_dfa(q, alphabet);
      } else if (kind == "product") {
        result = parse_product();
      } else {
        fail(*kind_line, 7, "unknown coloring kind '" + kind + "'");
      }
    } catch (const std::invalid_argument& e) {
      fail(*kind_line, 1, e.what());
    } catch (const IncompleteTable& e) {
      fail(*kind_line, 1, e.what());
    } catch (const UnknownName& e) {
      fail(*kind_line, 1, e.what());
    }
    if (result.q() != q) fail(*q_line, 4, "declared q does not match the coloring");
    if (nested) {
      if (pos_ >= lines_.size()) fail_eof("missing [end]");
      if (lines_[pos_].text != "[end]") fail(lines_[pos_], 1, "expected [end]");
      ++pos_;
    }
    return result;
  }

  void expect_section(const std::string& name) {
    if (pos_ >= lines_.size()) fail_eof("missing " + name + " section");
    if (lines_[pos_].text != name) {
      if (is_section(lines_[pos_])) fail(lines_[pos_], 1, "unknown or misplaced section " + lines_[pos_].text);
      fail(lines_[pos_], 1, "expected " + name);
    }
    ++pos_;
  }

  ColoringOracle parse_builtin() {
    expect_section("[builtin]");
    std::string name;
    std::vector<std::int64_t> params;
    while (pos_ < lines_.size() && !is_section(lines_[pos_])) {
      const auto& l = lines_[pos_];
      auto [k, v] = key_value(l);
      if (k == "name") {
        name = v;
      } else if (k == "params") {
        params = numbers(l, v);
      } else {
        fail(l, 1, "unknown builtin key '" + k + "'");
      }
      ++pos_;
    }
    return builtin_coloring(name, std::move(params));
  }

  ColoringOracle parse_table(int q, const std::vector<Letter>& alphabet, std::size_t horizon, int default_color) {
    expect_section("[table]");
    std::vector<std::pair<Word, int>> entries;
    while (pos_ < lines_.size() && !is_section(lines_[pos_])) {
      const auto& l = lines_[pos_];
      auto [lhs, rhs, col] = arrow(l);
      Word w;
      try {
        w = parse_word(lhs);
      } catch (const std::invalid_argument& e) {
        fail(l, 1, e.what());
      }
      if (!alphabet.empty()) {
        for (auto a : w.letters()) {
          if (std::find(alphabet.begin(), alphabet.end(), a) == alphabet.end()) {
            fail(l, 1, "letter " + std::to_string(a) + " not in the declared alphabet");
          }
        }
      }
      entries.emplace_back(std::move(w), static_cast<int>(number(l, rhs, col)));
      ++pos_;
    }
    return prefix_table_coloring(std::move(entries), horizon, default_color, q);
  }

  ColoringOracle parse_dfa(int q, const std::vector<Letter>& alphabet) {
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      if (alphabet[i] != static_cast<Letter>(i)) {
        throw std::invalid_argument("automaton alphabet must be 0..n-1");
      }
    }
    DfaSource dfa;
    dfa.q = q;
    dfa.alphabet_size = alphabet.size();
    expect_section("[dfa]");
    auto grow = [&](std::size_t states) {
      if (dfa.transitions.size() < states) {
        dfa.transitions.resize(states, std::vector<int>(dfa.alphabet_size, -1));
        dfa.state_colors.resize(states, 0);
      }
    };
    while (pos_ < lines_.size() && !is_section(lines_[pos_])) {
      const auto& l = lines_[pos_];
      auto [lhs, rhs, col] = arrow(l);
      auto comma = lhs.find(',');
      if (comma == std::string::npos) fail(l, 1, "expected 'state, letter -> state'");
      std::string st = lhs.substr(0, comma);
      std::string le = lhs.substr(comma + 1);
      le.erase(0, le.find_first_not_of(" \t"));
      const auto from = number(l, st, 1);
      const auto letter = number(l, le, comma + 2);
      const auto to = number(l, rhs, col);
      if (from < 0 || to < 0) fail(l, 1, "negative state");
      if (letter < 0 || static_cast<std::size_t>(letter) >= dfa.alphabet_size) fail(l, comma + 2, "letter outside the alphabet");
      grow(static_cast<std::size_t>(std::max(from, to)) + 1);
      dfa.transitions[static_cast<std::size_t>(from)][static_cast<std::size_t>(letter)] = static_cast<int>(to);
      ++pos_;
    }
    expect_section("[colors]");
    while (pos_ < lines_.size() && !is_section(lines_[pos_])) {
      const auto& l = lines_[pos_];
      auto [lhs, rhs, col] = arrow(l);
      const auto st = number(l, lhs, 1);
      if (st < 0) fail(l, 1, "negative state");
      grow(static_cast<std::size_t>(st) + 1);
      dfa.state_colors[static_cast<std::size_t>(st)] = static_cast<int>(number(l, rhs, col));
      ++pos_;
    }
    return dfa_coloring(std::move(dfa));
  }

  ColoringOracle parse_product() {
    std::vector<ColoringOracle> parts;
    while (pos_ < lines_.size() && lines_[pos_].text == "[component]") {
      ++pos_;
      parts.push_back(parse_block(true));
    }
    if (parts.empty()) {
      if (pos_ < lines_.size()) fail(lines_[pos_], 1, "expected [component]");
      fail_eof("product without components");
    }
    return product_coloring(std::move(parts));
  }
};

}  // namespace

std::string save_coloring(const ColoringOracle& c) {
  std::ostringstream out;
  write_document(out, c);
  return out.str();
}

ColoringOracle load_coloring(std::string_view document) { return DocumentParser(split_lines(document)).parse_all(); }

}  // namespace hjcs
