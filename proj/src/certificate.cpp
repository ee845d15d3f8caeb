#include "hjcs/certificate.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include "hjcs/errors.hpp"
#include "hjcs/span.hpp"
#include "hjcs/varseq.hpp"

namespace hjcs {

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::kCS: return "cs";
    case CertificateKind::kCarlson: return "carlson";
    case CertificateKind::kHJ: return "hj";
  }
  return "?";
}

CertificateKind parse_certificate_kind(std::string_view text) {
  if (text == "cs") return CertificateKind::kCS;
  if (text == "carlson") return CertificateKind::kCarlson;
  if (text == "hj") return CertificateKind::kHJ;
  throw std::invalid_argument("unknown certificate kind '" + std::string(text) + "'");
}

namespace {

// One product shape: factor i is words[index[i]] with x from letters[i].
struct Shape {
  std::vector<const VariableWord*> words;
  std::vector<LetterSet> letters;

  std::uint64_t count() const {
    std::uint64_t n = 1;
    for (const auto& l : letters) n = sat_mul(n, l.size());
    return n;
  }
};

std::vector<Shape> shapes_of(const Certificate& cert) {
  std::vector<Shape> out;
  const auto& w = cert.words;
  if (cert.kind == CertificateKind::kCarlson) {
    const std::size_t n = w.size();
    for (std::uint64_t mask = 1; n < 64 && mask < (std::uint64_t{1} << n); ++mask) {
      Shape s;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) {
          s.words.push_back(&w[i]);
          s.letters.push_back(cert.ladder.level(i));
        }
      }
      out.push_back(std::move(s));
    }
    return out;
  }
  Shape s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    s.words.push_back(&w[i]);
    s.letters.push_back(cert.ladder.level(i));
    out.push_back(s);
  }
  return out;
}

std::uint64_t total_work(const std::vector<Shape>& shapes) {
  std::uint64_t total = 0;
  for (const auto& s : shapes) total = sat_add(total, s.count());
  return total;
}

std::string mismatch(const Word& w, int got, int want) {
  return "product " + to_string(w) + " has color " + std::to_string(got) + ", expected " + std::to_string(want);
}

std::optional<std::string> shape_errors(const Certificate& cert) {
  if (cert.words.empty()) return "certificate has no words";
  if (cert.kind == CertificateKind::kHJ) {
    if (cert.words.size() != 1 || cert.depth != 0) return "hj certificate must hold exactly one word at depth 0";
  } else if (cert.words.size() != cert.depth + 1) {
    return "depth " + std::to_string(cert.depth) + " needs " + std::to_string(cert.depth + 1) + " words";
  }
  if (cert.kind == CertificateKind::kCS) {
    for (std::size_t n = 1; n < cert.words.size(); ++n) {
      if (!cert.words[n].is_left_variable()) return "w_" + std::to_string(n) + " is not left variable";
    }
  }
  return std::nullopt;
}

Word product_at(const Shape& s, std::uint64_t rank) {
  // Mixed radix, first factor most significant.
  std::vector<Letter> choice(s.letters.size());
  for (std::size_t i = s.letters.size(); i-- > 0;) {
    choice[i] = s.letters[i][rank % s.letters[i].size()];
    rank /= s.letters[i].size();
  }
  std::vector<Letter> out;
  for (std::size_t i = 0; i < s.words.size(); ++i) append_substituted(out, *s.words[i], choice[i]);
  return Word::unchecked(std::move(out));
}

VerifyReport run_parallel(const Certificate& cert, std::uint64_t cap) {
  VerifyReport report;
  if (auto err = shape_errors(cert)) {
    report.reason = *err;
    return report;
  }
  const auto shapes = shapes_of(cert);
  const auto work = total_work(shapes);
  if (work > cap) throw CapExceeded("certificate verification", work);
  for (const auto& shape : shapes) {
    const auto count = static_cast<std::int64_t>(shape.count());
    std::atomic<std::int64_t> first_bad{count};
    std::exception_ptr error;
    std::mutex error_mutex;
#pragma omp parallel for schedule(static) if (count >= 256)
    for (std::int64_t rank = 0; rank < count; ++rank) {
      if (rank >= first_bad.load(std::memory_order_relaxed)) continue;
      try {
        const auto w = product_at(shape, static_cast<std::uint64_t>(rank));
        if (cert.coloring(w) != cert.color) {
          auto seen = first_bad.load();
          while (rank < seen && !first_bad.compare_exchange_weak(seen, rank)) {
          }
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    const auto bad = first_bad.load();
    if (bad < count) {
      report.products += static_cast<std::uint64_t>(bad) + 1;
      const auto w = product_at(shape, static_cast<std::uint64_t>(bad));
      report.reason = mismatch(w, cert.coloring(w), cert.color);
      return report;
    }
    report.products += static_cast<std::uint64_t>(count);
  }
  report.ok = true;
  return report;
}

VerifyReport run_serial(const Certificate& cert, std::uint64_t cap) {
  VerifyReport report;
  if (auto err = shape_errors(cert)) {
    report.reason = *err;
    return report;
  }
  const auto shapes = shapes_of(cert);
  const auto work = total_work(shapes);
  if (work > cap) throw CapExceeded("certificate verification", work);
  for (const auto& shape : shapes) {
    const bool done = for_each_tuple(shape.letters, [&](std::span<const Letter> a) {
      std::vector<Letter> out;
      for (std::size_t i = 0; i < a.size(); ++i) append_substituted(out, *shape.words[i], a[i]);
      ++report.products;
      const int got = cert.coloring(out);
      if (got == cert.color) return true;
      report.reason = mismatch(Word::unchecked(out), got, cert.color);
      return false;
    });
    if (!done) return report;
  }
  report.ok = true;
  return report;
}

VerifyReport require_kind(const Certificate& cert, CertificateKind kind) {
  VerifyReport r;
  if (cert.kind != kind) r.reason = "certificate kind is " + to_string(cert.kind) + ", not " + to_string(kind);
  return r;
}

}  // namespace

std::uint64_t verification_work(const Certificate& cert) { return total_work(shapes_of(cert)); }

VerifyReport verify_cs(const Certificate& cert, std::uint64_t cap) {
  if (cert.kind != CertificateKind::kCS) return require_kind(cert, CertificateKind::kCS);
  return run_parallel(cert, cap);
}

VerifyReport verify_carlson(const Certificate& cert, std::uint64_t cap) {
  if (cert.kind != CertificateKind::kCarlson) return require_kind(cert, CertificateKind::kCarlson);
  return run_parallel(cert, cap);
}

VerifyReport verify_hj(const Certificate& cert, std::uint64_t cap) {
  if (cert.kind != CertificateKind::kHJ) return require_kind(cert, CertificateKind::kHJ);
  return run_parallel(cert, cap);
}

namespace serial {

VerifyReport verify_cs(const Certificate& cert, std::uint64_t cap) {
  if (cert.kind != CertificateKind::kCS) return require_kind(cert, CertificateKind::kCS);
  return run_serial(cert, cap);
}

VerifyReport verify_carlson(const Certificate& cert, std::uint64_t cap) {
  if (cert.kind != CertificateKind::kCarlson) return require_kind(cert, CertificateKind::kCarlson);
  return run_serial(cert, cap);
}

VerifyReport verify_hj(const Certificate& cert, std::uint64_t cap) {
  if (cert.kind != CertificateKind::kHJ) return require_kind(cert, CertificateKind::kHJ);
  return run_serial(cert, cap);
}

}  // namespace serial

bool check_structure(const Certificate& cert) {
  std::size_t letters = 1;
  for (const auto& w : cert.words) letters += w.size();
  const auto base = VarSeq::all_x(letters);
  try {
    const auto kind =
        cert.kind == CertificateKind::kCarlson ? SpanKind::kExtractedVariable : SpanKind::kReducedVariable;
    return is_block_subseq(kind, cert.words, base, 0, cert.ladder).has_value();
  } catch (const InsufficientPrefix&) {
    return false;
  }
}

VerifyReport verify_certificate(const Certificate& cert, std::uint64_t cap) {
  if (auto err = shape_errors(cert)) return VerifyReport{false, 0, *err};
  if (!check_structure(cert)) {
    return VerifyReport{false, 0, "words are not a block subsequence of (x, x, ...) under the ladder"};
  }
  switch (cert.kind) {
    case CertificateKind::kCS: return verify_cs(cert, cap);
    case CertificateKind::kCarlson: return verify_carlson(cert, cap);
    case CertificateKind::kHJ: return verify_hj(cert, cap);
  }
  return {};
}

// Document form
//
//   certificate v1
//   kind: cs | carlson | hj
//   ladder: <ladder text>
//   depth: <d>
//   words: <word> <word> ...
//   color: <c>
//   coloring: builtin:... | inline
//   budget: <n>
//   mode: <mode>
//
// With "coloring: inline" the coloring document follows between the lines
// "begin coloring" and "end coloring".

std::string save_certificate(const Certificate& cert) {
  std::ostringstream out;
  out << "certificate v1\n";
  out << "kind: " << to_string(cert.kind) << '\n';
  out << "ladder: " << cert.ladder.describe() << '\n';
  out << "depth: " << cert.depth << '\n';
  out << "words:";
  for (const auto& w : cert.words) out << ' ' << to_string(w);
  out << '\n';
  out << "color: " << cert.color << '\n';
  const bool inline_coloring = !cert.coloring_ref.starts_with("builtin:");
  out << "coloring: " << (inline_coloring ? "inline" : cert.coloring_ref) << '\n';
  out << "budget: " << cert.budget << '\n';
  out << "mode: " << cert.mode << '\n';
  if (inline_coloring) {
    out << "begin coloring\n" << save_coloring(cert.coloring);
    if (out.str().back() != '\n') out << '\n';
    out << "end coloring\n";
  }
  return out.str();
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::uint64_t parse_u64(const std::string& text, std::size_t line, std::size_t column) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("expected a non-negative integer, got '" + text + "'", line, column);
  }
  return v;
}

}  // namespace

Certificate load_certificate(std::string_view document) {
  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start <= document.size()) {
      auto end = document.find('\n', start);
      if (end == std::string_view::npos) end = document.size();
      lines.emplace_back(document.substr(start, end - start));
      start = end + 1;
    }
  }
  Certificate cert;
  std::map<std::string, std::pair<std::string, std::size_t>> fields;
  std::optional<std::string> inline_doc;
  std::size_t inline_first_line = 0;
  bool header_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t number = i + 1;
    const auto text = trim(lines[i]);
    if (text.empty()) continue;
    if (!header_seen) {
      if (text != "certificate v1") throw ParseError("expected 'certificate v1'", number, 1);
      header_seen = true;
      continue;
    }
    if (text == "begin coloring") {
      if (inline_doc) throw ParseError("second coloring block", number, 1);
      std::string body;
      std::size_t j = i + 1;
      for (; j < lines.size() && trim(lines[j]) != "end coloring"; ++j) body += lines[j] + '\n';
      if (j == lines.size()) throw ParseError("missing 'end coloring'", number, 1);
      inline_doc = std::move(body);
      inline_first_line = number + 1;
      i = j;
      continue;
    }
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", number, 1);
    auto key = trim(std::string_view(text).substr(0, colon));
    auto value = trim(std::string_view(text).substr(colon + 1));
    static const std::vector<std::string> known{"kind", "ladder", "depth", "words", "color", "coloring", "budget",
                                                "mode"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError("unknown key '" + key + "'", number, 1);
    }
    if (fields.count(key)) throw ParseError("duplicate key '" + key + "'", number, 1);
    fields[key] = {value, number};
  }
  if (!header_seen) throw ParseError("empty certificate", 1, 1);
  for (const char* key : {"kind", "ladder", "depth", "words", "color", "coloring", "budget", "mode"}) {
    if (!fields.count(key)) throw ParseError(std::string("missing key '") + key + "'", lines.size(), 1);
  }
  auto field = [&](const char* key) -> const std::pair<std::string, std::size_t>& { return fields.at(key); };
  auto guarded = [&](const char* key, auto&& parse) {
    const auto& [value, number] = field(key);
    try {
      parse(value);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(std::string(key) + ": " + e.what(), number, 1);
    }
  };
  guarded("kind", [&](const std::string& v) { cert.kind = parse_certificate_kind(v); });
  guarded("ladder", [&](const std::string& v) { cert.ladder = AlphabetLadder::parse(v); });
  cert.depth = parse_u64(field("depth").first, field("depth").second, 1);
  guarded("words", [&](const std::string& v) {
    std::istringstream in(v);
    std::string tok;
    while (in >> tok) cert.words.push_back(parse_variable_word(tok));
  });
  guarded("color", [&](const std::string& v) {
    cert.color = static_cast<int>(parse_u64(v, field("color").second, 1));
  });
  cert.budget = parse_u64(field("budget").first, field("budget").second, 1);
  cert.mode = field("mode").first;
  const auto& [ref, ref_line] = field("coloring");
  if (ref == "inline") {
    if (!inline_doc) throw ParseError("inline coloring without a 'begin coloring' block", ref_line, 1);
    try {
      cert.coloring = load_coloring(*inline_doc);
    } catch (const ParseError& e) {
      throw ParseError(std::string("in coloring block: ") + e.what(), inline_first_line + e.line() - 1, e.column());
    } catch (const std::exception& e) {
      throw ParseError(std::string("in coloring block: ") + e.what(), inline_first_line, 1);
    }
    cert.coloring_ref = "inline";
  } else {
    if (inline_doc) throw ParseError("coloring block given but coloring is not inline", ref_line, 1);
    if (!ref.starts_with("builtin:")) throw ParseError("coloring must be builtin:... or inline", ref_line, 1);
    guarded("coloring", [&](const std::string& v) { cert.coloring = resolve_coloring(v); });
    cert.coloring_ref = ref;
  }
  return cert;
}

}  // namespace hjcs
