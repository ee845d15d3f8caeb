#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hjcs/coloring.hpp"
#include "hjcs/ladder.hpp"
#include "hjcs/word.hpp"

namespace hjcs {

enum class CertificateKind { kCS, kCarlson, kHJ };

std::string to_string(CertificateKind kind);
CertificateKind parse_certificate_kind(std::string_view text);

/// A claimed monochromatic structure plus what is needed to recheck it.
///   cs:      every w_0(a_0)...w_n(a_n), n <= depth, a_i in A_i, has `color`;
///            w_n is left variable for n >= 1.
///   carlson: every w_{m_0}(a_0)...w_{m_j}(a_j), m_0 < ... < m_j <= depth,
///            a_i in A_{m_i}, has `color`.
///   hj:      one word (the line) with every w(a), a in A_0, of `color`;
///            depth is 0.
struct Certificate {
  CertificateKind kind = CertificateKind::kCS;
  AlphabetLadder ladder = AlphabetLadder::constant(2);
  std::size_t depth = 0;
  std::vector<VariableWord> words;
  int color = 1;
  ColoringOracle coloring = builtin_coloring("constant");
  /// "builtin:..." or "inline" (the coloring document is embedded).
  std::string coloring_ref = "builtin:constant";
  std::uint64_t budget = 0;
  std::string mode = "direct";
  /// Not serialized.
  std::vector<std::string> transcript;
};

struct VerifyReport {
  bool ok = false;
  std::uint64_t products = 0;
  std::string reason;
};

/// Number of products the verifier of this kind enumerates, saturating.
std::uint64_t verification_work(const Certificate& cert);

/// Products only (no structure check). Throw CapExceeded when the product
/// count is above `cap`; coloring errors such as IncompleteTable propagate.
VerifyReport verify_cs(const Certificate& cert, std::uint64_t cap = 100'000'000);
VerifyReport verify_carlson(const Certificate& cert, std::uint64_t cap = 100'000'000);
VerifyReport verify_hj(const Certificate& cert, std::uint64_t cap = 100'000'000);

/// The words form a reduced (cs, hj) or extracted (carlson) 0-block
/// subsequence of (x, x, ...) under the certificate's ladder.
bool check_structure(const Certificate& cert);

/// Depth/word-count consistency, structure, then the kind's verifier.
VerifyReport verify_certificate(const Certificate& cert, std::uint64_t cap = 100'000'000);

namespace serial {
VerifyReport verify_cs(const Certificate& cert, std::uint64_t cap = 100'000'000);
VerifyReport verify_carlson(const Certificate& cert, std::uint64_t cap = 100'000'000);
VerifyReport verify_hj(const Certificate& cert, std::uint64_t cap = 100'000'000);
}  // namespace serial

std::string save_certificate(const Certificate& cert);
/// Throws ParseError with the line and column of the first problem.
Certificate load_certificate(std::string_view document);

}  // namespace hjcs
