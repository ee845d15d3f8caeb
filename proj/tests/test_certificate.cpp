#include <doctest.h>

#include "hjcs/certificate.hpp"
#include "hjcs/errors.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hjcs;
using hjcs::testing::pick;
using hjcs::testing::Rng;

namespace {

VariableWord vw(std::string_view text) { return parse_variable_word(text); }

Certificate make(CertificateKind kind, std::vector<std::string_view> words, const ColoringOracle& c, int color,
                 std::string_view ladder = "2") {
  Certificate cert;
  cert.kind = kind;
  cert.ladder = AlphabetLadder::parse(ladder);
  for (auto w : words) cert.words.push_back(vw(w));
  cert.depth = kind == CertificateKind::kHJ ? 0 : cert.words.size() - 1;
  cert.color = color;
  cert.coloring = c;
  if (const auto* b = std::get_if<BuiltinSource>(&c.source())) {
    cert.coloring_ref = builtin_reference(*b);
  } else {
    cert.coloring_ref = "inline";
  }
  return cert;
}

// Product counts straight from the definitions.
std::uint64_t expected_products(const Certificate& cert) {
  std::uint64_t total = 0;
  if (cert.kind == CertificateKind::kCarlson) {
    total = 1;
    for (std::size_t i = 0; i <= cert.depth; ++i) total *= cert.ladder.level(i).size() + 1;
    return total - 1;
  }
  std::uint64_t prefix = 1;
  for (std::size_t i = 0; i <= cert.depth; ++i) {
    prefix *= cert.ladder.level(i).size();
    total += prefix;
  }
  return total;
}

}  // namespace

TEST_CASE("odd lengths under length-mod 2") {
  const auto cert = make(CertificateKind::kCS, {"x", "x0", "x0"}, builtin_coloring("length-mod", {2}), 2);
  const auto r = verify_certificate(cert);
  CHECK(r.ok);
  CHECK(r.products == 2 + 4 + 8);
  CHECK(check_structure(cert));
  CHECK(oracle::certificate_holds(cert));
  CHECK(verification_work(cert) == 14);
}

TEST_CASE("even lengths for every subsequence") {
  const auto cert = make(CertificateKind::kCarlson, {"x0", "x0", "x0"}, builtin_coloring("length-mod", {2}), 1);
  const auto r = verify_certificate(cert);
  CHECK(r.ok);
  CHECK(r.products == 26);
  CHECK(oracle::certificate_holds(cert));
}

TEST_CASE("lines") {
  const auto cert = make(CertificateKind::kHJ, {"xx"}, builtin_coloring("letter-count-mod", {1, 2}), 1);
  CHECK(verify_certificate(cert).ok);
  auto bad = cert;
  bad.words = {vw("x0")};
  CHECK_FALSE(verify_certificate(bad).ok);
  auto deep = cert;
  deep.depth = 1;
  CHECK_FALSE(verify_certificate(deep).ok);
}

TEST_CASE("corrupted certificates fail") {
  const auto last = builtin_coloring("last-letter", {2, 1});
  const auto good = make(CertificateKind::kCS, {"x", "x0", "x0"}, last, 1);
  CHECK_FALSE(verify_certificate(good).ok);  // x itself takes both colors

  const auto tail0 = make(CertificateKind::kCS, {"x0", "x0", "x0"}, last, 1);
  CHECK(verify_certificate(tail0).ok);

  auto flipped = tail0;
  flipped.words[2] = vw("x1");
  const auto r = verify_certificate(flipped);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.reason.empty());

  auto recolored = tail0;
  recolored.color = 2;
  CHECK_FALSE(verify_certificate(recolored).ok);

  auto not_left = tail0;
  not_left.words[1] = vw("0x");
  CHECK_FALSE(verify_cs(not_left).ok);
  CHECK_FALSE(oracle::certificate_holds(not_left));

  auto short_words = tail0;
  short_words.depth = 3;
  CHECK_FALSE(verify_certificate(short_words).ok);

  auto stray = tail0;
  stray.words[1] = vw("x2");  // letter 2 is not in the ladder
  CHECK_FALSE(check_structure(stray));
  CHECK_FALSE(verify_certificate(stray).ok);
}

TEST_CASE("depth zero") {
  const auto cert = make(CertificateKind::kCS, {"x"}, builtin_coloring("constant"), 1);
  CHECK(verify_certificate(cert).ok);
  const auto carlson = make(CertificateKind::kCarlson, {"x1x"}, builtin_coloring("constant"), 1);
  CHECK(verify_certificate(carlson).ok);
}

TEST_CASE("verifiers agree with brute force and with each other") {
  Rng rng(71);
  const auto entries = testing::corpus();
  int accepted = 0;
  for (int i = 0; i < 300; ++i) {
    const auto& entry = entries[pick(rng, 0, entries.size() - 1)];
    const auto kind = static_cast<CertificateKind>(pick(rng, 0, 1));
    const bool extracted = kind == CertificateKind::kCarlson;
    const auto depth = pick(rng, 0, 3);
    const auto s = std::vector<VariableWord>(12, VariableWord::x());
    const auto blocks = testing::random_block_subseq(rng, s, 0, entry.ladder, extracted, depth + 1, 3);
    if (blocks.t.size() != depth + 1) continue;
    Certificate cert;
    cert.kind = kind;
    cert.ladder = entry.ladder;
    cert.depth = depth;
    cert.words = blocks.t;
    cert.coloring = entry.coloring;
    cert.coloring_ref = "inline";
    cert.color = entry.coloring(substitute(cert.words[0], entry.ladder.level(0).front()));
    CHECK(check_structure(cert));
    const bool truth = oracle::certificate_holds(cert);
    const auto par = kind == CertificateKind::kCS ? verify_cs(cert) : verify_carlson(cert);
    const auto ser = kind == CertificateKind::kCS ? serial::verify_cs(cert) : serial::verify_carlson(cert);
    CHECK(par.ok == truth);
    CHECK(ser.ok == truth);
    CHECK(par.reason == ser.reason);
    CHECK(verify_certificate(cert).ok == truth);
    if (truth) {
      ++accepted;
      CHECK(par.products == expected_products(cert));
      CHECK(ser.products == par.products);
    }
  }
  CHECK(accepted > 10);
}

TEST_CASE("product caps") {
  const auto cert = make(CertificateKind::kCarlson, {"x", "x", "x", "x"}, builtin_coloring("constant"), 1);
  CHECK(verification_work(cert) == 80);
  try {
    verify_carlson(cert, 10);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(e.required() == 80);
  }
}

TEST_CASE("documents") {
  Rng rng(72);
  const auto table = testing::random_prefix_table(rng, 3, 2, 4);
  for (const auto& cert : {make(CertificateKind::kCS, {"x", "x0"}, builtin_coloring("length-mod", {2}), 2),
                           make(CertificateKind::kCarlson, {"x0", "x1x"}, table, 1, "2,3+")}) {
    const auto text = save_certificate(cert);
    const auto back = load_certificate(text);
    CHECK(back.kind == cert.kind);
    CHECK(back.ladder == cert.ladder);
    CHECK(back.depth == cert.depth);
    CHECK(back.words == cert.words);
    CHECK(back.color == cert.color);
    CHECK(back.coloring == cert.coloring);
    CHECK(back.coloring_ref == cert.coloring_ref);
    CHECK(save_certificate(back) == text);
  }
  CHECK_THROWS_AS(load_certificate(""), ParseError);
  CHECK_THROWS_AS(load_certificate("certificate v1\nkind: sideways\n"), ParseError);
  const auto text = save_certificate(make(CertificateKind::kCS, {"x"}, builtin_coloring("constant"), 1));
  std::string broken = text;
  broken.replace(broken.find("words: x"), 8, "words: 0");
  try {
    load_certificate(broken);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
  CHECK(parse_certificate_kind("carlson") == CertificateKind::kCarlson);
  CHECK(to_string(CertificateKind::kHJ) == "hj");
}
