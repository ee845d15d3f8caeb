#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hjcs/certificate.hpp"
#include "hjcs/cli.hpp"

using namespace hjcs;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "hjcs_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("hj-number") {
  const auto r = run({"hj-number", "--p", "2", "--q", "2", "--nmax", "3"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.ends_with("2\n"));
  const auto none = run({"hj-number", "--p", "2", "--q", "3", "--nmax", "2"});
  CHECK(none.code == cli::kNegative);
  CHECK(run({"hj-number", "--p", "3", "--q", "3", "--nmax", "4", "--cap", "1000"}).code == cli::kUndecided);
}

TEST_CASE("hj-search writes a certificate that verifies") {
  const auto path = scratch("hj.cert");
  std::filesystem::remove(path);
  const auto r = run({"hj-search", "--coloring", "builtin:letter-count-mod:1:2", "--p", "2", "--n", "2", "--out",
                      path.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("line xx") != std::string::npos);
  CHECK(run({"verify", "--cert", path.string()}).code == cli::kOk);
  CHECK(run({"hj-search", "--coloring", "builtin:last-letter:2:1", "--p", "2", "--n", "1"}).code == cli::kNegative);
}

TEST_CASE("extract then verify, and a corrupted copy fails") {
  const auto path = scratch("cs.cert");
  std::filesystem::remove(path);
  const auto r = run({"cs-extract", "--coloring", "builtin:length-mod:2", "--ladder", "2", "--depth", "2", "--out",
                      path.string()});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("certificate written to") != std::string::npos);
  CHECK(run({"verify", "--cert", path.string()}).code == cli::kOk);

  auto cert = load_certificate(slurp(path));
  cert.color = cert.color == 1 ? 2 : 1;
  const auto bad = scratch("cs-bad.cert");
  std::ofstream(bad) << save_certificate(cert);
  const auto v = run({"verify", "--cert", bad.string()});
  CHECK(v.code == cli::kNegative);
  CHECK(v.out.find("FAILED") != std::string::npos);
}

TEST_CASE("undecided runs exit with 3") {
  const auto r = run({"carlson-extract", "--coloring", "builtin:last-letter:2:1", "--depth", "3", "--budget", "3"});
  CHECK(r.code == cli::kUndecided);
}

TEST_CASE("span enumeration and probes") {
  const auto r = run({"enumerate-span", "--seq", "x,0x", "--ladder", "2", "--kind", "reduced-constant"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("[span] 4 distinct of 4 selections") != std::string::npos);
  CHECK(run({"probe-largeness", "--coloring", "builtin:constant", "--color", "1"}).code == cli::kOk);
  CHECK(run({"probe-largeness", "--coloring", "builtin:length-mod:2", "--color", "1", "--max-chain", "3"}).code ==
        cli::kNegative);
}

TEST_CASE("usage errors exit with 4") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"no-such-command"}).code == cli::kUsage);
  CHECK(run({"hj-number", "--p", "2"}).code == cli::kUsage);
  CHECK(run({"cs-extract", "--coloring", "builtin:nope"}).code == cli::kUsage);
  CHECK(run({"cs-extract", "--coloring", "builtin:constant", "--ladder", "3,2"}).code == cli::kUsage);
  CHECK(run({"verify", "--cert", scratch("missing.cert").string()}).code == cli::kUsage);
  const auto garbage = scratch("garbage.cert");
  std::ofstream(garbage) << "not a certificate\n";
  const auto g = run({"verify", "--cert", garbage.string()});
  CHECK(g.code == cli::kUsage);
  CHECK_FALSE(g.err.empty());
}
