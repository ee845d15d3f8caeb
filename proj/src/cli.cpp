#include "hjcs/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <sstream>

#include "hjcs/certificate.hpp"
#include "hjcs/coloring.hpp"
#include "hjcs/errors.hpp"
#include "hjcs/extraction.hpp"
#include "hjcs/hales_jewett.hpp"
#include "hjcs/largeness.hpp"
#include "hjcs/set_oracle.hpp"
#include "hjcs/span.hpp"

namespace hjcs::cli {

namespace {

std::vector<VariableWord> parse_seq(const std::string& text) {
  std::vector<VariableWord> out;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char ch) { return std::isspace(ch); }), tok.end());
    if (!tok.empty()) out.push_back(parse_variable_word(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty sequence");
  return out;
}

SpanKind parse_kind(const std::string& text) {
  if (text == "reduced-constant") return SpanKind::kReducedConstant;
  if (text == "reduced-variable") return SpanKind::kReducedVariable;
  if (text == "extracted-constant") return SpanKind::kExtractedConstant;
  if (text == "extracted-variable") return SpanKind::kExtractedVariable;
  throw std::invalid_argument("unknown span kind '" + text + "'");
}

ProbeMode parse_probe_mode(const std::string& text) {
  if (text == "reduced-shifted" || text == "reduced") return ProbeMode::kReducedShifted;
  if (text == "extracted") return ProbeMode::kExtracted;
  throw std::invalid_argument("unknown probe mode '" + text + "'");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << f.rdbuf();
  return buffer.str();
}

struct Settings {
  int workers = 0;
  std::string coloring;
  std::string ladder = "2";
  std::size_t depth = 2;
  std::string mode = "direct";
  std::uint64_t budget = 10'000'000;
  std::size_t max_word_length = 8;
  std::size_t max_dimension = 4;
  std::size_t max_chain = 6;
  std::size_t extension_depth = 3;
  std::uint64_t probe_budget = 200'000;
  std::string out_path;
  std::string cert_path;
  std::uint64_t cap = 100'000'000;
  std::size_t p = 2, q = 2, n = 1, nmax = 1;
  bool prune = false;
  std::string seq;
  std::size_t k = 0;
  std::string kind = "reduced-constant";
  std::uint64_t max_span = 100'000;
  int color = 1;
};

int extract(bool carlson, const Settings& s, std::ostream& out) {
  const auto c = resolve_coloring(s.coloring);
  const auto ladder = AlphabetLadder::parse(s.ladder);
  ExtractOptions options;
  options.mode = parse_extract_mode(s.mode);
  options.budget = s.budget;
  options.max_word_length = s.max_word_length;
  options.step.max_dimension = s.max_dimension;
  options.step.probe.max_chain = s.max_chain;
  options.step.probe.extension_depth = s.extension_depth;
  options.step.probe.eval_budget = s.probe_budget;
  options.sink = [&out](const std::string& line) { out << line << '\n'; };
  out << "[extract] " << (carlson ? "carlson" : "cs") << " depth " << s.depth << ", ladder " << ladder.describe()
      << ", mode " << to_string(options.mode) << ", q = " << c.q() << '\n';
  auto result = carlson ? carlson_extract(c, ladder, s.depth, options) : cs_extract(c, ladder, s.depth, options);
  const auto text = save_certificate(result.certificate);
  if (s.out_path.empty()) {
    out << text;
  } else {
    write_file(s.out_path, text);
    out << "[extract] certificate written to " << s.out_path << '\n';
  }
  return kOk;
}

int verify(const Settings& s, std::ostream& out) {
  const auto cert = load_certificate(read_file(s.cert_path));
  const auto report = verify_certificate(cert, s.cap);
  if (report.ok) {
    out << "[verify] ok: " << to_string(cert.kind) << " certificate, " << report.products << " products, color "
        << cert.color << '\n';
    return kOk;
  }
  out << "[verify] FAILED: " << report.reason << '\n';
  return kNegative;
}

int hj_search(const Settings& s, std::ostream& out) {
  const auto c = resolve_coloring(s.coloring);
  const auto alphabet = letter_range(s.p);
  auto cube = CubeColoring::from_function(alphabet, s.n, [&](std::span<const Letter> w) { return c(w); });
  LineSearchOptions options;
  options.cap = s.cap;
  auto line = find_monochromatic_line(cube, options);
  if (!line) {
    out << "[hj] no monochromatic line in " << s.p << "^" << s.n << '\n';
    return kNegative;
  }
  out << "[hj] line " << to_string(line->line) << " color " << line->color << '\n';
  if (!s.out_path.empty()) {
    Certificate cert;
    cert.kind = CertificateKind::kHJ;
    cert.ladder = AlphabetLadder::constant(s.p);
    cert.depth = 0;
    cert.words = {line->line};
    cert.color = line->color;
    cert.coloring = c;
    const auto* b = std::get_if<BuiltinSource>(&c.source());
    cert.coloring_ref = b ? builtin_reference(*b) : "inline";
    cert.budget = s.cap;
    cert.mode = "line-search";
    write_file(s.out_path, save_certificate(cert));
    out << "[hj] certificate written to " << s.out_path << '\n';
  }
  return kOk;
}

int hj_number_cmd(const Settings& s, std::ostream& out) {
  HJNumberOptions options;
  options.cap = s.cap;
  options.prune_color_symmetry = s.prune;
  const auto result = hj_number(s.p, s.q, s.nmax, options);
  for (std::size_t n = 1; n <= s.nmax; ++n) {
    const bool holds = std::find(result.holds_at.begin(), result.holds_at.end(), n) != result.holds_at.end();
    out << "[hj-number] N = " << n << ": " << (holds ? "every coloring has a line" : "some coloring has no line")
        << '\n';
  }
  if (!result.least) {
    out << "none\n";
    return kNegative;
  }
  out << *result.least << '\n';
  return kOk;
}

int enumerate(const Settings& s, std::ostream& out) {
  const auto ladder = AlphabetLadder::parse(s.ladder);
  SpanQuery q;
  q.seq = parse_seq(s.seq);
  q.alphabets = ladder.levels(s.k, q.seq.size());
  q.kind = parse_kind(s.kind);
  const auto items = enumerate_span(q, s.max_span);
  for (const auto& w : items) out << to_string(w) << '\n';
  out << "[span] " << items.size() << " distinct of " << span_selection_count(q) << " selections\n";
  return kOk;
}

int probe(const Settings& s, std::ostream& out) {
  const auto c = resolve_coloring(s.coloring);
  const auto ladder = AlphabetLadder::parse(s.ladder);
  const auto seq = s.seq.empty() ? VarSeq::all_x(1 << 16) : VarSeq(parse_seq(s.seq));
  ProbeOptions options;
  options.max_chain = s.max_chain;
  options.extension_depth = s.extension_depth;
  options.eval_budget = s.budget;
  const auto e = color_class(c, s.color);
  const auto ev = largeness_probe(e, seq, s.k, ladder, parse_probe_mode(s.mode), options);
  std::string chain;
  for (const auto& w : ev.prefix) chain += (chain.empty() ? "" : " ") + to_string(w);
  out << "[probe] " << to_string(ev.verdict) << ", chain " << chain << ", " << ev.records.size() << " extensions, "
      << ev.evaluations << " evaluations\n";
  for (const auto& r : ev.records) {
    out << "[probe] chain " << r.chain_length << " extension " << to_string(r.extension) << ": "
        << (r.product ? to_string(*r.product) : std::string("none")) << '\n';
  }
  switch (ev.verdict) {
    case Verdict::kFoundPrefix: return kOk;
    case Verdict::kCounterexamplePrefix: return kNegative;
    case Verdict::kBudgetExhausted: return kUndecided;
  }
  return kUndecided;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hales-Jewett, Carlson-Simpson and Carlson structure search"};
  app.require_subcommand(1);
  Settings s;
  app.add_option("--workers", s.workers, "worker threads for the parallel kernels");

  auto* hj = app.add_subcommand("hj-search", "find a monochromatic line in {0..p-1}^n");
  hj->add_option("--coloring", s.coloring)->required();
  hj->add_option("--p", s.p)->required()->check(CLI::PositiveNumber);
  hj->add_option("--n", s.n)->required()->check(CLI::PositiveNumber);
  hj->add_option("--cap", s.cap);
  hj->add_option("--out", s.out_path);

  auto* hjn = app.add_subcommand("hj-number", "least N with a line for every q-coloring of p^N");
  hjn->add_option("--p", s.p)->required()->check(CLI::PositiveNumber);
  hjn->add_option("--q", s.q)->required()->check(CLI::PositiveNumber);
  hjn->add_option("--nmax", s.nmax)->required()->check(CLI::PositiveNumber);
  hjn->add_flag("--prune", s.prune, "skip colorings equal up to renaming colors");
  hjn->add_option("--cap", s.cap);

  CLI::App* extractors[2];
  const char* names[2] = {"cs-extract", "carlson-extract"};
  for (int i = 0; i < 2; ++i) {
    auto* sub = app.add_subcommand(names[i], i == 0 ? "Carlson-Simpson certificate" : "Carlson certificate");
    sub->add_option("--coloring", s.coloring)->required();
    sub->add_option("--ladder", s.ladder);
    sub->add_option("--depth", s.depth);
    sub->add_option("--mode", s.mode)->check(CLI::IsMember({"direct", "proof-guided"}));
    sub->add_option("--budget", s.budget)->check(CLI::PositiveNumber);
    sub->add_option("--max-word-length", s.max_word_length)->check(CLI::PositiveNumber);
    sub->add_option("--max-dimension", s.max_dimension)->check(CLI::PositiveNumber);
    sub->add_option("--max-chain", s.max_chain)->check(CLI::PositiveNumber);
    sub->add_option("--extension-depth", s.extension_depth)->check(CLI::PositiveNumber);
    sub->add_option("--probe-budget", s.probe_budget)->check(CLI::PositiveNumber);
    sub->add_option("--out", s.out_path);
    extractors[i] = sub;
  }

  auto* ver = app.add_subcommand("verify", "recheck a certificate file");
  ver->add_option("--cert", s.cert_path)->required();
  ver->add_option("--cap", s.cap);

  auto* en = app.add_subcommand("enumerate-span", "list a span of a finite sequence");
  en->add_option("--seq", s.seq, "comma-separated variable words")->required();
  en->add_option("--ladder", s.ladder);
  en->add_option("--k", s.k);
  en->add_option("--kind", s.kind)
      ->check(CLI::IsMember({"reduced-constant", "reduced-variable", "extracted-constant", "extracted-variable"}));
  en->add_option("--max-span", s.max_span);

  auto* pr = app.add_subcommand("probe-largeness", "bounded largeness probe of one color class");
  pr->add_option("--coloring", s.coloring)->required();
  pr->add_option("--color", s.color)->required();
  pr->add_option("--ladder", s.ladder);
  pr->add_option("--k", s.k);
  pr->add_option("--mode", s.mode)->check(CLI::IsMember({"reduced-shifted", "reduced", "extracted"}));
  pr->add_option("--budget", s.budget)->check(CLI::PositiveNumber);
  pr->add_option("--seq", s.seq, "comma-separated variable words (default x, x, ...)");
  pr->add_option("--max-chain", s.max_chain)->check(CLI::PositiveNumber);
  pr->add_option("--extension-depth", s.extension_depth)->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    pr->callback([&] {
      if (pr->count("--mode") == 0) s.mode = "reduced-shifted";
      if (pr->count("--budget") == 0) s.budget = 200'000;
    });
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (s.workers > 0) omp_set_num_threads(s.workers);

  try {
    if (hj->parsed()) return hj_search(s, out);
    if (hjn->parsed()) return hj_number_cmd(s, out);
    if (extractors[0]->parsed()) return extract(false, s, out);
    if (extractors[1]->parsed()) return extract(true, s, out);
    if (ver->parsed()) return verify(s, out);
    if (en->parsed()) return enumerate(s, out);
    if (pr->parsed()) return probe(s, out);
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kUndecided;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return kUndecided;
  } catch (const Inconclusive& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kUndecided;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace hjcs::cli
