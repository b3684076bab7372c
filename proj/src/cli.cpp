#include "proclang/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "proclang/encodings.hpp"
#include "proclang/repro.hpp"
#include "proclang/syntax.hpp"
#include "proclang/validator.hpp"

#ifndef PROCLANG_CORPUS_DIR
#define PROCLANG_CORPUS_DIR "corpus"
#endif

namespace proclang {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kTruncated = 2;
constexpr int kUsage = 64;

struct Settings {
  std::string lang = "L[S,P,C,I,J]";
  ExploreBounds bounds;
  int jobs = 1;
  std::string graph_out;
  std::string file;
  std::string term_text;
  std::string pattern_text;
  std::string from;
  std::string to;
  std::string method = "sync-async";
  std::string encoding = "sync-async";
  std::string corpus;
  std::string repro_id;
  std::size_t k = 4;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string slurp(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string read_input(const Settings& s, std::istream& in) {
  if (s.file.empty() || s.file == "-") return slurp(in);
  std::ifstream f(s.file);
  if (!f) throw UsageError("cannot open " + s.file);
  return slurp(f);
}

FeatureVector language(const std::string& text) {
  try {
    return FeatureVector::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_parse(const Settings& s, std::istream& in, std::ostream& out) {
  out << print(parse_process(read_input(s, in))) << '\n';
  return kOk;
}

int cmd_validate(const Settings& s, std::istream& in, std::ostream& out) {
  const Process p = parse_process(read_input(s, in));
  LanguageFilter filter;
  try {
    filter = LanguageFilter::parse(s.lang);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bool all_valid = true;
  for (const FeatureVector& l : FeatureVector::all()) {
    if (!filter.matches(l)) continue;
    const auto bad = validate_process(p, l);
    out << l.str() << ": " << (bad.empty() ? "valid" : "invalid") << '\n';
    for (const Violation& v : bad) out << "  " << format_violation(v) << '\n';
    all_valid = all_valid && bad.empty();
  }
  return all_valid ? kOk : kFailed;
}

int cmd_match(const Settings& s, std::ostream& out) {
  const auto terms = parse_term_list(s.term_text);
  const auto patterns = parse_pattern_list(s.pattern_text);
  for (const Pattern& p : patterns) {
    if (!well_formed_pattern(p, Matching::kI)) throw UsageError("pattern " + print(p) + " repeats a binder");
  }
  const auto m = poly_match(terms, patterns);
  out << (m ? m->str() : "UNDEFINED") << '\n';
  return kOk;
}

Process checked_process(const Settings& s, std::istream& in, const FeatureVector& l, std::ostream& err,
                        bool& ok) {
  const Process p = parse_process(read_input(s, in));
  const auto bad = validate_process(p, l);
  ok = bad.empty();
  for (const Violation& v : bad) err << "not in " << l.str() << ": " << format_violation(v) << '\n';
  return p;
}

int cmd_step(const Settings& s, std::istream& in, std::ostream& out, std::ostream& err) {
  const FeatureVector l = language(s.lang);
  bool ok = true;
  const Process p = checked_process(s, in, l, err, ok);
  if (!ok) return kFailed;
  const CanonicalState st = normalize(p);
  out << "state: " << st.key << '\n';
  const auto ts = enumerate_transitions(st, l, s.bounds.max_repl_unfold);
  out << ts.size() << " redex" << (ts.size() == 1 ? "" : "es") << '\n';
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Redex& r = ts[i].redex;
    out << "[" << i << "] join=" << r.join.str() << " outputs=";
    for (std::size_t k = 0; k < r.outputs.size(); ++k) out << (k ? "," : "") << r.outputs[k].str();
    out << " degree=" << r.degree << " sigma=" << r.sigma.str() << '\n';
    out << "    -> " << ts[i].successor.key << '\n';
  }
  return kOk;
}

int cmd_explore(const Settings& s, std::istream& in, std::ostream& out, std::ostream& err) {
  const FeatureVector l = language(s.lang);
  bool ok = true;
  const Process p = checked_process(s, in, l, err, ok);
  if (!ok) return kFailed;
  const StateGraph g = explore(p, l, s.bounds, s.jobs);
  const ObservationProfile prof = observations(g);
  out << "language: " << l.str() << '\n';
  out << "states: " << g.states.size() << "  edges: " << g.edges.size() << '\n';
  out << "profile: " << prof.str() << '\n';
  if (const auto ok_state = std::find_if(g.states.begin(), g.states.end(),
                                         [](const StateNode& n) { return n.state.has_ok(); });
      ok_state != g.states.end()) {
    out << "success trace:\n";
    for (const auto& line : trace_to(g, static_cast<std::size_t>(ok_state - g.states.begin()))) {
      out << "  " << line << '\n';
    }
  }
  if (g.hit_state_bound) out << "truncated: max-states " << s.bounds.max_states << " reached\n";
  if (g.hit_depth_bound) out << "truncated: max-depth " << s.bounds.max_depth << " reached\n";
  if (!s.graph_out.empty()) {
    std::ofstream f(s.graph_out);
    if (!f) throw UsageError("cannot write " + s.graph_out);
    f << dump_graph(g);
  }
  return g.truncated() ? kTruncated : kOk;
}

Encoding encoding_for(const std::string& method, const std::string& from, const std::string& to) {
  if (method == "leq") {
    if (from.empty() || to.empty()) throw UsageError("--method leq needs --from and --to");
    try {
      return embed_leq_encoding(language(from), language(to));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (method == "sync-async") {
    const Encoding bin = sync_async_binary();
    const Encoding join = sync_async_joining();
    if (from.empty() || language(from) == join.source) return join;
    if (language(from) == bin.source) return bin;
    throw UsageError("sync-async translates from " + bin.source.str() + " or " + join.source.str());
  }
  if (method == "naive-join") return naive_join_flatten();
  throw UsageError("unknown method " + method + " (leq, sync-async, naive-join)");
}

int cmd_encode(const Settings& s, std::istream& in, std::ostream& out, std::ostream& err) {
  const Encoding e = encoding_for(s.method, s.from, s.to);
  if (!s.to.empty() && language(s.to) != e.target) {
    throw UsageError(s.method + " translates into " + e.target.str() + ", not " + s.to);
  }
  const Process p = parse_process(read_input(s, in));
  try {
    out << print(translate(e, p)) << '\n';
  } catch (const std::invalid_argument& x) {
    err << x.what() << '\n';
    return kFailed;
  }
  return kOk;
}

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::is_directory(dir)) throw UsageError("no corpus directory " + dir.string());
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".proc") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_check(const Settings& s, std::ostream& out) {
  std::string from = s.from;
  std::string to = s.to;
  if (s.encoding == "leq" && from.empty() && to.empty()) {
    from = "L[A,M,D,NO,B]";
    to = "L[S,P,C,I,J]";
  }
  const Encoding e = encoding_for(s.encoding, from, to);
  const std::filesystem::path dir =
      s.corpus.empty() ? std::filesystem::path(PROCLANG_CORPUS_DIR) / s.encoding : std::filesystem::path(s.corpus);
  const auto files = corpus_files(dir);
  const CheckOptions opts{s.bounds, s.jobs};

  std::map<std::string, std::map<Status, int>> table;
  auto record = [&](const std::string& entry, const Verdict& v) {
    out << entry << "  " << v.str() << '\n';
    ++table[criterion_name(v.criterion)][v.status];
  };
  out << "encoding: " << e.method << " " << e.source.str() << " -> " << e.target.str() << '\n';
  record("(all operators)", check_compositionality(e));
  for (const auto& file : files) {
    std::ifstream f(file);
    const std::string name = file.filename().string();
    Process p;
    try {
      p = parse_process(slurp(f));
    } catch (const ParseError& x) {
      out << name << "  parse error: " << x.what() << '\n';
      table["parse"][Status::kFail]++;
      continue;
    }
    for (const Verdict& v : check_process(e, p, opts)) record(name, v);
  }
  out << "\nsummary (" << files.size() << " corpus entries)\n";
  out << "criterion                    pass  fail  inconclusive\n";
  bool failed = false;
  bool inconclusive = false;
  for (const auto& [criterion, counts] : table) {
    auto get = [&](Status st) {
      auto it = counts.find(st);
      return it == counts.end() ? 0 : it->second;
    };
    out << criterion << std::string(criterion.size() < 28 ? 29 - criterion.size() : 1, ' ') << get(Status::kPass)
        << "     " << get(Status::kFail) << "     " << get(Status::kInconclusive) << '\n';
    failed = failed || get(Status::kFail) > 0;
    inconclusive = inconclusive || get(Status::kInconclusive) > 0;
  }
  if (failed) return kFailed;
  return inconclusive ? kTruncated : kOk;
}

int cmd_repro(const Settings& s, std::ostream& out) {
  const auto& ids = repro_ids();
  if (std::find(ids.begin(), ids.end(), s.repro_id) == ids.end()) {
    std::string known;
    for (const auto& id : ids) known += " " + id;
    throw UsageError("unknown repro case " + s.repro_id + "; known:" + known);
  }
  ReproOptions o;
  o.bounds = s.bounds;
  o.jobs = s.jobs;
  o.k = s.k;
  const ReproResult r = run_repro(s.repro_id, o);
  out << r.report << (r.passed ? "PASS" : "FAIL") << ' ' << s.repro_id << '\n';
  if (!r.passed) return kFailed;
  return r.truncated ? kTruncated : kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Workbench for the 48 process calculi of the synchronism/arity/medium/matching/coordination family"};
  app.name("proclang");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--lang", s.lang, "language, e.g. L[A,M,C,NO,J]")->capture_default_str();
  app.add_option("--max-states", s.bounds.max_states, "exploration state bound")->capture_default_str();
  app.add_option("--max-depth", s.bounds.max_depth, "exploration depth bound")->capture_default_str();
  app.add_option("--max-repl", s.bounds.max_repl_unfold, "copies of a replication per redex")->capture_default_str();
  app.add_option("--jobs", s.jobs, "exploration threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--graph-out", s.graph_out, "write the explored graph here");

  auto* parse = app.add_subcommand("parse", "parse and reprint a process");
  parse->add_option("file", s.file, "input file (stdin if absent)");
  auto* validate = app.add_subcommand("validate", "check a process against a language or a dash filter");
  validate->add_option("file", s.file, "input file (stdin if absent)");
  auto* match = app.add_subcommand("match", "match a term sequence against a pattern sequence");
  match->add_option("terms", s.term_text, "comma-separated terms")->required();
  match->add_option("patterns", s.pattern_text, "comma-separated patterns")->required();
  auto* step = app.add_subcommand("step", "list the redexes of a process and their reducts");
  step->add_option("file", s.file, "input file (stdin if absent)");
  auto* exp = app.add_subcommand("explore", "explore the reachable states");
  exp->add_option("file", s.file, "input file (stdin if absent)");
  auto* encode = app.add_subcommand("encode", "translate a process");
  encode->add_option("--from", s.from, "source language");
  encode->add_option("--to", s.to, "target language");
  encode->add_option("--method", s.method, "leq, sync-async or naive-join")->capture_default_str();
  encode->add_option("file", s.file, "input file (stdin if absent)");
  auto* check = app.add_subcommand("check", "run the validity criteria over a corpus");
  check->add_option("--encoding", s.encoding, "leq, sync-async or naive-join")->capture_default_str();
  check->add_option("--corpus", s.corpus, "directory of .proc files");
  check->add_option("--from", s.from, "source language (leq)");
  check->add_option("--to", s.to, "target language (leq)");
  auto* repro = app.add_subcommand("repro", "run a built-in reproduction case");
  repro->add_option("id", s.repro_id, "case id")->required();
  repro->add_option("--k", s.k, "participants for thm1-degree")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (!validate->parsed()) language(s.lang);
    if (parse->parsed()) return cmd_parse(s, in, out);
    if (validate->parsed()) return cmd_validate(s, in, out);
    if (match->parsed()) return cmd_match(s, out);
    if (step->parsed()) return cmd_step(s, in, out, err);
    if (exp->parsed()) return cmd_explore(s, in, out, err);
    if (encode->parsed()) return cmd_encode(s, in, out, err);
    if (check->parsed()) return cmd_check(s, out);
    if (repro->parsed()) return cmd_repro(s, out);
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "syntax error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

}  // namespace proclang
