#include "proclang/repro.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "proclang/encodings.hpp"
#include "proclang/syntax.hpp"
#include "proclang/validator.hpp"

namespace proclang {

namespace {

const char* kOmega = "(nu d)(!(d(x) >> d<x>) | d<a>)";

std::string join_soup_source() {
  return std::string("(c1(w) | c2(x)) >> ok | (c2(y) | c1(z)) >> ") + kOmega + " | c1<a> | c2<b>";
}

class Report {
 public:
  void line(const std::string& text) { os_ << text << '\n'; }

  bool check(bool ok, const char* module, const std::string& what) {
    os_ << (ok ? "PASS" : "FAIL") << " [" << module << "] " << what << '\n';
    passed_ = passed_ && ok;
    return ok;
  }

  void note_truncation(const StateGraph& g) { truncated_ = truncated_ || g.truncated(); }
  void mark_truncated() { truncated_ = true; }

  ReproResult result() const { return {passed_, truncated_, os_.str()}; }

 private:
  std::ostringstream os_;
  bool passed_ = true;
  bool truncated_ = false;
};

bool parses_and_validates(Report& r, const FeatureVector& l, const std::string& text, Process& out) {
  try {
    out = parse_process(text);
  } catch (const ParseError& e) {
    return r.check(false, "syntax", "bundled process parses: " + std::string(e.what()));
  }
  const auto bad = validate_process(out, l);
  std::string detail;
  for (const auto& v : bad) detail += " " + format_violation(v);
  return r.check(bad.empty(), "language", "`" + text + "` is in " + l.str() + detail);
}

// Prints a canonical substitution with the join's source binder names.
std::string source_sigma(const Join& original, const Join& canonical, const Substitution& sigma) {
  const auto src = join_binders(original);
  const auto lab = join_binders(canonical);
  Substitution out;
  for (std::size_t i = 0; i < src.size() && i < lab.size(); ++i) {
    if (const Term* t = sigma.find(lab[i])) out.bind(src[i], *t);
  }
  return out.str();
}

ReproResult intro_join(const ReproOptions&) {
  Report r;
  const FeatureVector l = FeatureVector::parse("L[S,M,C,NO,J]");
  const std::string text = "m<a>.p1<m>.0 | n<b>.p2<n>.0 | (m(x) | n(y)) >> q<x>.q<y>.0";
  r.line("P1 = p1<m>.0, P2 = p2<n>.0, Q = q<x>.q<y>.0 in " + l.str());
  Process p;
  if (!parses_and_validates(r, l, text, p)) return r.result();
  const CanonicalState s = normalize(p);
  r.line("initial:  " + s.key);
  const auto ts = enumerate_transitions(s, l);
  if (!r.check(ts.size() == 1, "semantics", "exactly one redex (found " + std::to_string(ts.size()) + ")")) {
    return r.result();
  }
  const Transition& t = ts.front();
  const Join& canonical_join = *s.threads[t.redex.join.path.front()].as<Join>();
  const Join* original = nullptr;
  for (const Process& c : par_components(p)) {
    if (const auto* j = c.as<Join>()) original = j;
  }
  r.line("redex:    join " + t.redex.join.str() + ", degree " + std::to_string(t.redex.degree) + ", sigma " +
         source_sigma(*original, canonical_join, t.redex.sigma));
  r.line("reduct:   " + t.successor.key);
  r.check(t.redex.degree == 3, "semantics", "the step has degree 3");
  const std::string expected = source_sigma(*original, canonical_join, t.redex.sigma);
  r.check(expected == "{a/x, b/y}", "matching", "sigma = {a/x, b/y}");
  const CanonicalState want = normalize(parse_process("p1<m>.0 | p2<n>.0 | q<a>.q<b>.0"));
  r.check(t.successor.key == want.key, "semantics", "reduct is P1 | P2 | {a/x, b/y}Q = " + want.key);
  return r.result();
}

ReproResult thm1_degree(const ReproOptions& o) {
  Report r;
  const FeatureVector l = FeatureVector::parse("L[A,M,C,NO,J]");
  const auto family = coordination_degree_demo(o.k, l);
  std::vector<std::string> parts;
  for (const Process& s : family) parts.push_back(print(s));
  const Process whole = par_of(family);
  r.line("k = " + std::to_string(o.k) + " in " + l.str() + ": " + print(whole));
  r.check(validate_process(whole, l).empty(), "language", "soup is in " + l.str());
  const StateGraph g = explore(whole, l, o.bounds, o.jobs);
  r.note_truncation(g);
  const ObservationProfile prof = observations(g);
  r.line("profile:  " + prof.str());
  r.check(prof.may_succeed, "semantics", "all " + std::to_string(o.k + 1) + " participants reach ok");
  r.check(prof.max_degree_seen == o.k + 1, "semantics", "the reduction has degree " + std::to_string(o.k + 1));
  for (std::size_t j = 0; j < family.size(); ++j) {
    std::vector<Process> rest = family;
    rest[j] = Process{};
    const auto redexes = enumerate_redexes(normalize(par_of(rest)), l, o.bounds.max_repl_unfold);
    r.check(redexes.empty(), "semantics", "without S" + std::to_string(j) + " (" + parts[j] + ") no redex");
  }
  return r.result();
}

ReproResult sync_async_case(const ReproOptions& o) {
  Report r;
  CheckOptions co{o.bounds, o.jobs};
  struct Case {
    Encoding enc;
    std::string text;
  };
  const std::vector<Case> cases{
      {sync_async_binary(), "n<a>.ok | n(x).0"},
      {sync_async_binary(), "a<b>.c<b>.0 | a(x).c(y).x<y>.ok"},
      {sync_async_joining(), "m<a>.0 | n<b>.0 | (m(x) | n(y)) >> x<y>.ok"},
      {sync_async_joining(), "(n1(a1) | n2(a2)) >> ok | n1<b>.0 | n2<c>.0"},
  };
  for (const Encoding& e : {sync_async_binary(), sync_async_joining()}) {
    const Verdict v = check_compositionality(e);
    r.check(v.status == Status::kPass, "encodings", e.source.str() + " -> " + e.target.str() + " " + v.str());
  }
  for (const Case& c : cases) {
    Process p;
    if (!parses_and_validates(r, c.enc.source, c.text, p)) continue;
    r.line("source:   " + c.text);
    r.line("encoded:  " + print(translate(c.enc, p)));
    for (const Verdict& v : check_process(c.enc, p, co)) {
      if (v.status == Status::kInconclusive) r.mark_truncated();
      r.check(v.status == Status::kPass, "validator", v.str());
    }
  }
  return r.result();
}

ReproResult deadlock_case(const ReproOptions& o) {
  Report r;
  const Encoding e = naive_join_flatten();
  const std::string text = join_soup_source();
  Process p;
  if (!parses_and_validates(r, e.source, text, p)) return r.result();
  const StateGraph gs = explore(p, e.source, o.bounds, o.jobs);
  const ObservationProfile ps = observations(gs);
  r.note_truncation(gs);
  r.line("source:   " + text);
  r.line("profile:  " + ps.str());
  r.check(ps.may_succeed, "semantics", "source may succeed");
  r.check(!ps.reaches_stuck_without_success, "semantics", "source never gets stuck without success");
  r.check(ps.has_cycle && ps.diverges_within_bound, "semantics", "source diverges (proven cycle)");

  const Process target = translate(e, p);
  const StateGraph gt = explore(target, e.target, o.bounds, o.jobs);
  const ObservationProfile pt = observations(gt);
  r.note_truncation(gt);
  r.line("encoded:  " + print(target));
  r.line("profile:  " + pt.str());
  r.check(pt.reaches_stuck_without_success, "encodings", "flattening can deadlock without success");

  const Verdict v = check_operational_correspondence(e, p, {o.bounds, o.jobs});
  r.line(v.str());
  r.check(v.status == Status::kFail, "validator", "operational correspondence fails");
  r.check(witness_replays(v.witness, e.target, o.bounds.max_repl_unfold), "semantics", "the witness trace replays");
  return r.result();
}

ReproResult thm4_poly(const ReproOptions& o) {
  Report r;
  const FeatureVector l = FeatureVector::parse("L[A,P,D,NO,B]");
  const std::string text = "<a, b> | (x, y).ok";
  Process p;
  if (!parses_and_validates(r, l, text, p)) return r.result();
  const StateGraph g = explore(p, l, o.bounds, o.jobs);
  r.note_truncation(g);
  const ObservationProfile prof = observations(g);
  r.line("P | Q = " + text);
  r.line("profile:  " + prof.str());
  const auto ts = enumerate_transitions(normalize(p), l);
  r.check(ts.size() == 1 && ts.front().redex.degree == 2, "semantics", "one binary redex matching a pair");
  r.check(prof.may_succeed, "semantics", "P | Q reaches ok");
  return r.result();
}

ReproResult thm8_namematch(const ReproOptions& o) {
  Report r;
  const FeatureVector l = FeatureVector::parse("L[A,M,D,NM,B]");
  const std::string p_text = "<a>";
  const std::string q_text = "(#a).(<b> | ok)";
  Process p;
  Process q;
  if (!parses_and_validates(r, l, p_text, p) || !parses_and_validates(r, l, q_text, q)) return r.result();
  const StateGraph g = explore(Par{p, q}, l, o.bounds, o.jobs);
  r.note_truncation(g);
  r.line("P = " + p_text + ", Q = " + q_text);
  r.line("profile:  " + observations(g).str());
  r.check(observations(g).may_succeed, "semantics", "P | Q reaches ok");
  const Name a = Name::source("a");
  const Name b = Name::source("b");
  const Substitution sigma{{a, Term(b)}, {b, Term(a)}};
  const Process sp = apply(sigma, p);
  const Process sq = apply(sigma, q);
  const Process left = Par{sp, q};
  const Process right = Par{p, sq};
  r.line("sigma = " + sigma.str() + ": sigma P | Q = " + print(left) + ", P | sigma Q = " + print(right));
  r.check(enumerate_redexes(normalize(left), l).empty(), "semantics", "sigma P | Q has no redex");
  r.check(enumerate_redexes(normalize(right), l).empty(), "semantics", "P | sigma Q has no redex");
  return r.result();
}

}  // namespace

const std::vector<std::string>& repro_ids() {
  static const std::vector<std::string> ids{"intro-join",    "thm1-degree",          "sec5-sync-async",
                                            "sec8-deadlock", "thm4-poly-separation", "thm8-namematch-witness"};
  return ids;
}

std::vector<std::pair<FeatureVector, std::string>> repro_processes(const std::string& id, const ReproOptions& o) {
  const auto L = [](const char* t) { return FeatureVector::parse(t); };
  if (id == "intro-join") {
    return {{L("L[S,M,C,NO,J]"), "m<a>.p1<m>.0 | n<b>.p2<n>.0 | (m(x) | n(y)) >> q<x>.q<y>.0"}};
  }
  if (id == "thm1-degree") {
    const FeatureVector l = L("L[A,M,C,NO,J]");
    return {{l, print(par_of(coordination_degree_demo(o.k, l)))}};
  }
  if (id == "sec5-sync-async") {
    const std::string soup = "m<a>.0 | n<b>.0 | (m(x) | n(y)) >> x<y>.ok";
    return {{L("L[S,M,C,NO,J]"), soup}, {L("L[A,M,C,NO,J]"), print(encode_sync_async_joining(parse_process(soup)))}};
  }
  if (id == "sec8-deadlock") {
    return {{L("L[A,M,C,NO,J]"), join_soup_source()},
            {L("L[A,M,C,NO,B]"), print(encode_naive_join_flatten(parse_process(join_soup_source())))}};
  }
  if (id == "thm4-poly-separation") return {{L("L[A,P,D,NO,B]"), "<a, b> | (x, y).ok"}};
  if (id == "thm8-namematch-witness") {
    return {{L("L[A,M,D,NM,B]"), "<a> | (#a).(<b> | ok)"},
            {L("L[A,M,D,NM,B]"), "<b> | (#a).(<b> | ok)"},
            {L("L[A,M,D,NM,B]"), "<a> | (#b).(<a> | ok)"}};
  }
  throw std::invalid_argument("unknown repro case: " + id);
}

ReproResult run_repro(const std::string& id, const ReproOptions& o) {
  if (id == "intro-join") return intro_join(o);
  if (id == "thm1-degree") return thm1_degree(o);
  if (id == "sec5-sync-async") return sync_async_case(o);
  if (id == "sec8-deadlock") return deadlock_case(o);
  if (id == "thm4-poly-separation") return thm4_poly(o);
  if (id == "thm8-namematch-witness") return thm8_namematch(o);
  throw std::invalid_argument("unknown repro case: " + id);
}

}  // namespace proclang
