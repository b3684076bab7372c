#include "proclang/validator.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "proclang/syntax.hpp"

namespace proclang {

const char* criterion_name(Criterion c) {
  switch (c) {
    case Criterion::kCompositionality:
      return "compositionality";
    case Criterion::kNameInvariance:
      return "name_invariance";
    case Criterion::kOperationalCorrespondence:
      return "operational_correspondence";
    case Criterion::kDivergenceReflection:
      return "divergence_reflection";
    case Criterion::kSuccessSensitivity:
      return "success_sensitivity";
  }
  return "?";
}

const char* status_name(Status s) {
  switch (s) {
    case Status::kPass:
      return "pass";
    case Status::kFail:
      return "fail";
    case Status::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string Verdict::str() const {
  std::ostringstream os;
  os << criterion_name(criterion) << ": " << status_name(status);
  if (status == Status::kInconclusive && bound) {
    os << " (bounds states=" << bound->max_states << " depth=" << bound->max_depth
       << " repl=" << bound->max_repl_unfold << ")";
  }
  if (!note.empty()) os << " -- " << note;
  for (const std::string& w : witness) os << "\n    " << w;
  return os.str();
}

namespace {

Verdict verdict(Criterion c, Status s, std::string note = {}) {
  Verdict v;
  v.criterion = c;
  v.status = s;
  v.note = std::move(note);
  return v;
}

Verdict inconclusive(Criterion c, const CheckOptions& o, std::string note) {
  Verdict v = verdict(c, Status::kInconclusive, std::move(note));
  v.bound = o.bounds;
  return v;
}

std::optional<std::size_t> first_success(const StateGraph& g) {
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    if (g.states[i].state.has_ok()) return i;
  }
  return std::nullopt;
}

const char* kApproximation = "observation profiles stand in for behavioural equivalence";

}  // namespace

Verdict check_success_sensitivity(const Encoding& e, const Process& p, const CheckOptions& o) {
  const Criterion c = Criterion::kSuccessSensitivity;
  const StateGraph gs = explore(p, e.source, o.bounds, o.jobs);
  const StateGraph gt = explore(translate(e, p), e.target, o.bounds, o.jobs);
  const auto ss = first_success(gs);
  const auto st = first_success(gt);
  if (ss.has_value() == st.has_value()) {
    if (ss) return verdict(c, Status::kPass, "both succeed");
    if (gs.truncated() || gt.truncated()) return inconclusive(c, o, "no success within bounds");
    return verdict(c, Status::kPass, "neither succeeds");
  }
  const StateGraph& silent = ss ? gt : gs;
  if (silent.truncated()) return inconclusive(c, o, "success on one side only, other side truncated");
  Verdict v = verdict(c, Status::kFail, ss ? "source succeeds, translation cannot" : "translation succeeds, source cannot");
  v.witness = ss ? trace_to(gs, *ss) : trace_to(gt, *st);
  return v;
}

Verdict check_divergence_reflection(const Encoding& e, const Process& p, const CheckOptions& o) {
  const Criterion c = Criterion::kDivergenceReflection;
  const StateGraph gs = explore(p, e.source, o.bounds, o.jobs);
  const StateGraph gt = explore(translate(e, p), e.target, o.bounds, o.jobs);
  if (!cycle_states(gs).empty()) return verdict(c, Status::kPass, "source diverges");
  const auto loops = cycle_states(gt);
  if (!loops.empty()) {
    if (gs.truncated()) return inconclusive(c, o, "translation diverges, source exploration truncated");
    Verdict v = verdict(c, Status::kFail, "translation diverges, source has no cycle");
    v.witness = trace_to(gt, loops.front());
    return v;
  }
  if (gt.truncated()) return inconclusive(c, o, "translation exploration truncated without a cycle");
  return verdict(c, Status::kPass, "no divergence on either side");
}

Verdict check_operational_correspondence(const Encoding& e, const Process& p, const CheckOptions& o) {
  const Criterion c = Criterion::kOperationalCorrespondence;
  const StateGraph gs = explore(p, e.source, o.bounds, o.jobs);
  const StateGraph gt = explore(translate(e, p), e.target, o.bounds, o.jobs);
  if (gs.truncated() || gt.truncated()) return inconclusive(c, o, "exploration truncated");

  // Profiles of the translations of every source reduct.
  std::vector<ObservationProfile> wanted;
  for (const StateNode& s : gs.states) {
    const StateGraph g = explore(translate(e, s.state.process), e.target, o.bounds, o.jobs);
    if (g.truncated()) return inconclusive(c, o, "exploration of a translated reduct truncated");
    wanted.push_back(observations(g));
  }
  const std::vector<ObservationProfile> have = node_profiles(gt);

  for (std::size_t i = 0; i < wanted.size(); ++i) {
    const bool found = std::any_of(have.begin(), have.end(),
                                   [&](const ObservationProfile& h) { return h.same_behaviour(wanted[i]); });
    if (!found) {
      Verdict v = verdict(c, Status::kFail,
                          std::string("no target state behaves like the translation of a source reduct (") +
                              kApproximation + "); wanted " + wanted[i].str());
      v.witness = trace_to(gs, i);
      return v;
    }
  }

  // Soundness: every target state can still reach a state that behaves like
  // some translated source reduct.
  const std::size_t n = gt.states.size();
  std::vector<std::vector<std::size_t>> back(n);
  for (const Edge& edge : gt.edges) back[edge.to].push_back(edge.from);
  std::vector<bool> ok(n, false);
  std::vector<std::size_t> queue;
  for (std::size_t t = 0; t < n; ++t) {
    const bool good = std::any_of(wanted.begin(), wanted.end(),
                                  [&](const ObservationProfile& w) { return have[t].same_behaviour(w); });
    if (good) {
      ok[t] = true;
      queue.push_back(t);
    }
  }
  while (!queue.empty()) {
    const std::size_t t = queue.back();
    queue.pop_back();
    for (std::size_t f : back[t]) {
      if (!ok[f]) {
        ok[f] = true;
        queue.push_back(f);
      }
    }
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (!ok[t]) {
      Verdict v = verdict(c, Status::kFail,
                          std::string("target state matches no source reduct (") + kApproximation + "); it has " +
                              have[t].str());
      v.witness = trace_to(gt, t);
      return v;
    }
  }
  return verdict(c, Status::kPass, std::string("bounded check; ") + kApproximation);
}

namespace {

bool injective_on(const Substitution& s, const std::set<Name>& names) {
  std::set<Term> images;
  for (const Name& n : names) {
    const Term* img = s.find(n);
    if (!images.insert(img ? *img : Term(n)).second) return false;
  }
  return true;
}

// sigma' with phi(sigma(a)) = sigma'(phi(a)).
Substitution induced(const Encoding& e, const Substitution& s) {
  Substitution out;
  for (const auto& [from, to] : s.bindings()) {
    const auto src = e.rename_policy(from);
    const auto dst = e.rename_policy(to.name());
    for (std::size_t i = 0; i < src.size() && i < dst.size(); ++i) out.bind(src[i], Term(dst[i]));
  }
  return out;
}

}  // namespace

std::vector<Substitution> sample_substitutions(const Process& p) {
  std::vector<Name> names;
  for (const Name& n : free_names(p)) {
    if (n.is_source()) names.push_back(n);
  }
  std::vector<Substitution> out{Substitution{}};
  if (names.size() >= 2) {
    out.push_back(Substitution{{names[0], Term(names[1])}, {names[1], Term(names[0])}});
    out.push_back(Substitution{{names[1], Term(names[0])}});
  } else if (names.size() == 1) {
    Name other = Name::source("n0");
    for (int i = 1; other == names[0]; ++i) other = Name::source("n" + std::to_string(i));
    out.push_back(Substitution{{names[0], Term(other)}});
  }
  return out;
}

Verdict check_name_invariance(const Encoding& e, const Process& p, const std::vector<Substitution>& sigmas,
                              const CheckOptions& o) {
  const Criterion c = Criterion::kNameInvariance;
  const Process image = translate(e, p);
  const std::set<Name> fns = free_names(p);
  bool approximated = false;
  for (const Substitution& s : sigmas) {
    const Process lhs = translate(e, apply(s, p));
    const Process rhs = apply(induced(e, s), image);
    if (injective_on(s, fns)) {
      if (!struct_eq(lhs, rhs)) {
        Verdict v = verdict(c, Status::kFail, "injective substitution " + s.str() + " does not commute");
        v.witness = {print(lhs), print(rhs)};
        return v;
      }
      continue;
    }
    approximated = true;
    const StateGraph gl = explore(lhs, e.target, o.bounds, o.jobs);
    const StateGraph gr = explore(rhs, e.target, o.bounds, o.jobs);
    if (gl.truncated() || gr.truncated()) return inconclusive(c, o, "exploration truncated for " + s.str());
    if (!observations(gl).same_behaviour(observations(gr))) {
      Verdict v = verdict(c, Status::kFail, "substitution " + s.str() + " changes observations");
      v.witness = {print(lhs), print(rhs)};
      return v;
    }
  }
  return verdict(c, Status::kPass,
                 approximated ? std::string("non-injective cases compared by profile; ") + kApproximation
                              : std::string("exact up to structural congruence"));
}

namespace {

Name hole_name(std::size_t i) { return Name::reserved("hole", static_cast<std::uint32_t>(i)); }

Process hole(std::size_t i) { return output(Term(hole_name(i)), {Term(hole_name(i))}); }

std::optional<std::size_t> hole_index(const Process& p) {
  const auto* o = p.as<Output>();
  if (o == nullptr || !o->subject || !o->subject->is_leaf()) return std::nullopt;
  const Name& n = o->subject->name();
  if (n.origin() != NameOrigin::kReserved || n.base() != "hole") return std::nullopt;
  return n.counter();
}

// Replaces hole markers, counting how often each occurs.
Process fill(const Process& ctx, const std::vector<Process>& parts, std::vector<std::size_t>& seen) {
  if (auto h = hole_index(ctx)) {
    ++seen[*h];
    return parts[*h];
  }
  const Recurse rec = [&](const Process& q) { return fill(q, parts, seen); };
  return homomorphic_clause(ctx, rec);
}

struct Sample {
  std::string label;
  Process node;
  std::vector<Process> children;
};

std::vector<Sample> operator_samples(const FeatureVector& l) {
  const Name a = Name::source("a");
  const Name b = Name::source("b");
  const Name x = Name::source("x");
  const bool chan = l.medium == Medium::kC;
  const bool sync = l.sync == Synchronism::kS;
  const std::size_t arity = l.arity == Arity::kM ? 1 : 2;
  auto child = [&](const char* ch) {
    std::optional<Term> subject;
    if (chan) subject = Term(Name::source(ch));
    std::vector<Term> args(arity, Term(b));
    std::optional<Process> cont;
    if (sync) cont = Process{Ok{}};
    return output(subject, args, cont);
  };
  auto atom = [&](const char* ch, std::size_t k) {
    InputAtom at;
    if (chan) at.subject = Term(Name::source(ch));
    for (std::size_t i = 0; i < arity; ++i) at.patterns.push_back(Pattern::binder(Name::source("x" + std::to_string(k * 10 + i))));
    return at;
  };

  std::vector<Sample> out;
  out.push_back({"0", Process{}, {}});
  out.push_back({"ok", Process{Ok{}}, {}});
  {
    Process c0 = child("c0");
    std::optional<Term> subject;
    if (chan) subject = Term(a);
    std::optional<Process> cont;
    std::vector<Process> kids;
    if (sync) {
      cont = c0;
      kids.push_back(c0);
    }
    out.push_back({"output", output(subject, std::vector<Term>(arity, Term(b)), cont), kids});
  }
  const std::size_t max_atoms = l.coord == Coordination::kJ ? 3 : 1;
  for (std::size_t k = 1; k <= max_atoms; ++k) {
    Process body = child("c0");
    Join j;
    for (std::size_t i = 0; i < k; ++i) j.atoms.push_back(atom(i == 0 ? "a" : (i == 1 ? "b" : "c"), i));
    j.body = body;
    out.push_back({"join/" + std::to_string(k), j, {body}});
  }
  {
    Process body = child("c0");
    out.push_back({"restriction", Restrict{x, body}, {body}});
  }
  {
    Process l0 = child("c0");
    Process r0 = child("c1");
    out.push_back({"parallel", Par{l0, r0}, {l0, r0}});
  }
  {
    Process t0 = child("c0");
    Process e0 = child("c1");
    out.push_back({"conditional", Cond{Term(a), Term(b), t0, e0}, {t0, e0}});
  }
  {
    Process body = child("c0");
    out.push_back({"replication", Repl{body}, {body}});
  }
  return out;
}

}  // namespace

Verdict check_compositionality(const Encoding& e) {
  const Criterion c = Criterion::kCompositionality;
  for (const Sample& s : operator_samples(e.source)) {
    // The context: translate the top constructor with holes for children.
    ReservedNames names;
    const Recurse holes = [&](const Process& q) -> Process {
      for (std::size_t i = 0; i < s.children.size(); ++i) {
        if (q.identity() == s.children[i].identity()) return hole(i);
      }
      return q;  // a subprocess the clause recursed into that is not an immediate child
    };
    const Process context = e.clause(s.node, holes, names);

    std::vector<Process> parts;
    for (const Process& ch : s.children) parts.push_back(translate_unchecked(e, ch));
    std::vector<std::size_t> seen(s.children.size(), 0);
    const Process filled = fill(context, parts, seen);

    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (seen[i] != 1) {
        Verdict v = verdict(c, Status::kFail, "context for " + s.label + " uses hole " + std::to_string(i) + " " +
                                                  std::to_string(seen[i]) + " times");
        v.witness = {print(context)};
        return v;
      }
    }
    const Process whole = translate_unchecked(e, s.node);
    if (!alpha_eq(filled, whole)) {
      Verdict v = verdict(c, Status::kFail, "translation of " + s.label + " is not its context filled with translated parts");
      v.witness = {print(context), print(filled), print(whole)};
      return v;
    }
    if (s.label == "parallel") {
      const auto top = par_components(context);
      for (std::size_t i = 0; i < s.children.size(); ++i) {
        const bool at_top = std::any_of(top.begin(), top.end(), [&](const Process& t) { return hole_index(t) == i; });
        if (!at_top) {
          Verdict v = verdict(c, Status::kFail, "parallel context has a hole below top level");
          v.witness = {print(context)};
          return v;
        }
      }
    }
  }
  return verdict(c, Status::kPass, "every operator translates through a fixed context");
}

std::vector<Verdict> check_process(const Encoding& e, const Process& p, const CheckOptions& o) {
  return {check_name_invariance(e, p, sample_substitutions(p), o), check_operational_correspondence(e, p, o),
          check_divergence_reflection(e, p, o), check_success_sensitivity(e, p, o)};
}

bool witness_replays(const std::vector<std::string>& trace, const FeatureVector& l, std::size_t max_repl_unfold) {
  if (trace.empty()) return false;
  std::vector<CanonicalState> states;
  for (const std::string& text : trace) {
    try {
      states.push_back(normalize(parse_process(text)));
    } catch (const ParseError&) {
      return false;
    }
    if (states.back().key != text) return false;
  }
  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    const auto next = enumerate_transitions(states[i], l, max_repl_unfold);
    const bool found = std::any_of(next.begin(), next.end(),
                                   [&](const Transition& t) { return t.successor.key == states[i + 1].key; });
    if (!found) return false;
  }
  return true;
}

}  // namespace proclang
