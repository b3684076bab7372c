#include "proclang/encodings.hpp"

#include <stdexcept>

#include "proclang/syntax.hpp"

namespace proclang {

namespace {

std::vector<Name> identity_policy(const Name& n) { return {n}; }

FeatureVector lang(const char* text) { return FeatureVector::parse(text); }

std::string describe(const std::vector<Violation>& vs) {
  std::string out;
  for (const Violation& v : vs) {
    if (!out.empty()) out += "; ";
    out += format_violation(v);
  }
  return out;
}

}  // namespace

Process homomorphic_clause(const Process& p, const Recurse& sub) {
  return std::visit(
      [&](const auto& n) -> Process {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Null> || std::is_same_v<T, Ok>) {
          return p;
        } else if constexpr (std::is_same_v<T, Output>) {
          Output o = n;
          if (n.continuation) o.continuation = sub(*n.continuation);
          return o;
        } else if constexpr (std::is_same_v<T, Join>) {
          return Join{n.atoms, sub(n.body)};
        } else if constexpr (std::is_same_v<T, Restrict>) {
          return Restrict{n.name, sub(n.body)};
        } else if constexpr (std::is_same_v<T, Par>) {
          return Par{sub(n.left), sub(n.right)};
        } else if constexpr (std::is_same_v<T, Cond>) {
          return Cond{n.lhs, n.rhs, sub(n.then_branch), sub(n.else_branch)};
        } else if constexpr (std::is_same_v<T, Repl>) {
          return Repl{sub(n.body)};
        }
      },
      p.node());
}

Process translate_unchecked(const Encoding& e, const Process& p) {
  ReservedNames names;
  Recurse rec = [&](const Process& q) { return e.clause(q, rec, names); };
  return rec(p);
}

Process translate(const Encoding& e, const Process& p) {
  const auto bad = validate_process(p, e.source);
  if (!bad.empty()) {
    throw std::invalid_argument("source is not in " + e.source.str() + ": " + describe(bad));
  }
  for (const Name& n : all_names(p)) {
    if (n.origin() == NameOrigin::kReserved) {
      throw std::invalid_argument("source uses reserved name " + n.str());
    }
  }
  Process out = translate_unchecked(e, p);
  const auto broken = validate_process(out, e.target);
  if (!broken.empty()) {
    throw std::logic_error(e.method + " produced a process outside " + e.target.str() + ": " +
                           describe(broken));
  }
  return out;
}

Encoding identity_encoding(const FeatureVector& l) {
  Encoding e;
  e.method = "identity";
  e.source = l;
  e.target = l;
  e.clause = [](const Process& p, const Recurse& sub, ReservedNames&) { return homomorphic_clause(p, sub); };
  e.rename_policy = identity_policy;
  return e;
}

Encoding embed_leq_encoding(const FeatureVector& from, const FeatureVector& to) {
  if (!feature_leq(from, to)) {
    throw std::invalid_argument(from.str() + " is not below " + to.str());
  }
  Encoding e;
  e.method = "leq";
  e.source = from;
  e.target = to;
  e.rename_policy = identity_policy;
  const bool add_cont = from.sync == Synchronism::kA && to.sync == Synchronism::kS;
  const bool add_channel = from.medium == Medium::kD && to.medium == Medium::kC;
  if (add_channel) e.reserved.push_back("k");
  auto channel = [](std::size_t arity) { return Term(Name::reserved("k", static_cast<std::uint32_t>(arity))); };
  e.clause = [=](const Process& p, const Recurse& sub, ReservedNames&) -> Process {
    if (const auto* o = p.as<Output>()) {
      Output out = *o;
      if (add_channel) out.subject = channel(o->args.size());
      if (o->continuation) {
        out.continuation = sub(*o->continuation);
      } else if (add_cont) {
        out.continuation = Process{};
      }
      return out;
    }
    if (const auto* j = p.as<Join>()) {
      Join out{j->atoms, sub(j->body)};
      if (add_channel) {
        for (InputAtom& a : out.atoms) a.subject = channel(a.patterns.size());
      }
      return out;
    }
    return homomorphic_clause(p, sub);
  };
  return e;
}

Process embed_leq(const Process& p, const FeatureVector& from, const FeatureVector& to) {
  return translate(embed_leq_encoding(from, to), p);
}

namespace {

// [[n<t>.P]] = (nu z)(n<z> | z(x).(x<t> | [[P]]))
Process async_output(const Output& o, const Recurse& sub, ReservedNames& names) {
  const Name z = names.next("z");
  const Name x = names.next("x");
  Process cont = o.continuation ? sub(*o.continuation) : Process{};
  Process forward = output(Term(x), o.args);
  Process reply = input(Term(z), {Pattern::binder(x)}, Par{forward, cont});
  return Restrict{z, Par{output(o.subject, {Term(z)}), reply}};
}

// [[(n1(p1) | .. | ni(pi)) >> Q]] =
//   (nu x1)..(nu xi)((n1(z1) | .. | ni(zi)) >> (z1<x1> | .. | zi<xi> | (x1(p1) | .. | xi(pi)) >> [[Q]]))
Process async_join(const Join& j, const Recurse& sub, ReservedNames& names) {
  std::vector<Name> xs;
  std::vector<Name> zs;
  for (std::size_t i = 0; i < j.atoms.size(); ++i) {
    xs.push_back(names.next("x"));
    zs.push_back(names.next("z"));
  }
  Join request;
  Join receive;
  std::vector<Process> inside;
  for (std::size_t i = 0; i < j.atoms.size(); ++i) {
    request.atoms.push_back({j.atoms[i].subject, {Pattern::binder(zs[i])}});
    receive.atoms.push_back({Term(xs[i]), j.atoms[i].patterns});
    inside.push_back(output(Term(zs[i]), {Term(xs[i])}));
  }
  receive.body = sub(j.body);
  inside.push_back(receive);
  request.body = par_of(inside);
  return restrict_all(xs, request);
}

Process sync_async_clause(const Process& p, const Recurse& sub, ReservedNames& names) {
  if (const auto* o = p.as<Output>()) return async_output(*o, sub, names);
  if (const auto* j = p.as<Join>()) return async_join(*j, sub, names);
  return homomorphic_clause(p, sub);
}

// [[(m(x) | n(y)) >> P]] = m(x).n(y).[[P]]
Process flatten_clause(const Process& p, const Recurse& sub, ReservedNames&) {
  if (const auto* j = p.as<Join>()) {
    Process body = sub(j->body);
    for (auto it = j->atoms.rbegin(); it != j->atoms.rend(); ++it) body = Join{{*it}, body};
    return body;
  }
  return homomorphic_clause(p, sub);
}

}  // namespace

Encoding sync_async_binary() {
  Encoding e;
  e.method = "sync-async";
  e.source = lang("L[S,M,C,NO,B]");
  e.target = lang("L[A,M,C,NO,B]");
  e.clause = sync_async_clause;
  e.rename_policy = identity_policy;
  e.reserved = {"x", "z"};
  return e;
}

Encoding sync_async_joining() {
  Encoding e = sync_async_binary();
  e.source = lang("L[S,M,C,NO,J]");
  e.target = lang("L[A,M,C,NO,J]");
  return e;
}

Encoding naive_join_flatten() {
  Encoding e;
  e.method = "naive-join";
  e.source = lang("L[A,M,C,NO,J]");
  e.target = lang("L[A,M,C,NO,B]");
  e.clause = flatten_clause;
  e.rename_policy = identity_policy;
  return e;
}

Process encode_sync_async_binary(const Process& p) { return translate(sync_async_binary(), p); }
Process encode_sync_async_joining(const Process& p) { return translate(sync_async_joining(), p); }
Process encode_naive_join_flatten(const Process& p) { return translate(naive_join_flatten(), p); }

}  // namespace proclang
