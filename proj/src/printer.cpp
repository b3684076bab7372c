#include <sstream>

#include "proclang/syntax.hpp"

namespace proclang {
namespace {

class Printer {
 public:
  explicit Printer(const NameRenderer* render) : render_(render) {}

  std::string name(const Name& n) const { return render_ ? (*render_)(n) : n.str(); }

  void term(std::ostream& os, const Term& t) const {
    if (t.is_leaf()) {
      os << name(t.name());
      return;
    }
    term(os, t.left());
    os << '*';
    if (!t.right().is_leaf()) os << '(';
    term(os, t.right());
    if (!t.right().is_leaf()) os << ')';
  }

  void pattern(std::ostream& os, const Pattern& p) const {
    switch (p.kind()) {
      case PatternKind::kBinder:
        os << name(p.name());
        return;
      case PatternKind::kProtect:
        os << '#' << name(p.name());
        return;
      case PatternKind::kCompound:
        pattern(os, p.left());
        os << '*';
        if (p.right().is_compound()) os << '(';
        pattern(os, p.right());
        if (p.right().is_compound()) os << ')';
        return;
    }
  }

  void atom(std::ostream& os, const InputAtom& a) const {
    if (a.subject) term(os, *a.subject);
    os << '(';
    for (std::size_t i = 0; i < a.patterns.size(); ++i) {
      if (i) os << ", ";
      pattern(os, a.patterns[i]);
    }
    os << ')';
  }

  // Par level: a parallel composition may appear bare.
  void par(std::ostream& os, const Process& p) const {
    if (const auto* n = p.as<Par>()) {
      par(os, n->left);
      os << " | ";
      if (n->right.is<Par>()) {
        os << '(';
        par(os, n->right);
        os << ')';
      } else {
        prefix(os, n->right);
      }
      return;
    }
    prefix(os, p);
  }

  // Prefix level: anything looser than a prefix gets parenthesised.
  void prefix(std::ostream& os, const Process& p) const {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Null>) {
            os << '0';
          } else if constexpr (std::is_same_v<T, Ok>) {
            os << "ok";
          } else if constexpr (std::is_same_v<T, Output>) {
            if (n.subject) term(os, *n.subject);
            os << '<';
            for (std::size_t i = 0; i < n.args.size(); ++i) {
              if (i) os << ", ";
              term(os, n.args[i]);
            }
            os << '>';
            if (n.continuation) {
              os << '.';
              prefix(os, *n.continuation);
            }
          } else if constexpr (std::is_same_v<T, Join>) {
            if (n.atoms.size() == 1) {
              atom(os, n.atoms.front());
              os << '.';
            } else {
              os << '(';
              for (std::size_t i = 0; i < n.atoms.size(); ++i) {
                if (i) os << " | ";
                atom(os, n.atoms[i]);
              }
              os << ") >> ";
            }
            prefix(os, n.body);
          } else if constexpr (std::is_same_v<T, Restrict>) {
            os << "(nu " << name(n.name) << ')';
            prefix(os, n.body);
          } else if constexpr (std::is_same_v<T, Par>) {
            os << '(';
            par(os, p);
            os << ')';
          } else if constexpr (std::is_same_v<T, Cond>) {
            const bool has_else = !n.else_branch.template is<Null>();
            os << "if ";
            term(os, n.lhs);
            os << " = ";
            term(os, n.rhs);
            os << " then ";
            // A then-branch with a trailing prefix could swallow our else.
            if (has_else && open_tail(n.then_branch)) {
              os << '(';
              par(os, n.then_branch);
              os << ')';
            } else {
              prefix(os, n.then_branch);
            }
            if (has_else) {
              os << " else ";
              prefix(os, n.else_branch);
            }
          } else if constexpr (std::is_same_v<T, Repl>) {
            os << '!';
            prefix(os, n.body);
          }
        },
        p.node());
  }

 private:
  static bool open_tail(const Process& p) {
    return p.is<Join>() || p.is<Restrict>() || p.is<Cond>() || p.is<Repl>() ||
           (p.is<Output>() && p.as<Output>()->continuation);
  }

  const NameRenderer* render_;
};

}  // namespace

std::string print(const Term& t) {
  std::ostringstream os;
  Printer(nullptr).term(os, t);
  return os.str();
}

std::string print(const Pattern& p) {
  std::ostringstream os;
  Printer(nullptr).pattern(os, p);
  return os.str();
}

std::string print(const Process& p) {
  std::ostringstream os;
  Printer(nullptr).par(os, p);
  return os.str();
}

std::string print(const Process& p, const NameRenderer& render) {
  std::ostringstream os;
  Printer(&render).par(os, p);
  return os.str();
}

}  // namespace proclang
