#include <cctype>
#include <optional>
#include <sstream>

#include "proclang/syntax.hpp"

namespace proclang {

namespace {

std::string describe(const std::set<std::string>& expected, const std::string& found, int line,
                     int column) {
  std::ostringstream os;
  os << "syntax error at " << line << ':' << column << ": found " << found << ", expected ";
  bool first = true;
  for (const auto& e : expected) {
    if (!first) os << " | ";
    os << e;
    first = false;
  }
  return os.str();
}

}  // namespace

ParseError::ParseError(int line, int column, std::set<std::string> expected,
                       const std::string& found)
    : std::runtime_error(describe(expected, found, line, column)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { kName, kZero, kKeyword, kPunct, kEnd };

struct Token {
  Tok kind;
  std::string text;
  Name name;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const int tl = line;
    const int tc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      std::string base(src.substr(i, j - i));
      if ((j < src.size()) && (src[j] == '\'' || src[j] == '$') && j + 1 < src.size() &&
          std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        const char mark = src[j];
        std::size_t k = j + 1;
        while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
        const auto counter = static_cast<std::uint32_t>(std::stoul(std::string(src.substr(j + 1, k - j - 1))));
        Name n = mark == '\'' ? Name::fresh(base, counter) : Name::reserved(base, counter);
        out.push_back({Tok::kName, std::string(src.substr(i, k - i)), n, tl, tc});
        advance(k - i);
        continue;
      }
      if (is_keyword(base)) {
        out.push_back({Tok::kKeyword, base, {}, tl, tc});
      } else {
        out.push_back({Tok::kName, base, Name::source(base), tl, tc});
      }
      advance(j - i);
      continue;
    }
    if (c == '0' && !(i + 1 < src.size() && std::isalnum(static_cast<unsigned char>(src[i + 1])))) {
      out.push_back({Tok::kZero, "0", {}, tl, tc});
      advance(1);
      continue;
    }
    if (c == '>' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::kPunct, ">>", {}, tl, tc});
      advance(2);
      continue;
    }
    static constexpr std::string_view kPunct = "<>(),.|*#=!";
    if (kPunct.find(c) != std::string_view::npos) {
      out.push_back({Tok::kPunct, std::string(1, c), {}, tl, tc});
      advance(1);
      continue;
    }
    throw ParseError(tl, tc, {"token"}, "'" + std::string(1, c) + "'");
  }
  out.push_back({Tok::kEnd, "", {}, line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  Process process() {
    auto p = par();
    if (!p) raise();
    expect_end();
    return *p;
  }

  Term whole_term() {
    auto t = term();
    if (!t) raise();
    expect_end();
    return *t;
  }

  Pattern whole_pattern() {
    auto p = pattern();
    if (!p) raise();
    check_binders({*p});
    expect_end();
    return *p;
  }

  std::vector<Term> term_list() {
    std::vector<Term> out;
    if (peek().kind == Tok::kEnd) return out;
    do {
      auto t = term();
      if (!t) raise();
      out.push_back(*t);
    } while (accept(","));
    expect_end();
    return out;
  }

  std::vector<Pattern> pattern_list() {
    std::vector<Pattern> out;
    if (peek().kind == Tok::kEnd) return out;
    do {
      auto p = pattern();
      if (!p) raise();
      out.push_back(*p);
    } while (accept(","));
    check_binders(out);
    expect_end();
    return out;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  bool at(std::string_view punct) const {
    return (peek().kind == Tok::kPunct || peek().kind == Tok::kKeyword) && peek().text == punct;
  }

  bool accept(std::string_view punct) {
    if (at(punct)) {
      ++pos_;
      return true;
    }
    expect(std::string("'") + std::string(punct) + "'");
    return false;
  }

  // Records an expectation at the current position; the furthest one wins.
  void expect(const std::string& what) {
    if (pos_ > far_) {
      far_ = pos_;
      expected_.clear();
    }
    if (pos_ == far_) expected_.insert(what);
  }

  [[noreturn]] void raise() const {
    const Token& t = toks_[std::min(far_, toks_.size() - 1)];
    const std::string found = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, expected_, found);
  }

  void expect_end() {
    if (peek().kind != Tok::kEnd) {
      expect("end of input");
      raise();
    }
  }

  std::optional<Name> name() {
    if (peek().kind == Tok::kName) return toks_[pos_++].name;
    expect("name");
    return std::nullopt;
  }

  std::optional<Process> par() {
    auto left = prefix();
    if (!left) return std::nullopt;
    Process acc = *left;
    while (at("|")) {
      const std::size_t save = pos_;
      ++pos_;
      auto right = prefix();
      if (!right) {
        pos_ = save;
        return std::nullopt;
      }
      acc = Par{acc, *right};
    }
    expect("'|'");
    return acc;
  }

  template <class F>
  auto attempt(F&& f) -> decltype(f()) {
    const std::size_t save = pos_;
    auto r = f();
    if (!r) pos_ = save;
    return r;
  }

  std::optional<Process> prefix() {
    const Token& t = peek();
    if (t.kind == Tok::kZero) {
      ++pos_;
      return Process{};
    }
    if (t.kind == Tok::kKeyword && t.text == "ok") {
      ++pos_;
      return Process(Ok{});
    }
    if (at("!")) {
      ++pos_;
      auto body = prefix();
      if (!body) return std::nullopt;
      return Process(Repl{*body});
    }
    if (at("if")) return attempt([&] { return conditional(); });
    if (at("(") && toks_[pos_ + 1].kind == Tok::kKeyword && toks_[pos_ + 1].text == "nu") {
      return attempt([&] { return restriction(); });
    }
    expect("process");
    if (auto p = attempt([&] { return single_input(); })) return p;
    if (auto p = attempt([&] { return join(); })) return p;
    if (auto p = attempt([&] { return output_proc(); })) return p;
    if (at("(")) {
      return attempt([&]() -> std::optional<Process> {
        ++pos_;
        auto inner = par();
        if (!inner || !accept(")")) return std::nullopt;
        return inner;
      });
    }
    return std::nullopt;
  }

  std::optional<Process> conditional() {
    ++pos_;  // if
    auto lhs = term();
    if (!lhs || !accept("=")) return std::nullopt;
    auto rhs = term();
    if (!rhs || !accept("then")) return std::nullopt;
    auto then_branch = prefix();
    if (!then_branch) return std::nullopt;
    Process else_branch;
    if (at("else")) {
      ++pos_;
      auto e = prefix();
      if (!e) return std::nullopt;
      else_branch = *e;
    } else {
      expect("'else'");
    }
    return Process(Cond{*lhs, *rhs, *then_branch, else_branch});
  }

  std::optional<Process> restriction() {
    pos_ += 2;  // ( nu
    std::vector<Name> names;
    do {
      auto n = name();
      if (!n) return std::nullopt;
      names.push_back(*n);
    } while (accept(","));
    if (!accept(")")) return std::nullopt;
    auto body = prefix();
    if (!body) return std::nullopt;
    return restrict_all(names, *body);
  }

  std::optional<InputAtom> atom() {
    InputAtom a;
    // Try a subject term first; `(x).P` has none.
    auto with_subject = attempt([&]() -> std::optional<Term> {
      auto s = term();
      if (!s || !at("(")) return std::nullopt;
      return s;
    });
    if (with_subject) a.subject = *with_subject;
    if (!accept("(")) return std::nullopt;
    do {
      auto p = pattern();
      if (!p) return std::nullopt;
      a.patterns.push_back(*p);
    } while (accept(","));
    if (!accept(")")) return std::nullopt;
    return a;
  }

  std::optional<Process> single_input() {
    const Token& start = peek();
    auto a = atom();
    if (!a) return std::nullopt;
    if (!at(".") && !at(">>")) {
      expect("'.'");
      expect("'>>'");
      return std::nullopt;
    }
    ++pos_;
    auto body = prefix();
    if (!body) return std::nullopt;
    Join j{{*a}, *body};
    check_join(j, start);
    return Process(std::move(j));
  }

  std::optional<Process> join() {
    const Token& start = peek();
    if (!accept("(")) return std::nullopt;
    Join j;
    do {
      auto a = atom();
      if (!a) return std::nullopt;
      j.atoms.push_back(*a);
    } while (accept("|"));
    if (j.atoms.size() < 2) {
      expect("'|'");
      return std::nullopt;
    }
    if (!accept(")") || !accept(">>")) return std::nullopt;
    auto body = prefix();
    if (!body) return std::nullopt;
    j.body = *body;
    check_join(j, start);
    return Process(std::move(j));
  }

  std::optional<Process> output_proc() {
    Output o;
    if (!at("<")) {
      auto s = term();
      if (!s) return std::nullopt;
      o.subject = *s;
    }
    if (!accept("<")) return std::nullopt;
    do {
      auto t = term();
      if (!t) return std::nullopt;
      o.args.push_back(*t);
    } while (accept(","));
    if (!accept(">")) return std::nullopt;
    if (at(".")) {
      ++pos_;
      auto cont = prefix();
      if (!cont) return std::nullopt;
      o.continuation = *cont;
    } else {
      expect("'.'");
    }
    return Process(std::move(o));
  }

  std::optional<Term> term() {
    auto left = term_atom();
    if (!left) return std::nullopt;
    Term acc = *left;
    while (at("*")) {
      const std::size_t save = pos_;
      ++pos_;
      auto right = term_atom();
      if (!right) {
        pos_ = save;
        return std::nullopt;
      }
      acc = Term::compound(acc, *right);
    }
    expect("'*'");
    return acc;
  }

  std::optional<Term> term_atom() {
    if (at("(")) {
      return attempt([&]() -> std::optional<Term> {
        ++pos_;
        auto t = term();
        if (!t || !accept(")")) return std::nullopt;
        return t;
      });
    }
    auto n = name();
    if (!n) return std::nullopt;
    return Term(*n);
  }

  std::optional<Pattern> pattern() {
    auto left = pattern_atom();
    if (!left) return std::nullopt;
    Pattern acc = *left;
    while (at("*")) {
      const std::size_t save = pos_;
      ++pos_;
      auto right = pattern_atom();
      if (!right) {
        pos_ = save;
        return std::nullopt;
      }
      acc = Pattern::compound(acc, *right);
    }
    expect("'*'");
    return acc;
  }

  std::optional<Pattern> pattern_atom() {
    if (at("(")) {
      return attempt([&]() -> std::optional<Pattern> {
        ++pos_;
        auto p = pattern();
        if (!p || !accept(")")) return std::nullopt;
        return p;
      });
    }
    if (at("#")) {
      ++pos_;
      auto n = name();
      if (!n) return std::nullopt;
      return Pattern::protect(*n);
    }
    expect("'#'");
    auto n = name();
    if (!n) return std::nullopt;
    return Pattern::binder(*n);
  }

  void check_binders(const std::vector<Pattern>& ps) const {
    std::set<Name> seen;
    for (const Pattern& p : ps) {
      const BinderScan scan = binding_names(p);
      bool dup = scan.duplicate;
      for (const Name& n : scan.names) dup |= !seen.insert(n).second;
      if (dup) {
        const Token& t = toks_[pos_ > 0 ? pos_ - 1 : 0];
        throw ParseError(t.line, t.column, {"pairwise distinct binding names"},
                         "repeated binding name");
      }
    }
  }

  void check_join(const Join& j, const Token& start) const {
    std::set<Name> seen;
    for (const InputAtom& a : j.atoms) {
      for (const Pattern& p : a.patterns) {
        const BinderScan scan = binding_names(p);
        bool dup = scan.duplicate;
        for (const Name& n : scan.names) dup |= !seen.insert(n).second;
        if (dup) {
          throw ParseError(start.line, start.column, {"pairwise distinct binding names"},
                           "repeated binding name in input");
        }
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t far_ = 0;
  std::set<std::string> expected_;
};

}  // namespace

Process parse_process(std::string_view text) { return Parser(text).process(); }
Term parse_term(std::string_view text) { return Parser(text).whole_term(); }
Pattern parse_pattern(std::string_view text) { return Parser(text).whole_pattern(); }
std::vector<Term> parse_term_list(std::string_view text) { return Parser(text).term_list(); }
std::vector<Pattern> parse_pattern_list(std::string_view text) {
  return Parser(text).pattern_list();
}

}  // namespace proclang
