#pragma once

#include <memory>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "proclang/term.hpp"

namespace proclang {

struct Null;
struct Ok;
struct Output;
struct Join;
struct Restrict;
struct Par;
struct Cond;
struct Repl;

template <class T>
concept ProcessNode = std::is_same_v<T, Null> || std::is_same_v<T, Ok> || std::is_same_v<T, Output> ||
                      std::is_same_v<T, Join> || std::is_same_v<T, Restrict> || std::is_same_v<T, Par> ||
                      std::is_same_v<T, Cond> || std::is_same_v<T, Repl>;

/// Immutable, shareable handle to a process tree. Default-constructs to `0`.
class Process {
 public:
  using Node = std::variant<Null, Ok, Output, Join, Restrict, Par, Cond, Repl>;

  Process();
  template <class T>
    requires ProcessNode<std::decay_t<T>>
  Process(T node);  // NOLINT(google-explicit-constructor)

  const Node& node() const;
  const void* identity() const;

  template <class T>
  const T* as() const;
  template <class T>
  bool is() const;

  friend bool operator==(const Process& a, const Process& b);

 private:
  std::shared_ptr<const Node> node_;
};

struct Null {
  friend bool operator==(const Null&, const Null&) = default;
};

struct Ok {
  friend bool operator==(const Ok&, const Ok&) = default;
};

/// `s<t1,..,tn>.P`. The subject is absent in dataspace languages and the
/// continuation is absent in asynchronous ones.
struct Output {
  std::optional<Term> subject;
  std::vector<Term> args;
  std::optional<Process> continuation;
  friend bool operator==(const Output&, const Output&) = default;
};

struct InputAtom {
  std::optional<Term> subject;
  std::vector<Pattern> patterns;
  friend bool operator==(const InputAtom&, const InputAtom&) = default;
};

/// `(I1 | .. | Ik) >> P`. A one-atom join is the binary input `I.P`.
struct Join {
  std::vector<InputAtom> atoms;
  Process body;
  friend bool operator==(const Join&, const Join&) = default;
};

struct Restrict {
  Name name;
  Process body;
  friend bool operator==(const Restrict&, const Restrict&) = default;
};

struct Par {
  Process left;
  Process right;
  friend bool operator==(const Par&, const Par&) = default;
};

struct Cond {
  Term lhs;
  Term rhs;
  Process then_branch;
  Process else_branch;
  friend bool operator==(const Cond&, const Cond&) = default;
};

struct Repl {
  Process body;
  friend bool operator==(const Repl&, const Repl&) = default;
};

inline const Process::Node& Process::node() const { return *node_; }
inline const void* Process::identity() const { return node_.get(); }

template <class T>
const T* Process::as() const {
  return std::get_if<T>(node_.get());
}

template <class T>
bool Process::is() const {
  return std::holds_alternative<T>(*node_);
}

inline Process::Process() : node_(std::make_shared<const Node>(Null{})) {}

template <class T>
  requires ProcessNode<std::decay_t<T>>
Process::Process(T node) : node_(std::make_shared<const Node>(std::move(node))) {}

inline bool operator==(const Process& a, const Process& b) {
  return a.node_ == b.node_ || *a.node_ == *b.node_;
}

// Builders.
Process par_of(const std::vector<Process>& parts);
Process restrict_all(const std::vector<Name>& names, Process body);
Process output(std::optional<Term> subject, std::vector<Term> args,
               std::optional<Process> continuation = std::nullopt);
Process input(std::optional<Term> subject, std::vector<Pattern> patterns, Process body);

/// Names bound by a join, in atom order then left-to-right.
std::vector<Name> join_binders(const Join& j);

std::set<Name> free_names(const Process& p);
/// Every name occurring anywhere, bound or free.
std::set<Name> all_names(const Process& p);

/// Equality up to renaming of bound names.
bool alpha_eq(const Process& a, const Process& b);

/// Flattens nested parallel composition into its components, dropping `0`.
std::vector<Process> par_components(const Process& p);

}  // namespace proclang
