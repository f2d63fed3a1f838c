#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sl2lab/amen.hpp"
#include "sl2lab/groups.hpp"

namespace sl2lab::folog {

// First-order sentences in the language of groups: terms are built from
// variables, the identity constant e, multiplication and inverse; formulas
// from equations with !, &, |, ->, A x., E x.

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Var, Identity, Mul, Inv };
  Kind kind;
  std::string name;   // Var
  TermPtr lhs, rhs;   // Mul; Inv uses lhs
};

TermPtr t_var(const std::string& name);
TermPtr t_e();
TermPtr t_mul(TermPtr a, TermPtr b);
TermPtr t_inv(TermPtr a);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Eq, Not, And, Or, Implies, Forall, Exists };
  Kind kind;
  TermPtr t1, t2;     // Eq
  FormulaPtr f1, f2;  // Not uses f1
  std::string var;    // quantifiers
};

FormulaPtr f_eq(TermPtr a, TermPtr b);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_forall(const std::string& var, FormulaPtr body);
FormulaPtr f_exists(const std::string& var, FormulaPtr body);
/// n-ary connectives; a single operand passes through unwrapped.
FormulaPtr f_and_all(std::vector<FormulaPtr> fs);
FormulaPtr f_or_all(std::vector<FormulaPtr> fs);

bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);
std::uint64_t node_count(const FormulaPtr& f);

std::vector<std::string> free_vars(const FormulaPtr& f);
/// Bound variables that shadow an enclosing binding of the same name
/// (permitted, but worth flagging).
std::vector<std::string> shadowed_vars(const FormulaPtr& f);

/// Grammar: atoms t1 = t2; terms by juxtaposition or '*', postfix ^-1, the
/// constant e; connectives ! & | -> with precedence ! > & > | > ->;
/// quantifiers "A x." / "E x." bind loosest. Errors carry line/column.
FormulaPtr parse(const std::string& text);

/// Canonical fully parenthesized form; parse(print(f)) == f structurally.
std::string print(const FormulaPtr& f);
std::string print(const TermPtr& t);

struct EvalResult {
  bool value = false;
  /// Outer quantifier trace: witness bindings of leading Exists on success,
  /// counterexample bindings of leading Forall on failure.
  std::vector<std::pair<std::string, std::uint64_t>> bindings;
};

/// Tarskian evaluation by exhaustive quantification over the group; refuses
/// (rather than hangs) when |G|^depth exceeds the budget.
EvalResult evaluate(const Group& g, const FormulaPtr& f, std::uint64_t budget,
                    const std::vector<std::pair<std::string, std::uint64_t>>& assignment = {});

struct FolnerSentenceConfig {
  bool exclude_identity = false;
  std::uint64_t node_cap = 1'000'000;
};

/// The bounded almost-invariance sentence: every tuple s_1..s_n has a tuple
/// t_1..t_m' of pairwise distinct elements (n <= m' <= m in Conjugation mode,
/// 1 <= m' <= m in Translation mode) with |pi_s(T) sym T| < |T|/n, encoded by
/// disjunctions over the index subsets allowed to escape T.
FormulaPtr folner_sentence(unsigned n, unsigned m, FolnerMode mode,
                           const FolnerSentenceConfig& config = {});

}  // namespace sl2lab::folog
