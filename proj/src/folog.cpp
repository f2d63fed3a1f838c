#include "sl2lab/folog.hpp"

#include <algorithm>

namespace sl2lab::folog {

TermPtr t_var(const std::string& name) {
  return std::make_shared<Term>(Term{Term::Kind::Var, name, nullptr, nullptr});
}
TermPtr t_e() { return std::make_shared<Term>(Term{Term::Kind::Identity, "", nullptr, nullptr}); }
TermPtr t_mul(TermPtr a, TermPtr b) {
  return std::make_shared<Term>(Term{Term::Kind::Mul, "", std::move(a), std::move(b)});
}
TermPtr t_inv(TermPtr a) {
  return std::make_shared<Term>(Term{Term::Kind::Inv, "", std::move(a), nullptr});
}

FormulaPtr f_eq(TermPtr a, TermPtr b) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::Eq, std::move(a), std::move(b), nullptr, nullptr, ""});
}
FormulaPtr f_not(FormulaPtr f) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::Not, nullptr, nullptr, std::move(f), nullptr, ""});
}
namespace {
FormulaPtr binary(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(
      Formula{k, nullptr, nullptr, std::move(a), std::move(b), ""});
}
}  // namespace
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return binary(Formula::Kind::And, std::move(a), std::move(b));
}
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return binary(Formula::Kind::Or, std::move(a), std::move(b));
}
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return binary(Formula::Kind::Implies, std::move(a), std::move(b));
}
FormulaPtr f_forall(const std::string& var, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::Forall, nullptr, nullptr, std::move(body), nullptr, var});
}
FormulaPtr f_exists(const std::string& var, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::Exists, nullptr, nullptr, std::move(body), nullptr, var});
}

FormulaPtr f_and_all(std::vector<FormulaPtr> fs) {
  if (fs.empty()) throw Error(Errc::BadInput, "empty conjunction");
  FormulaPtr acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = f_and(acc, fs[i]);
  return acc;
}

FormulaPtr f_or_all(std::vector<FormulaPtr> fs) {
  if (fs.empty()) throw Error(Errc::BadInput, "empty disjunction");
  FormulaPtr acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = f_or(acc, fs[i]);
  return acc;
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var: return a->name == b->name;
    case Term::Kind::Identity: return true;
    case Term::Kind::Mul: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    case Term::Kind::Inv: return equal(a->lhs, b->lhs);
  }
  return false;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Eq: return equal(a->t1, b->t1) && equal(a->t2, b->t2);
    case Formula::Kind::Not: return equal(a->f1, b->f1);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: return equal(a->f1, b->f1) && equal(a->f2, b->f2);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return a->var == b->var && equal(a->f1, b->f1);
  }
  return false;
}

namespace {
std::uint64_t term_nodes(const TermPtr& t) {
  if (!t) return 0;
  return 1 + term_nodes(t->lhs) + term_nodes(t->rhs);
}
}  // namespace

std::uint64_t node_count(const FormulaPtr& f) {
  if (!f) return 0;
  return 1 + term_nodes(f->t1) + term_nodes(f->t2) + node_count(f->f1) + node_count(f->f2);
}

namespace {

void term_vars(const TermPtr& t, std::vector<std::string>& bound,
               std::vector<std::string>& out) {
  if (!t) return;
  if (t->kind == Term::Kind::Var) {
    if (std::find(bound.begin(), bound.end(), t->name) == bound.end() &&
        std::find(out.begin(), out.end(), t->name) == out.end())
      out.push_back(t->name);
    return;
  }
  term_vars(t->lhs, bound, out);
  term_vars(t->rhs, bound, out);
}

void walk_free(const FormulaPtr& f, std::vector<std::string>& bound,
               std::vector<std::string>& out, std::vector<std::string>& shadows) {
  if (!f) return;
  switch (f->kind) {
    case Formula::Kind::Eq:
      term_vars(f->t1, bound, out);
      term_vars(f->t2, bound, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      if (std::find(bound.begin(), bound.end(), f->var) != bound.end() &&
          std::find(shadows.begin(), shadows.end(), f->var) == shadows.end())
        shadows.push_back(f->var);
      bound.push_back(f->var);
      walk_free(f->f1, bound, out, shadows);
      bound.pop_back();
      return;
    }
    default:
      walk_free(f->f1, bound, out, shadows);
      walk_free(f->f2, bound, out, shadows);
  }
}

}  // namespace

std::vector<std::string> free_vars(const FormulaPtr& f) {
  std::vector<std::string> bound, out, shadows;
  walk_free(f, bound, out, shadows);
  return out;
}

std::vector<std::string> shadowed_vars(const FormulaPtr& f) {
  std::vector<std::string> bound, out, shadows;
  walk_free(f, bound, out, shadows);
  return shadows;
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok { Ident, E, ForallKw, ExistsKw, Eq, Not, And, Or, Implies, LParen, RParen,
                 Star, Dot, InvOp, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, col;
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0, line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance(std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos < src.size()) {
      char c = src[pos];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
        continue;
      }
      std::size_t tl = line, tc = col;
      auto push = [&](Tok k, std::string text, std::size_t len) {
        out.push_back(Token{k, std::move(text), tl, tc});
        advance(len);
      };
      if (c == '(') { push(Tok::LParen, "(", 1); continue; }
      if (c == ')') { push(Tok::RParen, ")", 1); continue; }
      if (c == '=') { push(Tok::Eq, "=", 1); continue; }
      if (c == '!') { push(Tok::Not, "!", 1); continue; }
      if (c == '&') { push(Tok::And, "&", 1); continue; }
      if (c == '|') { push(Tok::Or, "|", 1); continue; }
      if (c == '*') { push(Tok::Star, "*", 1); continue; }
      if (c == '.') { push(Tok::Dot, ".", 1); continue; }
      if (c == '-') {
        if (pos + 1 < src.size() && src[pos + 1] == '>') { push(Tok::Implies, "->", 2); continue; }
        throw SyntaxError(tl, tc, "'->'");
      }
      if (c == '^') {
        if (pos + 2 < src.size() && src[pos + 1] == '-' && src[pos + 2] == '1') {
          push(Tok::InvOp, "^-1", 3);
          continue;
        }
        throw SyntaxError(tl, tc, "'^-1'");
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t end = pos;
        while (end < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[end])) || src[end] == '_'))
          ++end;
        std::string word = src.substr(pos, end - pos);
        Tok k = Tok::Ident;
        if (word == "A") k = Tok::ForallKw;
        else if (word == "E") k = Tok::ExistsKw;
        else if (word == "e") k = Tok::E;
        push(k, word, word.size());
        continue;
      }
      throw SyntaxError(tl, tc, "a formula token");
    }
    out.push_back(Token{Tok::End, "", line, col});
    return out;
  }
};

struct Parser {
  std::vector<Token> toks;
  std::size_t at = 0;

  const Token& peek() const { return toks[at]; }
  bool is(Tok k) const { return toks[at].kind == k; }
  Token take(Tok k, const char* expected) {
    if (!is(k)) throw SyntaxError(peek().line, peek().col, expected);
    return toks[at++];
  }

  FormulaPtr formula() {
    if (is(Tok::ForallKw) || is(Tok::ExistsKw)) {
      bool forall = is(Tok::ForallKw);
      ++at;
      Token v = take(Tok::Ident, "a variable name after the quantifier");
      take(Tok::Dot, "'.' after the quantified variable");
      FormulaPtr body = formula();  // quantifiers bind loosest
      return forall ? f_forall(v.text, body) : f_exists(v.text, body);
    }
    return implies();
  }

  FormulaPtr implies() {
    FormulaPtr lhs = disj();
    if (is(Tok::Implies)) {
      ++at;
      return f_implies(lhs, implies());  // right associative
    }
    return lhs;
  }

  FormulaPtr disj() {
    FormulaPtr acc = conj();
    while (is(Tok::Or)) {
      ++at;
      acc = f_or(acc, conj());
    }
    return acc;
  }

  FormulaPtr conj() {
    FormulaPtr acc = unary();
    while (is(Tok::And)) {
      ++at;
      acc = f_and(acc, unary());
    }
    return acc;
  }

  FormulaPtr unary() {
    if (is(Tok::Not)) {
      ++at;
      return f_not(unary());
    }
    if (is(Tok::LParen)) {
      // either a parenthesized formula or an atom whose left term starts
      // with '('; try the formula reading first and backtrack on failure
      std::size_t save = at;
      try {
        ++at;
        FormulaPtr inner = formula();
        take(Tok::RParen, "')'");
        return inner;
      } catch (const SyntaxError&) {
        at = save;
        return atom();
      }
    }
    return atom();
  }

  FormulaPtr atom() {
    TermPtr lhs = term();
    take(Tok::Eq, "'=' between terms");
    TermPtr rhs = term();
    return f_eq(lhs, rhs);
  }

  bool starts_factor() const {
    return is(Tok::Ident) || is(Tok::E) || is(Tok::LParen);
  }

  TermPtr term() {
    TermPtr acc = factor();
    while (true) {
      if (is(Tok::Star)) {
        ++at;
        acc = t_mul(acc, factor());
      } else if (starts_factor()) {
        acc = t_mul(acc, factor());  // juxtaposition
      } else {
        break;
      }
    }
    return acc;
  }

  TermPtr factor() {
    TermPtr base = primary();
    while (is(Tok::InvOp)) {
      ++at;
      base = t_inv(base);
    }
    return base;
  }

  TermPtr primary() {
    if (is(Tok::E)) {
      ++at;
      return t_e();
    }
    if (is(Tok::Ident)) {
      return t_var(toks[at++].text);
    }
    if (is(Tok::LParen)) {
      ++at;
      TermPtr inner = term();
      take(Tok::RParen, "')'");
      return inner;
    }
    throw SyntaxError(peek().line, peek().col, "a term");
  }
};

}  // namespace

FormulaPtr parse(const std::string& text) {
  Lexer lex(text);
  Parser p{lex.run()};
  FormulaPtr f = p.formula();
  if (!p.is(Tok::End))
    throw SyntaxError(p.peek().line, p.peek().col, "end of input");
  return f;
}

std::string print(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return t->name;
    case Term::Kind::Identity: return "e";
    case Term::Kind::Mul: return "(" + print(t->lhs) + " * " + print(t->rhs) + ")";
    case Term::Kind::Inv: return "(" + print(t->lhs) + " ^-1)";
  }
  return "?";
}

std::string print(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Eq: return "(" + print(f->t1) + " = " + print(f->t2) + ")";
    case Formula::Kind::Not: return "(! " + print(f->f1) + ")";
    case Formula::Kind::And: return "(" + print(f->f1) + " & " + print(f->f2) + ")";
    case Formula::Kind::Or: return "(" + print(f->f1) + " | " + print(f->f2) + ")";
    case Formula::Kind::Implies: return "(" + print(f->f1) + " -> " + print(f->f2) + ")";
    case Formula::Kind::Forall: return "(A " + f->var + ". " + print(f->f1) + ")";
    case Formula::Kind::Exists: return "(E " + f->var + ". " + print(f->f1) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Evaluator {
  const Group& g;
  const std::uint32_t* table;
  std::uint64_t n;
  std::vector<std::pair<std::string, std::uint64_t>> env;

  explicit Evaluator(const Group& group,
                     const std::vector<std::pair<std::string, std::uint64_t>>& assignment)
      : g(group), table(group.op_table()), n(group.order()), env(assignment) {}

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return table ? table[a * n + b] : g.op(a, b);
  }

  std::uint64_t term(const TermPtr& t) const {
    switch (t->kind) {
      case Term::Kind::Var: {
        for (std::size_t i = env.size(); i-- > 0;)
          if (env[i].first == t->name) return env[i].second;
        throw Error(Errc::BadInput, "unbound variable '" + t->name + "'");
      }
      case Term::Kind::Identity: return g.identity();
      case Term::Kind::Mul: return mul(term(t->lhs), term(t->rhs));
      case Term::Kind::Inv: return g.inverse(term(t->lhs));
    }
    return 0;
  }

  bool eval(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::Eq: return term(f->t1) == term(f->t2);
      case Formula::Kind::Not: return !eval(f->f1);
      case Formula::Kind::And: return eval(f->f1) && eval(f->f2);
      case Formula::Kind::Or: return eval(f->f1) || eval(f->f2);
      case Formula::Kind::Implies: return !eval(f->f1) || eval(f->f2);
      case Formula::Kind::Forall: {
        env.emplace_back(f->var, 0);
        for (std::uint64_t x = 0; x < n; ++x) {
          env.back().second = x;
          if (!eval(f->f1)) {
            env.pop_back();
            return false;
          }
        }
        env.pop_back();
        return true;
      }
      case Formula::Kind::Exists: {
        env.emplace_back(f->var, 0);
        for (std::uint64_t x = 0; x < n; ++x) {
          env.back().second = x;
          if (eval(f->f1)) {
            env.pop_back();
            return true;
          }
        }
        env.pop_back();
        return false;
      }
    }
    return false;
  }
};

unsigned quantifier_depth(const FormulaPtr& f) {
  if (!f) return 0;
  unsigned d = std::max(quantifier_depth(f->f1), quantifier_depth(f->f2));
  if (f->kind == Formula::Kind::Forall || f->kind == Formula::Kind::Exists) ++d;
  return d;
}

std::uint64_t pow_saturating(std::uint64_t base, unsigned e) {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < e; ++i) {
    acc *= base;
    if (acc > static_cast<unsigned __int128>(UINT64_MAX)) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

EvalResult evaluate(const Group& g, const FormulaPtr& f, std::uint64_t budget,
                    const std::vector<std::pair<std::string, std::uint64_t>>& assignment) {
  for (const auto& v : free_vars(f)) {
    bool covered = false;
    for (const auto& [name, idx] : assignment) covered = covered || name == v;
    if (!covered)
      throw Error(Errc::BadInput, "free variable '" + v + "' without an assignment");
  }
  unsigned depth = quantifier_depth(f);
  std::uint64_t cost = pow_saturating(g.order(), depth);
  if (cost > budget)
    throw Error(Errc::BudgetExceeded,
                "estimated evaluation cost |G|^depth = " + std::to_string(g.order()) + "^" +
                    std::to_string(depth) + " = " + std::to_string(cost) +
                    " exceeds budget " + std::to_string(budget));

  Evaluator ev(g, assignment);
  EvalResult res;
  res.value = ev.eval(f);

  // outer quantifier trace: witnesses of leading satisfied Exists,
  // counterexamples of leading failed Forall
  FormulaPtr cur = f;
  bool cur_value = res.value;
  while (cur) {
    if (cur->kind == Formula::Kind::Exists && cur_value) {
      std::optional<std::uint64_t> witness;
      ev.env.emplace_back(cur->var, 0);
      for (std::uint64_t x = 0; x < g.order() && !witness; ++x) {
        ev.env.back().second = x;
        if (ev.eval(cur->f1)) witness = x;
      }
      ev.env.pop_back();
      if (!witness) break;
      res.bindings.emplace_back(cur->var, *witness);
      ev.env.emplace_back(cur->var, *witness);
      cur = cur->f1;
      cur_value = true;
    } else if (cur->kind == Formula::Kind::Forall && !cur_value) {
      std::optional<std::uint64_t> cex;
      ev.env.emplace_back(cur->var, 0);
      for (std::uint64_t x = 0; x < g.order() && !cex; ++x) {
        ev.env.back().second = x;
        if (!ev.eval(cur->f1)) cex = x;
      }
      ev.env.pop_back();
      if (!cex) break;
      res.bindings.emplace_back(cur->var, *cex);
      ev.env.emplace_back(cur->var, *cex);
      cur = cur->f1;
      cur_value = false;
    } else {
      break;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Bounded almost-invariance sentences

namespace {

std::uint64_t folner_sentence_estimate(unsigned n, unsigned m, FolnerMode mode) {
  // loose node-count upper bound, saturating
  unsigned lo = mode == FolnerMode::Conjugation ? n : 1;
  unsigned __int128 total = 8 + n;
  for (unsigned mp = lo; mp <= m; ++mp) {
    unsigned cmax = (mp + 2 * n - 1) / (2 * n);  // >= allowed escapes + 1
    unsigned __int128 subsets = 0;
    for (unsigned c = 0; c <= cmax && c <= mp; ++c) {
      unsigned __int128 binom = 1;
      for (unsigned i = 1; i <= c; ++i) binom = binom * (mp - c + i) / i;
      subsets += binom;
    }
    unsigned __int128 per_i = subsets * mp * (mp * 12 + 8);
    total += mp * mp * 8 + static_cast<unsigned __int128>(n) * per_i + mp * 8;
    if (total > static_cast<unsigned __int128>(UINT64_MAX)) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(total);
}

}  // namespace

FormulaPtr folner_sentence(unsigned n, unsigned m, FolnerMode mode,
                           const FolnerSentenceConfig& config) {
  if (n < 1 || m < n) throw Error(Errc::BadInput, "need 1 <= n <= m");
  std::uint64_t estimate = folner_sentence_estimate(n, m, mode);
  if (estimate > config.node_cap)
    throw Error(Errc::TooLarge, "sentence would need about " + std::to_string(estimate) +
                                    " nodes (cap " + std::to_string(config.node_cap) + ")");

  auto s_name = [](unsigned i) { return "s" + std::to_string(i + 1); };
  auto t_name = [](unsigned j) { return "t" + std::to_string(j + 1); };

  bool conj = mode == FolnerMode::Conjugation;
  unsigned lo = conj ? n : 1;

  std::vector<FormulaPtr> size_cases;
  for (unsigned mp = lo; mp <= m; ++mp) {
    std::vector<FormulaPtr> parts;
    // pairwise distinctness of the T-tuple
    for (unsigned j = 0; j < mp; ++j)
      for (unsigned k = j + 1; k < mp; ++k)
        parts.push_back(f_not(f_eq(t_var(t_name(j)), t_var(t_name(k)))));
    // the conjugation action lives on G \ {e}
    if (conj && config.exclude_identity)
      for (unsigned j = 0; j < mp; ++j)
        parts.push_back(f_not(f_eq(t_var(t_name(j)), t_e())));
    // for each s_i: the escaping index set J must stay strictly below |T|/(2n)
    unsigned cmax = 0;
    while (2ull * (cmax + 1) * n < mp) ++cmax;  // largest c with 2cn < mp
    for (unsigned i = 0; i < n; ++i) {
      std::vector<FormulaPtr> j_cases;
      // enumerate J subsets of {0..mp-1} with |J| <= cmax
      for (std::uint64_t j_mask = 0; j_mask < (1ull << mp); ++j_mask) {
        if (static_cast<unsigned>(__builtin_popcountll(j_mask)) > cmax) continue;
        std::vector<FormulaPtr> stay;
        for (unsigned j = 0; j < mp; ++j) {
          if ((j_mask >> j) & 1) continue;
          TermPtr moved = conj ? t_mul(t_mul(t_var(s_name(i)), t_var(t_name(j))),
                                       t_inv(t_var(s_name(i))))
                               : t_mul(t_var(s_name(i)), t_var(t_name(j)));
          std::vector<FormulaPtr> in_t;
          for (unsigned k = 0; k < mp; ++k)
            in_t.push_back(f_eq(moved, t_var(t_name(k))));
          stay.push_back(f_or_all(std::move(in_t)));
        }
        if (stay.empty()) {
          // every index may escape: trivially satisfied; the whole i-case is true,
          // which cannot happen since cmax < mp by the strict bound
          continue;
        }
        j_cases.push_back(f_and_all(std::move(stay)));
      }
      parts.push_back(f_or_all(std::move(j_cases)));
    }
    FormulaPtr body = f_and_all(std::move(parts));
    for (unsigned j = mp; j-- > 0;) body = f_exists(t_name(j), body);
    size_cases.push_back(body);
  }
  FormulaPtr full = f_or_all(std::move(size_cases));
  for (unsigned i = n; i-- > 0;) full = f_forall(s_name(i), full);
  if (node_count(full) > config.node_cap)
    throw Error(Errc::TooLarge, "sentence exceeds the node cap");
  return full;
}

}  // namespace sl2lab::folog
