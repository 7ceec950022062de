#include "fcs/parser.hpp"

#include <cctype>
#include <vector>

#include "fcs/error.hpp"

namespace fcs {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Parser {
 public:
  Parser(const std::string& text, Signature sig) : s_(text), sig_(sig) {}

  Term term() {
    Term t = product();
    for (;;) {
      skip();
      if (peek('+')) {
        ++p_;
        t = Term::add(t, product());
      } else if (peek('-') && !peek_str("->")) {
        std::size_t at = p_++;
        require_minus(at);
        t = Term::sub(t, product());
      } else {
        return t;
      }
    }
  }

  Atom atom() {
    Term l = term();
    skip();
    if (peek_str("<=")) {
      p_ += 2;
      return Atom::lt(l, Term::add(term(), Term::one()));
    }
    if (peek('<')) {
      ++p_;
      return Atom::lt(l, term());
    }
    if (peek('=')) {
      ++p_;
      return Atom::eq(l, term());
    }
    fail("expected '=', '<' or '<='");
  }

  Formula formula() {
    Formula f = disjunction();
    skip();
    if (peek_str("->")) {
      p_ += 2;
      return Formula::implies(f, formula());
    }
    return f;
  }

  void end() {
    skip();
    if (p_ != s_.size()) fail("unexpected trailing input");
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, p_); }

  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool peek(char c) const { return p_ < s_.size() && s_[p_] == c; }
  bool peek_str(const char* t) const { return s_.compare(p_, std::char_traits<char>::length(t), t) == 0; }

  void require_minus(std::size_t at) const {
    if (!allows_minus(sig_)) throw ParseError("minus is not in the signature Lminus", at);
  }

  std::string ident() {
    skip();
    if (p_ >= s_.size() || !ident_start(s_[p_])) fail("expected identifier");
    std::size_t b = p_;
    while (p_ < s_.size() && ident_char(s_[p_])) ++p_;
    return s_.substr(b, p_ - b);
  }

  bool keyword_ahead(const char* kw) const {
    std::size_t n = std::char_traits<char>::length(kw);
    return peek_str(kw) && (p_ + n >= s_.size() || !ident_char(s_[p_ + n]));
  }

  Term product() {
    Term t = power();
    for (;;) {
      skip();
      if (!peek('*')) return t;
      ++p_;
      t = Term::mul(t, power());
    }
  }

  Term power() {
    Term base = unary();
    skip();
    if (!peek('^')) return base;
    ++p_;
    skip();
    std::size_t b = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (b == p_) fail("expected exponent");
    if (p_ - b > 4) fail("exponent too large");
    return Term::power(base, static_cast<unsigned>(std::stoul(s_.substr(b, p_ - b))));
  }

  Term unary() {
    skip();
    if (p_ >= s_.size()) fail("unexpected end of input");
    char c = s_[p_];
    if (c == '-') {
      require_minus(p_);
      ++p_;
      return Term::neg(unary());
    }
    if (c == '(') {
      ++p_;
      Term t = term();
      skip();
      if (!peek(')')) fail("expected ')'");
      ++p_;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = p_;
      while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
      return Term::numeral(Int(s_.substr(b, p_ - b)));
    }
    if (ident_start(c)) {
      std::size_t at = p_;
      std::string id = ident();
      if (id == "forall" || id == "exists") throw ParseError("keyword used as variable", at);
      skip();
      if (peek('(')) throw ParseError("'" + id + "' is not a function symbol", at);
      return Term::var(id);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Formula disjunction() {
    Formula f = conjunction();
    for (;;) {
      skip();
      if (!peek('|')) return f;
      ++p_;
      f = Formula::disj(f, conjunction());
    }
  }

  Formula conjunction() {
    Formula f = unary_formula();
    for (;;) {
      skip();
      if (!peek('&')) return f;
      ++p_;
      f = Formula::conj(f, unary_formula());
    }
  }

  Formula unary_formula() {
    skip();
    if (peek('~')) {
      ++p_;
      return Formula::negation(unary_formula());
    }
    bool all = keyword_ahead("forall");
    if (all || keyword_ahead("exists")) {
      p_ += 6;
      std::vector<std::string> vars{ident()};
      skip();
      while (peek(',')) {
        ++p_;
        vars.push_back(ident());
        skip();
      }
      if (!peek('.')) fail("expected '.' after quantified variables");
      ++p_;
      Formula body = formula();
      for (std::size_t i = vars.size(); i-- > 0;)
        body = all ? Formula::forall(vars[i], body) : Formula::exists(vars[i], body);
      return body;
    }
    if (p_ < s_.size() && ident_start(s_[p_])) {
      std::size_t save = p_;
      std::string id = ident();
      skip();
      if (peek('(')) {
        ++p_;
        std::vector<Term> args{term()};
        skip();
        while (peek(',')) {
          ++p_;
          args.push_back(term());
          skip();
        }
        if (!peek(')')) fail("expected ')' after predicate arguments");
        ++p_;
        return Formula::pred(id, std::move(args));
      }
      p_ = save;
    }
    if (peek('(')) {
      std::size_t save = p_;
      try {
        return Formula::atom(atom());
      } catch (const ParseError&) {
        p_ = save + 1;
      }
      Formula f = formula();
      skip();
      if (!peek(')')) fail("expected ')'");
      ++p_;
      return f;
    }
    return Formula::atom(atom());
  }

  const std::string& s_;
  Signature sig_;
  std::size_t p_ = 0;
};

}  // namespace

Term parse_term(const std::string& text, Signature sig) {
  Parser p(text, sig);
  Term t = p.term();
  p.end();
  return t;
}

Atom parse_atom(const std::string& text, Signature sig) {
  Parser p(text, sig);
  Atom a = p.atom();
  p.end();
  return a;
}

Formula parse_formula(const std::string& text, Signature sig) {
  Parser p(text, sig);
  Formula f = p.formula();
  p.end();
  return f;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return true;
}

Signature parse_signature_tag(const std::string& tag) {
  if (tag == "L" || tag == "L_int") return Signature::L_int;
  if (tag == "Lminus" || tag == "Lminus_nat") return Signature::Lminus_nat;
  throw Error("unknown signature '" + tag + "' (expected L or Lminus)");
}

}  // namespace fcs
