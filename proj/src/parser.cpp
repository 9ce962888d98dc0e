#include "parser.hpp"

#include <cctype>

#include "errors.hpp"

namespace tpdl {

namespace {

enum class Tok {
  Ident,
  True,
  False,
  Cap,
  Omega,
  Tilde,
  Amp,
  Bar,
  Arrow,
  FatArrow,
  LBracket,
  RBracket,
  Lt,
  Gt,
  LParen,
  RParen,
  Comma,
  Question,
  Semi,
  Plus,
  Star,
  End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Cap: return "'cap'";
    case Tok::Omega: return "'omega'";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::FatArrow: return "'=>'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Question: return "'?'";
    case Tok::Semi: return "';'";
    case Tok::Plus: return "'+'";
    case Tok::Star: return "'*'";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::vector<Token> lex(std::string_view text, std::size_t line) {
  std::vector<Token> out;
  std::size_t col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, std::string(text.substr(i, len)), line, col});
    i += len;
    col += len;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      std::string_view word = text.substr(i, j - i);
      Tok k = Tok::Ident;
      if (word == "true") k = Tok::True;
      else if (word == "false") k = Tok::False;
      else if (word == "cap") k = Tok::Cap;
      else if (word == "omega") k = Tok::Omega;
      push(k, j - i);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') { push(Tok::Arrow, 2); continue; }
    if (c == '=' && i + 1 < text.size() && text[i + 1] == '>') { push(Tok::FatArrow, 2); continue; }
    switch (c) {
      case '~': push(Tok::Tilde, 1); continue;
      case '&': push(Tok::Amp, 1); continue;
      case '|': push(Tok::Bar, 1); continue;
      case '[': push(Tok::LBracket, 1); continue;
      case ']': push(Tok::RBracket, 1); continue;
      case '<': push(Tok::Lt, 1); continue;
      case '>': push(Tok::Gt, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case '?': push(Tok::Question, 1); continue;
      case ';': push(Tok::Semi, 1); continue;
      case '+': push(Tok::Plus, 1); continue;
      case '*': push(Tok::Star, 1); continue;
      default:
        throw ParseError(std::string("unknown token '") + c + "'", line, col);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
public:
  Parser(Store& st, std::vector<Token> toks) : st_(st), toks_(std::move(toks)) {}

  F formulaToEnd() {
    F f = formula();
    expect(Tok::End);
    return f;
  }

  P programToEnd() {
    P p = program();
    expect(Tok::End);
    return p;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }

  const Token& advance() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ParseError(what + ", found " + describe(t.kind), t.line, t.column);
  }

  void expect(Tok k) {
    if (!at(k)) fail("expected " + describe(k));
    advance();
  }

  F formula() {
    F lhs = disjunction();
    if (at(Tok::Arrow)) {
      advance();
      return st_.impl(lhs, formula());
    }
    return lhs;
  }

  F disjunction() {
    F lhs = conjunction();
    while (at(Tok::Bar)) {
      advance();
      lhs = st_.disj(lhs, conjunction());
    }
    return lhs;
  }

  F conjunction() {
    F lhs = unary();
    while (at(Tok::Amp)) {
      advance();
      lhs = st_.conj(lhs, unary());
    }
    return lhs;
  }

  F unary() {
    switch (peek().kind) {
      case Tok::Tilde:
        advance();
        return st_.neg(unary());
      case Tok::LBracket: {
        advance();
        P p = program();
        expect(Tok::RBracket);
        return st_.box(p, unary());
      }
      case Tok::Lt: {
        advance();
        P p = program();
        expect(Tok::Gt);
        return st_.dia(p, unary());
      }
      default:
        return primary();
    }
  }

  F primary() {
    switch (peek().kind) {
      case Tok::True:
        advance();
        return st_.top();
      case Tok::False:
        advance();
        return st_.bottom();
      case Tok::Ident:
        return st_.atom(advance().text);
      case Tok::Cap: {
        advance();
        expect(Tok::LParen);
        if (!at(Tok::Ident)) fail("expected agent name");
        std::string agent = advance().text;
        expect(Tok::Comma);
        P p = program();
        expect(Tok::RParen);
        return st_.cap(agent, p);
      }
      case Tok::LParen: {
        advance();
        F f = formula();
        expect(Tok::RParen);
        return f;
      }
      default:
        fail("expected a formula");
    }
  }

  P program() {
    P lhs = sequence();
    while (at(Tok::Plus)) {
      advance();
      lhs = st_.choice(lhs, sequence());
    }
    return lhs;
  }

  P sequence() {
    P lhs = iteration();
    while (at(Tok::Semi)) {
      advance();
      lhs = st_.seq(lhs, iteration());
    }
    return lhs;
  }

  P iteration() {
    P p = programAtom();
    while (at(Tok::Star)) {
      advance();
      p = st_.star(p);
    }
    return p;
  }

  P programAtom() {
    switch (peek().kind) {
      case Tok::Ident:
        return st_.atomic(advance().text);
      case Tok::Omega:
        advance();
        return st_.omega();
      case Tok::Question: {
        advance();
        expect(Tok::LParen);
        F f = formula();
        expect(Tok::RParen);
        return st_.test(f);
      }
      case Tok::LParen:
        return parenthesizedProgram();
      default:
        fail("expected a program");
    }
  }

  P parenthesizedProgram() {
    std::size_t start = pos_;
    advance();
    std::optional<ParseError> arrowError;
    try {
      F pre = formula();
      expect(Tok::FatArrow);
      F post = formula();
      expect(Tok::RParen);
      return st_.arrow(pre, post);
    } catch (const ParseError& e) {
      arrowError = e;
    }
    std::size_t arrowReach = pos_;
    pos_ = start + 1;
    try {
      P p = program();
      expect(Tok::RParen);
      return p;
    } catch (const ParseError&) {
      if (arrowReach > pos_) throw *arrowError;
      throw;
    }
  }

  Store& st_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

enum FLevel { kImpl = 0, kDisj = 1, kConj = 2, kUnary = 3 };
enum PLevel { kChoice = 0, kSeq = 1, kIter = 2, kAtom = 3 };

void printF(const Store& st, F f, int ctx, std::string& out);
void printP(const Store& st, P p, int ctx, std::string& out);

void wrap(bool paren, std::string& out, const auto& body) {
  if (paren) out += '(';
  body();
  if (paren) out += ')';
}

void printF(const Store& st, F f, int ctx, std::string& out) {
  const FNode& n = st.node(f);
  if (n.kind == FKind::Not) {
    const FNode& in = st.node(F{n.a});
    if (in.kind == FKind::Box && st.node(F{in.b}).kind == FKind::Not) {
      P prog{in.a};
      F body{st.node(F{in.b}).a};
      if (st.node(prog).kind == PKind::Test) {
        wrap(ctx > kConj, out, [&] {
          printF(st, F{st.node(prog).a}, kConj, out);
          out += " & ";
          printF(st, body, kUnary, out);
        });
        return;
      }
      out += '<';
      printP(st, prog, kChoice, out);
      out += '>';
      printF(st, body, kUnary, out);
      return;
    }
    out += '~';
    printF(st, F{n.a}, kUnary, out);
    return;
  }
  switch (n.kind) {
    case FKind::Atom:
      out += st.name(n.a);
      return;
    case FKind::True:
      out += "true";
      return;
    case FKind::False:
      out += "false";
      return;
    case FKind::Cap:
      out += "cap(";
      out += st.name(n.a);
      out += ", ";
      printP(st, P{n.b}, kChoice, out);
      out += ')';
      return;
    case FKind::Box: {
      P prog{n.a};
      F body{n.b};
      const PNode& pn = st.node(prog);
      if (pn.kind == PKind::Test) {
        F guard{pn.a};
        if (st.node(guard).kind == FKind::Not) {
          wrap(ctx > kDisj, out, [&] {
            printF(st, F{st.node(guard).a}, kDisj, out);
            out += " | ";
            printF(st, body, kConj, out);
          });
          return;
        }
        wrap(ctx > kImpl, out, [&] {
          printF(st, guard, kDisj, out);
          out += " -> ";
          printF(st, body, kImpl, out);
        });
        return;
      }
      out += '[';
      printP(st, prog, kChoice, out);
      out += ']';
      printF(st, body, kUnary, out);
      return;
    }
    default:
      return;
  }
}

void printP(const Store& st, P p, int ctx, std::string& out) {
  if (st.isOmega(p)) {
    out += "omega";
    return;
  }
  const PNode& n = st.node(p);
  switch (n.kind) {
    case PKind::Atomic:
      out += st.name(n.a);
      return;
    case PKind::Test:
      out += "?(";
      printF(st, F{n.a}, kImpl, out);
      out += ')';
      return;
    case PKind::Arrow:
      out += '(';
      printF(st, F{n.a}, kImpl, out);
      out += " => ";
      printF(st, F{n.b}, kImpl, out);
      out += ')';
      return;
    case PKind::Star:
      printP(st, P{n.a}, kIter, out);
      out += '*';
      return;
    case PKind::Seq:
      wrap(ctx > kSeq, out, [&] {
        printP(st, P{n.a}, kSeq, out);
        out += ';';
        printP(st, P{n.b}, kIter, out);
      });
      return;
    case PKind::Choice:
      wrap(ctx > kChoice, out, [&] {
        printP(st, P{n.a}, kChoice, out);
        out += '+';
        printP(st, P{n.b}, kSeq, out);
      });
      return;
  }
}

}  // namespace

F parseFormula(Store& st, std::string_view text, std::size_t firstLine) {
  return Parser(st, lex(text, firstLine)).formulaToEnd();
}

P parseProgram(Store& st, std::string_view text) { return Parser(st, lex(text, 1)).programToEnd(); }

std::vector<F> parseSource(Store& st, std::string_view text) {
  std::vector<F> out;
  std::size_t line = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(start, end - start);
    if (auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
    bool blank = true;
    for (char c : row) {
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    }
    if (!blank) out.push_back(parseFormula(st, row, line));
    ++line;
    start = end + 1;
  }
  return out;
}

std::string print(const Store& st, F f) {
  std::string out;
  printF(st, f, kImpl, out);
  return out;
}

std::string print(const Store& st, P p) {
  std::string out;
  printP(st, p, kChoice, out);
  return out;
}

std::string printSet(const Store& st, const FormulaSet& s) {
  std::vector<F> v(s.begin(), s.end());
  sortCanonical(st, v);
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += print(st, v[i]);
  }
  out += '}';
  return out;
}

}  // namespace tpdl
