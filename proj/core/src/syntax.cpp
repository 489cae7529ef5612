#include "inet/syntax.hpp"

#include <cctype>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "inet/error.hpp"

namespace inet {

namespace {

enum class Tok {
  agent_ident,  // uppercase-initial identifier
  name_ident,   // lowercase-initial identifier (also keywords)
  nat,
  comma,
  colon,
  semicolon,
  lparen,
  rparen,
  langle,
  rangle,
  equals,
  bowtie,  // "><"
  arrow,   // "=>"
  end,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::end) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourcePos pos{line_, col_};
      if (at_end()) {
        out.push_back({Tok::end, "", pos});
        return out;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string id;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                             peek() == '_')) {
          id += get();
        }
        const bool upper = std::isupper(static_cast<unsigned char>(id[0]));
        out.push_back({upper ? Tok::agent_ident : Tok::name_ident, id, pos});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string n;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
          n += get();
        }
        out.push_back({Tok::nat, n, pos});
        continue;
      }
      get();
      switch (c) {
        case ',': out.push_back({Tok::comma, ",", pos}); break;
        case ':': out.push_back({Tok::colon, ":", pos}); break;
        case ';': out.push_back({Tok::semicolon, ";", pos}); break;
        case '(': out.push_back({Tok::lparen, "(", pos}); break;
        case ')': out.push_back({Tok::rparen, ")", pos}); break;
        case '<': out.push_back({Tok::langle, "<", pos}); break;
        case '>':
          if (!at_end() && peek() == '<') {
            get();
            out.push_back({Tok::bowtie, "><", pos});
          } else {
            out.push_back({Tok::rangle, ">", pos});
          }
          break;
        case '=':
          if (!at_end() && peek() == '>') {
            get();
            out.push_back({Tok::arrow, "=>", pos});
          } else {
            out.push_back({Tok::equals, "=", pos});
          }
          break;
        default:
          throw Error(ErrorKind::syntax,
                      std::string("unexpected character '") + c + "'",
                      pos.line, pos.column);
      }
    }
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek() const { return src_[i_]; }
  char get() {
    char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, Signature& sig)
      : toks_(Lexer(text).run()), sig_(sig) {}

  SourceProgram program() {
    SourceProgram p;
    if (is_keyword("agent")) {
      next();
      do {
        declaration();
      } while (accept(Tok::comma));
    }
    while (is_keyword("rule")) p.rules.push_back(rule());
    if (!is_keyword("net")) fail("expected 'net'");
    p.net = net();
    expect(Tok::end, "end of input");
    p.signature = sig_;
    return p;
  }

  Term standalone_term() {
    Term t = term();
    expect(Tok::end, "end of input");
    return t;
  }

  std::vector<Equation> standalone_equations() {
    std::vector<Equation> es;
    if (cur().kind != Tok::end) es = equations();
    expect(Tok::end, "end of input");
    return es;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool is_keyword(std::string_view kw) const {
    return cur().kind == Tok::name_ident && cur().text == kw;
  }
  bool accept(Tok k) {
    if (cur().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, std::string_view what) {
    if (cur().kind != k) fail("expected " + std::string(what));
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::syntax, msg + ", found " + describe(cur()),
                cur().pos.line, cur().pos.column);
  }

  void declaration() {
    const Token& sym = expect(Tok::agent_ident, "agent symbol");
    expect(Tok::colon, "':'");
    const Token& n = expect(Tok::nat, "arity");
    try {
      sig_.add(sym.text, std::stoi(n.text));
    } catch (const Error& e) {
      throw Error(ErrorKind::syntax, e.what(), sym.pos.line, sym.pos.column);
    }
  }

  SymbolId symbol(const Token& t) const {
    auto id = sig_.find(t.text);
    if (!id) {
      throw Error(ErrorKind::unknown_symbol, "unknown agent '" + t.text + "'",
                  t.pos.line, t.pos.column);
    }
    return *id;
  }

  void check_arity(const Token& t, SymbolId id, std::size_t given) const {
    if (static_cast<int>(given) != sig_.arity(id)) {
      throw Error(ErrorKind::arity_mismatch,
                  "'" + t.text + "' has arity " +
                      std::to_string(sig_.arity(id)) + " but " +
                      std::to_string(given) + " argument(s) given",
                  t.pos.line, t.pos.column);
    }
  }

  std::pair<SymbolId, std::vector<std::string>> lhs() {
    const Token& sym = expect(Tok::agent_ident, "agent symbol");
    SymbolId id = symbol(sym);
    std::vector<std::string> params;
    if (accept(Tok::lparen)) {
      do {
        params.push_back(expect(Tok::name_ident, "name").text);
      } while (accept(Tok::comma));
      expect(Tok::rparen, "')'");
    }
    check_arity(sym, id, params.size());
    return {id, std::move(params)};
  }

  SourceRule rule() {
    SourcePos pos = next().pos;
    auto [alpha, left] = lhs();
    expect(Tok::bowtie, "'><'");
    auto [beta, right] = lhs();
    expect(Tok::arrow, "'=>'");
    std::vector<Equation> rhs;
    if (cur().kind != Tok::semicolon) rhs = equations();
    expect(Tok::semicolon, "';'");
    return {Rule{alpha, beta, std::move(left), std::move(right), std::move(rhs)},
            pos};
  }

  SourceNet net() {
    SourceNet n;
    n.pos = next().pos;
    expect(Tok::langle, "'<'");
    if (cur().kind != Tok::rangle) {
      do {
        n.interface.push_back(term());
      } while (accept(Tok::comma));
    }
    expect(Tok::rangle, "'>'");
    expect(Tok::colon, "':'");
    if (cur().kind != Tok::semicolon) n.equations = equations();
    expect(Tok::semicolon, "';'");
    check_net_linearity(n);
    return n;
  }

  void check_net_linearity(const SourceNet& n) const {
    std::vector<std::string> occ;
    for (const auto& t : n.interface) collect_name_occurrences(t, occ);
    for (const auto& e : n.equations) {
      collect_name_occurrences(e.left, occ);
      collect_name_occurrences(e.right, occ);
    }
    std::unordered_map<std::string, int> count;
    for (const auto& x : occ) {
      if (++count[x] > 2) {
        throw Error(ErrorKind::linearity,
                    "name '" + x + "' occurs more than twice in the net",
                    n.pos.line, n.pos.column);
      }
    }
  }

  std::vector<Equation> equations() {
    std::vector<Equation> es;
    do {
      Term l = term();
      expect(Tok::equals, "'='");
      Term r = term();
      es.push_back({std::move(l), std::move(r)});
    } while (accept(Tok::comma));
    return es;
  }

  Term term() {
    if (cur().kind == Tok::name_ident) return Term::make_name(next().text);
    if (cur().kind != Tok::agent_ident) fail("expected a term");
    const Token& sym = next();
    SymbolId id = symbol(sym);
    std::vector<Term> args;
    if (accept(Tok::lparen)) {
      do {
        args.push_back(term());
      } while (accept(Tok::comma));
      expect(Tok::rparen, "')'");
    }
    check_arity(sym, id, args.size());
    return Term::make_agent(id, std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Signature& sig_;
};

}  // namespace

SourceProgram parse_source(std::string_view text) {
  Signature sig;
  return Parser(text, sig).program();
}

Term parse_term(std::string_view text, const Signature& sig) {
  Signature copy = sig;
  return Parser(text, copy).standalone_term();
}

std::vector<Equation> parse_equations(std::string_view text,
                                      const Signature& sig) {
  Signature copy = sig;
  return Parser(text, copy).standalone_equations();
}

std::vector<Diagnostic> validate(const SourceProgram& program) {
  std::vector<Diagnostic> diags;
  const Signature& sig = program.signature;
  std::map<std::pair<SymbolId, SymbolId>, SourcePos> seen;

  for (const auto& sr : program.rules) {
    const Rule& r = sr.rule;
    const std::string label = sig.name(r.alpha) + " >< " + sig.name(r.beta);
    auto key = std::minmax(r.alpha, r.beta);
    if (!seen.emplace(key, sr.pos).second) {
      diags.push_back({sr.pos, "duplicate rule for " + label});
    }
    if (static_cast<int>(r.params_left.size()) != sig.arity(r.alpha) ||
        static_cast<int>(r.params_right.size()) != sig.arity(r.beta)) {
      diags.push_back({sr.pos, "parameter count does not match arity in rule " +
                                   label});
    }

    std::unordered_set<std::string> params;
    for (const auto* side : {&r.params_left, &r.params_right}) {
      for (const auto& p : *side) {
        if (!params.insert(p).second) {
          diags.push_back(
              {sr.pos, "parameter '" + p + "' repeated in rule " + label});
        }
      }
    }

    std::vector<std::string> occ;
    for (const auto& e : r.rhs) {
      collect_name_occurrences(e.left, occ);
      collect_name_occurrences(e.right, occ);
    }
    std::map<std::string, int> count;
    for (const auto& x : occ) ++count[x];
    for (const auto& p : params) {
      if (count[p] != 1) {
        diags.push_back({sr.pos, "linearity: parameter '" + p + "' occurs " +
                                     std::to_string(count[p]) +
                                     " time(s) in the right-hand side of " +
                                     label + " (expected 1)"});
      }
    }
    for (const auto& [x, n] : count) {
      if (params.count(x) == 0 && n != 2) {
        diags.push_back({sr.pos, "linearity: name '" + x + "' occurs " +
                                     std::to_string(n) + " time(s) in rule " +
                                     label + " (expected 2)"});
      }
    }
  }

  if (!is_linear(program.net.interface, program.net.equations)) {
    diags.push_back(
        {program.net.pos, "linearity: a net name occurs more than twice"});
  }
  for (const auto& t : program.net.interface) {
    if (contains_ind(t)) {
      diags.push_back({program.net.pos, "indirection in initial net"});
    }
  }
  return diags;
}

std::string format_diagnostic(const Diagnostic& d) {
  return std::to_string(d.pos.line) + ":" + std::to_string(d.pos.column) +
         ": " + d.message;
}

RuleSet build_rule_set(const SourceProgram& program) {
  auto diags = validate(program);
  if (!diags.empty()) {
    throw Error(ErrorKind::invalid_program, diags.front().message,
                diags.front().pos.line, diags.front().pos.column);
  }
  RuleSet rules(program.signature.size());
  for (const auto& sr : program.rules) rules.add(sr.rule);
  return rules;
}

namespace {

std::string lhs_text(SymbolId s, const std::vector<std::string>& params,
                     const Signature& sig) {
  std::string out = sig.name(s);
  if (!params.empty()) {
    out += '(';
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i != 0) out += ',';
      out += params[i];
    }
    out += ')';
  }
  return out;
}

}  // namespace

std::string pretty_rule(const Rule& rule, const Signature& sig) {
  std::string out = "rule " + lhs_text(rule.alpha, rule.params_left, sig) +
                    " >< " + lhs_text(rule.beta, rule.params_right, sig) +
                    " =>";
  if (!rule.rhs.empty()) out += " " + pretty_equations(rule.rhs, sig);
  out += ";";
  return out;
}

std::string pretty_program(const SourceProgram& program) {
  const Signature& sig = program.signature;
  std::string out;
  if (!sig.empty()) {
    out += "agent ";
    for (std::size_t i = 0; i < sig.size(); ++i) {
      if (i != 0) out += ", ";
      out += sig.entries()[i].name + ":" +
             std::to_string(sig.entries()[i].arity);
    }
    out += "\n";
  }
  for (const auto& r : program.rules) out += pretty_rule(r.rule, sig) + "\n";
  out += "net <" + pretty_terms(program.net.interface, sig) + ">:";
  if (!program.net.equations.empty()) {
    out += " " + pretty_equations(program.net.equations, sig);
  }
  out += ";\n";
  return out;
}

}  // namespace inet
