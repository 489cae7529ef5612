#include <cctype>
#include <sstream>

#include "inet/error.hpp"
#include "inet/ll0.hpp"

namespace inet {

bool is_reserved_base(std::string_view base) {
  return base == kLeft || base == kRight || base == kStackLeft ||
         base == kStackRight || base == "I";
}

Signature signature_of(const ll0::AgentDecl& decl) {
  Signature sig;
  for (const auto& e : decl.symbols) sig.add(e.name, e.arity);
  return sig;
}

namespace {

std::string print_operand(const Operand& o) {
  if (o.port == 0) return o.base;
  return o.base + "[" + std::to_string(o.port) + "]";
}

struct Printer {
  std::string operator()(const ll0::AgentDecl& d) const {
    std::string out = "#agent ";
    for (std::size_t i = 0; i < d.symbols.size(); ++i) {
      if (i != 0) out += ",";
      out += d.symbols[i].name + ":" + std::to_string(d.symbols[i].arity);
    }
    return out;
  }
  std::string operator()(const ll0::MkInterface& m) const {
    return "I=mkInterface(" + std::to_string(m.size) + ")";
  }
  std::string operator()(const ll0::MkAgent& m) const {
    return m.dst + "=mkAgent(" + m.symbol + ")";
  }
  std::string operator()(const ll0::MkName& m) const {
    return m.dst + "=mkName()";
  }
  std::string operator()(const ll0::Free& f) const {
    return "free(" + print_operand(f.node) + ")";
  }
  std::string operator()(const ll0::SetPort& s) const {
    return print_operand(s.target) + "[" + std::to_string(s.port) +
           "]=" + print_operand(s.value);
  }
  std::string operator()(const ll0::SetId& s) const {
    return print_operand(s.target) + "[0]=" + s.symbol;
  }
  std::string operator()(const ll0::Push& p) const {
    return "push(" + print_operand(p.left) + "," + print_operand(p.right) + ")";
  }
  std::string operator()(const ll0::StackFree&) const { return "stackFree()"; }
  std::string operator()(const ll0::SetInterface& s) const {
    return "I[" + std::to_string(s.slot) + "]=" + print_operand(s.value);
  }
  std::string operator()(const ll0::Move& m) const {
    return m.dst + "=" + print_operand(m.src);
  }
};

}  // namespace

std::string print_instruction(const Instruction& ins) {
  return std::visit(Printer{}, ins);
}

std::string print_procedure(const RuleProcedure& proc) {
  std::string out = "rule " + proc.alpha + " " + proc.beta + " {\n";
  for (const auto& ins : proc.body) out += "  " + print_instruction(ins) + "\n";
  out += "}\n";
  return out;
}

std::string print_ll0(const LL0Program& p) {
  std::string out;
  if (!p.decl.symbols.empty()) out += print_instruction(p.decl) + "\n";
  for (const auto& ins : p.build) out += print_instruction(ins) + "\n";
  for (const auto& proc : p.procedures) out += print_procedure(proc);
  return out;
}

// --- parsing ------------------------------------------------------------------

namespace {

class StatementParser {
 public:
  StatementParser(std::string_view s, int line) : s_(s), line_(line) {}

  Instruction parse() {
    skip_ws();
    if (peek() == '#') {
      ++i_;
      expect_word("agent");
      ll0::AgentDecl d;
      skip_ws();
      if (!at_end()) {
        for (;;) {
          std::string name = ident();
          expect(':');
          d.symbols.push_back({name, number()});
          if (!accept(',')) break;
        }
      }
      finish();
      return d;
    }
    Operand head = operand();
    if (head.port == 0 && accept('(')) {
      if (head.base == "free") {
        ll0::Free f{operand()};
        expect(')');
        finish();
        return f;
      }
      if (head.base == "push") {
        ll0::Push p;
        p.left = operand();
        expect(',');
        p.right = operand();
        expect(')');
        finish();
        return p;
      }
      if (head.base == "stackFree") {
        expect(')');
        finish();
        return ll0::StackFree{};
      }
      fail("unknown instruction '" + head.base + "'");
    }
    expect('=');
    skip_ws();
    if (head.base == "I" && head.port == 0) {
      const std::string fn = ident();
      if (fn != "mkInterface") fail("expected mkInterface");
      skip_ws();
      const char open = peek();
      if (open != '(' && open != '[') fail("expected '(' or '['");
      ++i_;
      ll0::MkInterface m{number()};
      expect(open == '(' ? ')' : ']');
      finish();
      return m;
    }
    if (head.base == "I") {
      ll0::SetInterface s{head.port, operand()};
      finish();
      return s;
    }
    if (head.port == 0 && head_is_zero_index_) {
      ll0::SetId s{Operand{head.base, 0}, ident()};
      finish();
      return s;
    }
    if (head.port > 0) {
      ll0::SetPort s{Operand{head.base, 0}, head.port, operand()};
      finish();
      return s;
    }
    const std::size_t save = i_;
    const std::string word = ident();
    if (accept('(')) {
      if (word == "mkAgent") {
        ll0::MkAgent m{head.base, ident()};
        expect(')');
        finish();
        return m;
      }
      if (word == "mkName") {
        expect(')');
        finish();
        return ll0::MkName{head.base};
      }
      fail("unknown function '" + word + "'");
    }
    i_ = save;
    ll0::Move m{head.base, operand()};
    finish();
    return m;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::syntax, msg, line_, static_cast<int>(i_) + 1);
  }
  bool at_end() const { return i_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[i_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip_ws();
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void expect_word(std::string_view w) {
    if (ident() != w) fail("expected '" + std::string(w) + "'");
  }
  void finish() {
    skip_ws();
    if (!at_end()) fail("unexpected trailing text");
  }
  std::string ident() {
    skip_ws();
    const std::size_t start = i_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[i_])) ||
                         s_[i_] == '_')) {
      ++i_;
    }
    if (start == i_ || std::isdigit(static_cast<unsigned char>(s_[start]))) {
      fail("expected identifier");
    }
    return std::string(s_.substr(start, i_ - start));
  }
  int number() {
    skip_ws();
    const std::size_t start = i_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected number");
    return std::stoi(std::string(s_.substr(start, i_ - start)));
  }
  Operand operand() {
    Operand o{ident(), 0};
    head_is_zero_index_ = false;
    if (accept('[')) {
      o.port = number();
      if (o.port == 0) head_is_zero_index_ = true;
      expect(']');
    }
    return o;
  }

  std::string_view s_;
  int line_;
  std::size_t i_ = 0;
  bool head_is_zero_index_ = false;
};

std::string strip_comments(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '/' && i + 1 < text.size() && text[i + 1] == '*') {
      const std::size_t end = text.find("*/", i + 2);
      const std::size_t stop = end == std::string_view::npos ? text.size() : end + 2;
      for (std::size_t j = i; j < stop; ++j) {
        if (text[j] == '\n') out += '\n';
      }
      i = stop - 1;
      continue;
    }
    out += text[i];
  }
  return out;
}

}  // namespace

LL0Program parse_ll0(std::string_view text) {
  LL0Program p;
  const std::string clean = strip_comments(text);
  std::istringstream in(clean);
  std::string line;
  int lineno = 0;
  RuleProcedure* open = nullptr;
  bool seen_decl = false;
  while (std::getline(in, line)) {
    ++lineno;
    // Split the line into statements at ';', '{' and '}'.
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      const char c = i < line.size() ? line[i] : ';';
      if (c != ';' && c != '{' && c != '}') continue;
      std::string stmt = line.substr(start, i - start);
      start = i + 1;
      const auto first = stmt.find_first_not_of(" \t\r");
      if (first != std::string::npos) {
        stmt = stmt.substr(first);
        stmt.erase(stmt.find_last_not_of(" \t\r") + 1);
        if (c == '{') {
          std::istringstream words(stmt);
          std::string kw, a, b, extra;
          words >> kw >> a >> b;
          if (kw != "rule" || a.empty() || b.empty() || (words >> extra)) {
            throw Error(ErrorKind::syntax, "expected 'rule <A> <B> {'", lineno,
                        static_cast<int>(i) + 1);
          }
          if (open != nullptr) {
            throw Error(ErrorKind::syntax, "nested rule block", lineno,
                        static_cast<int>(i) + 1);
          }
          p.procedures.push_back({a, b, {}});
          open = &p.procedures.back();
          continue;
        }
        Instruction ins = StatementParser(stmt, lineno).parse();
        if (std::holds_alternative<ll0::AgentDecl>(ins)) {
          if (seen_decl || open != nullptr || !p.build.empty() ||
              !p.procedures.empty()) {
            throw Error(ErrorKind::syntax, "#agent must come first", lineno, 1);
          }
          seen_decl = true;
          p.decl = std::get<ll0::AgentDecl>(std::move(ins));
        } else if (open != nullptr) {
          open->body.push_back(std::move(ins));
        } else {
          p.build.push_back(std::move(ins));
        }
      } else if (c == '{') {
        throw Error(ErrorKind::syntax, "'{' without rule header", lineno,
                    static_cast<int>(i) + 1);
      }
      if (c == '}') {
        if (open == nullptr) {
          throw Error(ErrorKind::syntax, "unmatched '}'", lineno,
                      static_cast<int>(i) + 1);
        }
        open = nullptr;
      }
    }
  }
  if (open != nullptr) {
    throw Error(ErrorKind::syntax, "unterminated rule block", lineno, 1);
  }
  return p;
}

}  // namespace inet
