#pragma once

// LL0: the low-level instruction language for building nets and writing
// rule procedures, plus the compilation functions from configurations and
// rules into it.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <unordered_set>
#include <variant>
#include <vector>

#include "inet/term.hpp"

namespace inet {

// A value position: a variable, optionally indexed by a port (x or x[p]).
// Reserved bases: L, R (the active pair inside a procedure) and StackL,
// StackR (the two cells of the equation currently on top of the stack).
struct Operand {
  std::string base;
  int port = 0;  // 0: the node itself

  bool operator==(const Operand& other) const = default;
};

inline constexpr std::string_view kLeft = "L";
inline constexpr std::string_view kRight = "R";
inline constexpr std::string_view kStackLeft = "StackL";
inline constexpr std::string_view kStackRight = "StackR";

bool is_reserved_base(std::string_view base);

namespace ll0 {

struct AgentDecl {
  std::vector<Signature::Entry> symbols;
  bool operator==(const AgentDecl& o) const {
    if (symbols.size() != o.symbols.size()) return false;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (symbols[i].name != o.symbols[i].name ||
          symbols[i].arity != o.symbols[i].arity) {
        return false;
      }
    }
    return true;
  }
};
struct MkInterface {
  int size = 0;
  bool operator==(const MkInterface&) const = default;
};
struct MkAgent {
  std::string dst;
  std::string symbol;
  bool operator==(const MkAgent&) const = default;
};
struct MkName {
  std::string dst;
  bool operator==(const MkName&) const = default;
};
struct Free {
  Operand node;
  bool operator==(const Free&) const = default;
};
// target[port] = value, port >= 1
struct SetPort {
  Operand target;
  int port = 1;
  Operand value;
  bool operator==(const SetPort&) const = default;
};
// target[0] = symbol
struct SetId {
  Operand target;
  std::string symbol;
  bool operator==(const SetId&) const = default;
};
struct Push {
  Operand left;
  Operand right;
  bool operator==(const Push&) const = default;
};
struct StackFree {
  bool operator==(const StackFree&) const = default;
};
// I[slot] = value, slot >= 1
struct SetInterface {
  int slot = 1;
  Operand value;
  bool operator==(const SetInterface&) const = default;
};
// dst = src, where dst is a variable, StackL or StackR
struct Move {
  std::string dst;
  Operand src;
  bool operator==(const Move&) const = default;
};

}  // namespace ll0

using Instruction =
    std::variant<ll0::AgentDecl, ll0::MkInterface, ll0::MkAgent, ll0::MkName,
                 ll0::Free, ll0::SetPort, ll0::SetId, ll0::Push,
                 ll0::StackFree, ll0::SetInterface, ll0::Move>;

struct RuleProcedure {
  std::string alpha;
  std::string beta;
  std::vector<Instruction> body;

  bool operator==(const RuleProcedure&) const = default;
};

struct LL0Program {
  ll0::AgentDecl decl;
  std::vector<Instruction> build;
  std::vector<RuleProcedure> procedures;

  bool operator==(const LL0Program&) const = default;
};

Signature signature_of(const ll0::AgentDecl& decl);

// --- text -------------------------------------------------------------------

std::string print_instruction(const Instruction& ins);
// One instruction per line; procedure bodies indented by two spaces.
std::string print_ll0(const LL0Program& p);
std::string print_procedure(const RuleProcedure& proc);
// Accepts /* */ comments, mkInterface(n) or mkInterface[n]. Throws
// Error(syntax) with the line number.
LL0Program parse_ll0(std::string_view text);

// --- compilation ------------------------------------------------------------

// Calculus name -> code operand (a variable, or L[i]/R[j] inside rules).
using NameEnv = std::map<std::string, Operand>;

// Deterministic variable supply for one compilation unit: a1, a2, ... for
// left-hand sides, b1, ... for right-hand sides, c1, ... for interface
// terms; names keep a sanitized copy of their own spelling.
class VarSupply {
 public:
  std::string next(char prefix);
  std::string for_name(const std::string& name);

 private:
  bool taken(const std::string& v) const;
  int counters_[3] = {0, 0, 0};
  std::unordered_set<std::string> used_;
};

ll0::AgentDecl compile_symbols(const Signature& sig);

std::vector<Instruction> make_n(const std::vector<std::string>& names,
                                NameEnv& env, VarSupply& vars);

// Returns the code and the operand holding the term. Throws
// Error(invalid_program) for a name missing from env.
std::pair<std::vector<Instruction>, Operand> compile_term(
    const Term& t, const NameEnv& env, const Signature& sig, VarSupply& vars,
    char prefix);

std::vector<Instruction> compile_interface(const std::vector<Term>& u,
                                           const NameEnv& env,
                                           const Signature& sig,
                                           VarSupply& vars);

std::vector<Instruction> compile_equation(const Equation& e, const NameEnv& env,
                                          const Signature& sig,
                                          VarSupply& vars);
std::vector<Instruction> compile_equations(const std::vector<Equation>& es,
                                           const NameEnv& env,
                                           const Signature& sig,
                                           VarSupply& vars);

// Declaration, name creation, equations, interface. Procedures are empty.
LL0Program compile_config(const Signature& sig, const SimpleConfig& cfg);

RuleProcedure compile_rule(const Rule& rule, const Signature& sig);

// One procedure per entry of the symmetric rule table.
std::vector<RuleProcedure> compile_rules(const RuleSet& rules,
                                         const Signature& sig);

// compile_config of the net plus every rule procedure.
LL0Program compile_program(const Signature& sig, const SimpleConfig& net,
                           const RuleSet& rules);

std::size_t count_mk_agent(const std::vector<Instruction>& code);
std::size_t count_mk_name(const std::vector<Instruction>& code);
std::size_t count_push(const std::vector<Instruction>& code);

}  // namespace inet
