#include <algorithm>
#include <set>

#include "inet/backend.hpp"

namespace inet {

namespace {

const std::set<std::string>& c_reserved() {
  static const std::set<std::string> names = {
      "a1", "a2", "I", "R", "EQ", "EQ_top", "EQ_cap", "Symbols", "Arities",
      "Agent", "Equation", "RuleFun", "mkAgent", "mkName", "freeAgent",
      "pushActive", "popActive", "eval", "main", "cell", "auto", "break",
      "case", "char", "const", "continue", "default", "do", "double", "else",
      "enum", "extern", "float", "for", "goto", "if", "int", "long",
      "register", "return", "short", "signed", "sizeof", "static", "struct",
      "switch", "typedef", "union", "unsigned", "void", "volatile", "while"};
  return names;
}

// One '_' is added to every variable whose stem (trailing '_' stripped) is
// reserved, which keeps the mapping injective: a1 -> a1_, a1_ -> a1__.
std::string c_var(const std::string& v) {
  std::string stem = v;
  while (!stem.empty() && stem.back() == '_') stem.pop_back();
  return c_reserved().count(stem) != 0 ? v + "_" : v;
}

std::string c_operand(const Operand& o) {
  std::string base;
  if (o.base == kLeft) {
    base = "a1";
  } else if (o.base == kRight) {
    base = "a2";
  } else if (o.base == kStackLeft) {
    base = "EQ[cell].l";
  } else if (o.base == kStackRight) {
    base = "EQ[cell].r";
  } else {
    base = c_var(o.base);
  }
  if (o.port == 0) return base;
  return base + "->port[" + std::to_string(o.port - 1) + "]";
}

std::string c_alloc(const Instruction& ins, bool declare) {
  const std::string type = declare ? "Agent *" : "";
  if (const auto* m = std::get_if<ll0::MkAgent>(&ins)) {
    return type + c_var(m->dst) + "=mkAgent(ID_" + m->symbol + ");";
  }
  const auto& n = std::get<ll0::MkName>(ins);
  return type + c_var(n.dst) + "=mkName();";
}

bool is_alloc(const Instruction& ins) {
  return std::holds_alternative<ll0::MkAgent>(ins) ||
         std::holds_alternative<ll0::MkName>(ins);
}

// Statement for a non-allocating instruction; "" when it needs no code.
std::string c_statement(const Instruction& ins, std::set<std::string>& declared,
                        bool declare_moves) {
  if (const auto* f = std::get_if<ll0::Free>(&ins)) {
    return "freeAgent(" + c_operand(f->node) + ");";
  }
  if (const auto* s = std::get_if<ll0::SetPort>(&ins)) {
    return c_operand(s->target) + "->port[" + std::to_string(s->port - 1) +
           "]=" + c_operand(s->value) + ";";
  }
  if (const auto* s = std::get_if<ll0::SetId>(&ins)) {
    return c_operand(s->target) + "->id=ID_" + s->symbol + ";";
  }
  if (const auto* p = std::get_if<ll0::Push>(&ins)) {
    return "pushActive(" + c_operand(p->left) + ", " + c_operand(p->right) + ");";
  }
  if (const auto* m = std::get_if<ll0::Move>(&ins)) {
    if (m->dst == kStackLeft) return "EQ[cell].l=" + c_operand(m->src) + ";";
    if (m->dst == kStackRight) return "EQ[cell].r=" + c_operand(m->src) + ";";
    const std::string v = c_var(m->dst);
    const bool first = declared.insert(v).second;
    return std::string(first && declare_moves ? "Agent *" : "") + v + "=" +
           c_operand(m->src) + ";";
  }
  if (const auto* s = std::get_if<ll0::SetInterface>(&ins)) {
    return "I[" + std::to_string(s->slot - 1) + "]=" + c_operand(s->value) + ";";
  }
  return "";  // stackFree, mkInterface, #agent
}

std::string function_name(const RuleProcedure& proc) {
  return proc.alpha + "_" + proc.beta;
}

constexpr const char* kRuntime = R"(typedef struct Agent {
  int id;
  struct Agent *port[MAX_PORT];
} Agent;

typedef struct Equation {
  Agent *l, *r;
} Equation;

typedef void (*RuleFun)(Agent *a1, Agent *a2);
RuleFun R[MAX_AGENTID+1][MAX_AGENTID+1];

static unsigned long long Interactions, NameOps, Allocs, Frees, MaxStack;

#define HEAP_CHUNK 4096
static Agent *FreeList;

static Agent *mkAgent(int id) {
  Agent *a;
  if (FreeList == NULL) {
    Agent *chunk = malloc(sizeof(Agent) * HEAP_CHUNK);
    int i;
    if (chunk == NULL) { fprintf(stderr, "error: heap exhausted\n"); exit(3); }
    for (i = 0; i < HEAP_CHUNK; i++) {
      chunk[i].port[0] = FreeList;
      FreeList = &chunk[i];
    }
  }
  a = FreeList;
  FreeList = a->port[0];
  a->id = id;
  memset(a->port, 0, sizeof(a->port));
  Allocs++;
  return a;
}

static Agent *mkName(void) {
  Agent *x = mkAgent(ID_NAME);
  x->port[0] = NULL;
  return x;
}

static void freeAgent(Agent *a) {
  a->port[0] = FreeList;
  FreeList = a;
  Frees++;
}

static Equation *EQ;
static int EQ_top, EQ_cap;

static void pushActive(Agent *l, Agent *r) {
  if (EQ_top == EQ_cap) {
    EQ_cap = EQ_cap ? EQ_cap * 2 : 256;
    EQ = realloc(EQ, sizeof(Equation) * EQ_cap);
    if (EQ == NULL) { fprintf(stderr, "error: stack exhausted\n"); exit(3); }
  }
  EQ[EQ_top].l = l;
  EQ[EQ_top].r = r;
  EQ_top++;
  if ((unsigned long long)EQ_top > MaxStack) MaxStack = EQ_top;
}

static int popActive(Agent **l, Agent **r) {
  if (EQ_top == 0) return 0;
  EQ_top--;
  *l = EQ[EQ_top].l;
  *r = EQ[EQ_top].r;
  return 1;
}
)";

constexpr const char* kClaim = R"(
/* Re-claims the equation cell just popped, for procedures that rewrite it
   through StackL/StackR. */
static int claimTop(void) {
  int cell = EQ_top;
  EQ_top++;
  if ((unsigned long long)EQ_top > MaxStack) MaxStack = EQ_top;
  return cell;
}
)";

constexpr const char* kEval = R"(void eval() {
 Agent *a1, *a2;
 while (popActive(&a1, &a2)) {
  if (a2->id != ID_NAME) {
   if (a1->id != ID_NAME) { //Interact
    if (R[a1->id][a2->id] == NULL) {
     fprintf(stderr, "error: no rule for %s %s\n", Symbols[a1->id], Symbols[a2->id]);
     exit(2);
    }
    Interactions++;
    R[a1->id][a2->id](a1, a2);
   } else if (a1->port[0] != NULL) {
    Agent *a1p0=a1->port[0]; //Ind1
    NameOps++;
    freeAgent(a1);
    pushActive(a1p0, a2);
   } else { NameOps++; a1->port[0]=a2; } //Var1
  } else if (a2->port[0] != NULL) {
    Agent *a2p0=a2->port[0]; //Ind2
    NameOps++;
    freeAgent(a2);
    pushActive(a1, a2p0);
  } else { NameOps++; a2->port[0]=a1; } //Var2
 }
}
)";

constexpr const char* kReadback = R"(static Agent **Labeled;
static const char **Labels;
static int LabelCount, LabelCap, FreshCount;

static const char *labelOf(Agent *x) {
  int i;
  char *buf;
  for (i = 0; i < LabelCount; i++) {
    if (Labeled[i] == x) return Labels[i];
  }
  buf = malloc(32);
  sprintf(buf, "v#%d", ++FreshCount);
  nameNode(x, buf);
  return buf;
}

static void nameNode(Agent *x, const char *label) {
  if (LabelCount == LabelCap) {
    LabelCap = LabelCap ? LabelCap * 2 : 16;
    Labeled = realloc(Labeled, sizeof(Agent *) * LabelCap);
    Labels = realloc(Labels, sizeof(char *) * LabelCap);
  }
  Labeled[LabelCount] = x;
  Labels[LabelCount] = label;
  LabelCount++;
}

static void printTerm(Agent *a, unsigned long long depth) {
  int i;
  while (a->id == ID_NAME && a->port[0] != NULL) {
    if (++depth > Allocs - Frees + 1) {
      fprintf(stderr, "error: cyclic indirection\n");
      exit(4);
    }
    a = a->port[0];
  }
  if (a->id == ID_NAME) {
    fputs(labelOf(a), stdout);
    return;
  }
  fputs(Symbols[a->id], stdout);
  if (Arities[a->id] == 0) return;
  putchar('(');
  for (i = 0; i < Arities[a->id]; i++) {
    if (i > 0) putchar(',');
    printTerm(a->port[i], depth + 1);
  }
  putchar(')');
}
)";

}  // namespace

std::string emit_rule_function(const RuleProcedure& proc) {
  const bool claims = std::none_of(proc.body.begin(), proc.body.end(), [](const Instruction& i) {
    return std::holds_alternative<ll0::StackFree>(i);
  });
  std::string out = "void " + function_name(proc) + "(Agent *a1, Agent *a2) {\n";
  if (claims) out += "  int cell=claimTop();\n";
  std::set<std::string> declared;
  for (auto it = proc.body.rbegin(); it != proc.body.rend(); ++it) {
    if (!is_alloc(*it)) continue;
    const std::string dst = std::holds_alternative<ll0::MkAgent>(*it)
                                ? std::get<ll0::MkAgent>(*it).dst
                                : std::get<ll0::MkName>(*it).dst;
    out += "  " + c_alloc(*it, declared.insert(c_var(dst)).second) + "\n";
  }
  for (const auto& ins : proc.body) {
    if (is_alloc(ins)) continue;
    const std::string s = c_statement(ins, declared, true);
    if (!s.empty()) out += "  " + s + "\n";
  }
  out += "}\n";
  return out;
}

EmittedUnit emit_backend(const LL0Program& p) {
  EmittedUnit unit;
  const auto& syms = p.decl.symbols;
  int max_port = 1;
  for (const auto& e : syms) max_port = std::max(max_port, e.arity);
  int iface = 0;
  for (const auto& ins : p.build) {
    if (const auto* m = std::get_if<ll0::MkInterface>(&ins)) iface = m->size;
  }

  std::string& s = unit.source;
  s += "#include <stdio.h>\n#include <stdlib.h>\n#include <string.h>\n\n";
  s += "#define ID_NAME 0\n";
  for (std::size_t i = 0; i < syms.size(); ++i) {
    s += "#define ID_" + syms[i].name + " " + std::to_string(i + 1) + "\n";
  }
  s += "#define MAX_AGENTID " + std::to_string(syms.size()) + "\n";
  s += "#define MAX_PORT " + std::to_string(max_port) + "\n\n";
  s += "const char *Symbols[MAX_AGENTID+1] = {\"\"";
  for (const auto& e : syms) s += ", \"" + e.name + "\"";
  s += "};\nint Arities[MAX_AGENTID+1] = {1";
  for (const auto& e : syms) s += ", " + std::to_string(e.arity);
  s += "};\n\n";
  s += kRuntime;
  if (std::any_of(p.procedures.begin(), p.procedures.end(), [](const RuleProcedure& r) {
        return std::none_of(r.body.begin(), r.body.end(), [](const Instruction& i) {
          return std::holds_alternative<ll0::StackFree>(i);
        });
      })) {
    s += kClaim;
  }
  s += "\n#define SIZE_INTERFACE " + std::to_string(iface) + "\n";
  s += "Agent *I[SIZE_INTERFACE+1];\n\n";

  for (const auto& proc : p.procedures) {
    const std::string fn = function_name(proc);
    s += emit_rule_function(proc);
    s += "\n";
    unit.functions.push_back(fn);
    unit.registrations.push_back("R[ID_" + proc.alpha + "][ID_" + proc.beta +
                                 "]=&" + fn + ";");
  }
  s += "void registerRules() {\n";
  for (const auto& r : unit.registrations) s += "  " + r + "\n";
  s += "}\n\n";
  s += kEval;
  s += "\nstatic void nameNode(Agent *x, const char *label);\n";
  s += kReadback;

  // main: build the net, run, print readback and counters.
  s += "\nint main(void) {\n";
  std::set<std::string> vars;
  for (const auto& ins : p.build) {
    if (const auto* m = std::get_if<ll0::MkAgent>(&ins)) vars.insert(c_var(m->dst));
    if (const auto* m = std::get_if<ll0::MkName>(&ins)) vars.insert(c_var(m->dst));
    if (const auto* m = std::get_if<ll0::Move>(&ins)) vars.insert(c_var(m->dst));
  }
  if (!vars.empty()) {
    s += "  Agent";
    bool first = true;
    for (const auto& v : vars) {
      s += first ? " *" : ", *";
      s += v;
      first = false;
    }
    s += ";\n";
  }
  s += "  int k;\n  registerRules();\n";
  std::set<std::string> declared(vars.begin(), vars.end());
  for (const auto& ins : p.build) {
    if (is_alloc(ins)) {
      s += "  " + c_alloc(ins, false) + "\n";
      if (const auto* m = std::get_if<ll0::MkName>(&ins)) {
        s += "  nameNode(" + c_var(m->dst) + ", \"" + m->dst + "\");\n";
      }
      continue;
    }
    const std::string st = c_statement(ins, declared, false);
    if (!st.empty()) s += "  " + st + "\n";
  }
  s += "  eval();\n";
  s += "  for (k = 0; k < SIZE_INTERFACE; k++) {\n";
  s += "    if (k > 0) fputs(\", \", stdout);\n";
  s += "    printTerm(I[k], 0);\n  }\n  putchar('\\n');\n";
  s += "  printf(\"interactions=%llu name_ops=%llu allocs=%llu frees=%llu "
       "max_stack=%llu\\n\", Interactions, NameOps, Allocs, Frees, MaxStack);\n";
  s += "  return 0;\n}\n";
  return unit;
}

}  // namespace inet
