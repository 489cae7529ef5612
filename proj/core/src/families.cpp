#include "inet/families.hpp"

#include "inet/error.hpp"

namespace inet {

namespace detail {
extern const char* const kAddRules;
extern const char* const kFibRules;
extern const char* const kAckRules;
extern const char* const kChurchRules;
}  // namespace detail

std::string_view to_string(Family f) {
  switch (f) {
    case Family::add: return "add";
    case Family::fib: return "fib";
    case Family::ack: return "ack";
    case Family::church: return "church";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : all_families()) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> all = {Family::add, Family::fib, Family::ack,
                                          Family::church};
  return all;
}

std::size_t family_param_count(Family f) { return f == Family::fib ? 1 : 2; }

std::string_view family_rules(Family f) {
  switch (f) {
    case Family::add: return detail::kAddRules;
    case Family::fib: return detail::kFibRules;
    case Family::ack: return detail::kAckRules;
    case Family::church: return detail::kChurchRules;
  }
  return {};
}

std::string unary(int n) {
  std::string out;
  out.reserve(static_cast<std::size_t>(n) * 3 + 1);
  for (int i = 0; i < n; ++i) out += "S(";
  out += "Z";
  out.append(static_cast<std::size_t>(n), ')');
  return out;
}

namespace {

// Church numeral n as a term plus the equations wiring its duplicators and
// application chain. Names are prefixed by `p`.
std::pair<std::string, std::vector<std::string>> church_numeral(
    int n, const std::string& dup, const std::string& p) {
  const std::string f = "f" + p;
  const std::string x = "x" + p;
  std::vector<std::string> eqs;
  if (n == 0) {
    eqs.push_back("Era = " + f);
    return {"Lam(" + f + ", Lam(" + x + ", " + x + "))", eqs};
  }
  // Copies g1..gn of f.
  std::vector<std::string> g;
  if (n == 1) {
    g.push_back(f);
  } else {
    std::string wire = f;
    for (int k = 1; k < n; ++k) {
      const std::string gk = "g" + p + std::to_string(k);
      const std::string next =
          k + 1 == n ? "g" + p + std::to_string(n) : "t" + p + std::to_string(k);
      eqs.push_back(dup + "(" + gk + ", " + next + ") = " + wire);
      g.push_back(gk);
      wire = next;
    }
    g.push_back(wire);
  }
  // g1 (g2 (... (gn x))): App(y_{k+1}, y_k) = g_k with y_{n+1} = x.
  const std::string body = "y" + p + "1";
  std::string arg = x;
  for (int k = n; k >= 1; --k) {
    const std::string res = "y" + p + std::to_string(k);
    eqs.push_back("App(" + arg + ", " + res + ") = " + g[static_cast<std::size_t>(k - 1)]);
    arg = res;
  }
  return {"Lam(" + f + ", Lam(" + x + ", " + body + "))", eqs};
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out += ", ";
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string family_source(Family f, const std::vector<int>& params) {
  if (params.size() != family_param_count(f)) {
    throw Error(ErrorKind::invalid_program,
                std::string(to_string(f)) + " takes " +
                    std::to_string(family_param_count(f)) + " parameter(s)");
  }
  for (int v : params) {
    if (v < 0) throw Error(ErrorKind::invalid_program, "negative benchmark size");
  }
  std::string net;
  switch (f) {
    case Family::add:
      net = "net <r>: Add(" + unary(params[0]) + ", r) = " + unary(params[1]) + ";";
      break;
    case Family::fib:
      net = "net <r>: Fib(r) = " + unary(params[0]) + ";";
      break;
    case Family::ack:
      net = "net <r>: Ack(" + unary(params[1]) + ", r) = " + unary(params[0]) + ";";
      break;
    case Family::church: {
      auto [ca, eqa] = church_numeral(params[0], "Dup0", "a");
      auto [cb, eqb] = church_numeral(params[1], "Dup1", "b");
      std::vector<std::string> eqs;
      eqs.push_back(ca + " = ca");
      eqs.insert(eqs.end(), eqa.begin(), eqa.end());
      eqs.push_back(cb + " = cb");
      eqs.insert(eqs.end(), eqb.begin(), eqb.end());
      eqs.push_back("App(Lam(i1, i1), r2) = r1");
      eqs.push_back("App(Lam(i2, i2), r) = r2");
      eqs.push_back("App(cb, r1) = ca");
      net = "net <r>: " + join(eqs) + ";";
      break;
    }
  }
  std::string out(family_rules(f));
  out += "\n" + net + "\n";
  return out;
}

std::string family_label(Family f, const std::vector<int>& params) {
  std::string out(to_string(f));
  out += "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(params[i]);
  }
  return out + ")";
}

std::vector<std::vector<int>> default_sizes(Family f) {
  switch (f) {
    case Family::add: return {{3, 4}, {10, 20}, {50, 100}};
    case Family::fib: return {{5}, {10}, {15}};
    case Family::ack: return {{1, 3}, {2, 3}, {3, 2}};
    case Family::church: return {{2, 2}, {3, 2}, {2, 3}};
  }
  return {};
}

}  // namespace inet
