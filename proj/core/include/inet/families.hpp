#pragma once

// Benchmark families. Rules live in nets/<family>.inet and are compiled
// into the library; the net for a given size is generated here.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace inet {

enum class Family { add, fib, ack, church };

std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view name);
const std::vector<Family>& all_families();

// add(m, n), fib(n), ack(m, n), church(a, b)
std::size_t family_param_count(Family f);
std::string_view family_rules(Family f);

// Rules plus a generated net line:
//   add(m, n)     <r>: Add(m, r) = n
//   fib(n)        <r>: Fib(r) = n
//   ack(m, n)     <r>: Ack(n, r) = m
//   church(a, b)  <r>: ((a b) I) I with Church numerals a and b, each
//                 numeral's duplicators under its own label
// Throws Error(invalid_program) for a wrong parameter count or a negative
// parameter.
std::string family_source(Family f, const std::vector<int>& params);

std::string family_label(Family f, const std::vector<int>& params);

// Desk-scale sizes used by the default bench run and the test suites.
std::vector<std::vector<int>> default_sizes(Family f);

// Unary numeral S(...S(Z)...).
std::string unary(int n);

}  // namespace inet
