#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "inet/syntax.hpp"

namespace inet::testing {

inline std::string nets_path(const std::string& file) {
  return std::string(INET_NETS_DIR) + "/" + file;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SourceProgram load_net(const std::string& file) {
  return parse_source(slurp(nets_path(file)));
}

inline const char* const kAddRulesOnly = R"(agent Z:0, S:1, Add:2
rule Add(x1, x2) >< Z => x1 = x2;
rule Add(x1, x2) >< S(y) => Add(x1, w) = y, x2 = S(w);
)";

}  // namespace inet::testing
