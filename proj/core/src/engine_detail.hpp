#pragma once

#include "inet/term.hpp"

namespace inet {

[[noreturn]] void throw_stuck(const Term& l, const Term& r);

}  // namespace inet
