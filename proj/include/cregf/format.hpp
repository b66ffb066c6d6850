#pragma once

#include <string>

namespace cregf {

/// Shortest decimal string that parses back to exactly `v`.
std::string shortest(double v);

}  // namespace cregf
