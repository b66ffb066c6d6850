#include "cregf/format.hpp"

#include <array>
#include <charconv>

namespace cregf {

std::string shortest(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

}  // namespace cregf
