#include "sds/errors.hpp"

#include <array>
#include <charconv>

namespace sds {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

}  // namespace sds
