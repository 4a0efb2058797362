#include "lagmech/error.hpp"

namespace lagmech {
namespace {

std::string parse_message(std::size_t offset, const std::vector<std::string>& expected,
                          const std::string& detail) {
  std::string msg = "parse error at offset " + std::to_string(offset);
  if (!detail.empty()) msg += ": " + detail;
  if (!expected.empty()) {
    msg += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ")";
  }
  return msg;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
    : Error(parse_message(offset, expected, detail)), offset_(offset), expected_(std::move(expected)) {}

}  // namespace lagmech
