#ifndef POMSET_TEXT_UTIL_HPP
#define POMSET_TEXT_UTIL_HPP

#include <string_view>
#include <vector>

namespace pomset::detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<std::string_view> split_lines(std::string_view text);
std::string_view strip_comment(std::string_view line, char marker);
std::vector<Token> tokenize(std::string_view line);

}  // namespace pomset::detail

#endif  // POMSET_TEXT_UTIL_HPP
