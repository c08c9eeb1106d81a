#ifndef INTENT_TEXT_HPP
#define INTENT_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace intent {

// ASCII case fold; bytes outside ASCII pass through untouched.
std::string to_lower(std::string_view s);

// Strips ASCII whitespace from both ends.
std::string_view trim(std::string_view s);

// Lowercases and splits on whitespace (ASCII plus the common Unicode
// space codepoints, decoded from UTF-8). Empty tokens are dropped;
// punctuation stays inside tokens.
std::vector<std::string> tokenize(std::string_view query_text);

// Lowercased URL host with a leading "www." removed. Strings without a
// recognizable authority come back whole (lowercased) so no click
// evidence is lost.
std::string extract_domain(std::string_view url);

} // namespace intent

#endif
