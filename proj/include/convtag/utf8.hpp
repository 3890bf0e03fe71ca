#pragma once

#include <string>
#include <string_view>

namespace convtag::utf8 {

// Invalid sequences decode to U+FFFD.
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);
std::string encode(char32_t cp);

// Letters of the Latin scripts (ASCII plus Latin-1 and Latin Extended-A/B).
bool is_alpha(char32_t cp);
char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view text);

}  // namespace convtag::utf8
