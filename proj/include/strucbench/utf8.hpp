#ifndef STRUCBENCH_UTF8_HPP
#define STRUCBENCH_UTF8_HPP

#include <string>
#include <string_view>

namespace strucbench {

// Decodes UTF-8 into Unicode scalar values. Each byte of an invalid or
// truncated sequence becomes U+FFFD, so any byte string decodes.
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view text);

}  // namespace strucbench

#endif  // STRUCBENCH_UTF8_HPP
