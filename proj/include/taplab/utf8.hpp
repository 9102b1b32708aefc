#pragma once

#include <string>
#include <string_view>

#include "taplab/errors.hpp"

namespace taplab::utf8 {

// Decodes UTF-8 into Unicode scalar values. Throws ParseError on invalid
// input (truncated sequences, overlongs, surrogates, out-of-range).
std::u32string decode(std::string_view bytes);

// Encodes one scalar / a scalar sequence back to UTF-8.
std::string encode(char32_t cp);
std::string encode(std::u32string_view text);

// Decodes a string that must contain exactly one Unicode scalar.
char32_t decode_single(std::string_view bytes);

}  // namespace taplab::utf8
