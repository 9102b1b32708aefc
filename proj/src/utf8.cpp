#include "taplab/utf8.hpp"

namespace taplab::utf8 {

namespace {

bool is_continuation(unsigned char b) { return (b & 0xC0u) == 0x80u; }

}  // namespace

std::u32string decode(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
        const auto b0 = static_cast<unsigned char>(bytes[i]);
        char32_t cp = 0;
        std::size_t len = 0;
        if (b0 < 0x80u) {
            cp = b0;
            len = 1;
        } else if ((b0 & 0xE0u) == 0xC0u) {
            cp = b0 & 0x1Fu;
            len = 2;
        } else if ((b0 & 0xF0u) == 0xE0u) {
            cp = b0 & 0x0Fu;
            len = 3;
        } else if ((b0 & 0xF8u) == 0xF0u) {
            cp = b0 & 0x07u;
            len = 4;
        } else {
            throw ParseError("invalid UTF-8 lead byte");
        }
        if (i + len > bytes.size()) {
            throw ParseError("truncated UTF-8 sequence");
        }
        for (std::size_t k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(bytes[i + k]);
            if (!is_continuation(b)) {
                throw ParseError("invalid UTF-8 continuation byte");
            }
            cp = (cp << 6) | (b & 0x3Fu);
        }
        static constexpr char32_t kMinForLen[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (len > 1 && cp < kMinForLen[len]) {
            throw ParseError("overlong UTF-8 sequence");
        }
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            throw ParseError("UTF-8 sequence decodes outside Unicode scalar range");
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
    return out;
}

std::string encode(std::u32string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char32_t cp : text) {
        out += encode(cp);
    }
    return out;
}

char32_t decode_single(std::string_view bytes) {
    const std::u32string scalars = decode(bytes);
    if (scalars.size() != 1) {
        throw ParseError("expected exactly one Unicode scalar, got \"" + std::string(bytes) + "\"");
    }
    return scalars[0];
}

}  // namespace taplab::utf8
