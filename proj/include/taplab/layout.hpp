#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taplab/errors.hpp"

namespace taplab {

// Entry mode of a 12-key keypad. Every key carries one symbol cycle per
// mode; the mode key (usually '#') flips between the two.
enum class Mode { Alpha, Special };

Mode other(Mode m);
std::string_view to_string(Mode m);
Mode mode_from_string(std::string_view name);  // "alpha" | "special"

// A symbol is a single Unicode scalar; a cycle is an ordered scalar list.
using Symbol = char32_t;
using Cycle = std::u32string;

// The twelve key glyphs, in keypad display order.
inline constexpr std::array<char, 12> kKeypadLabels = {'1', '2', '3', '4', '5', '6',
                                                       '7', '8', '9', '*', '0', '#'};

bool is_keypad_label(char id);
inline bool is_letter(Symbol s) { return s >= U'a' && s <= U'z'; }
inline bool is_digit_symbol(Symbol s) { return s >= U'0' && s <= U'9'; }
inline bool is_vowel(Symbol s) {
    return s == U'a' || s == U'e' || s == U'i' || s == U'o' || s == U'u';
}

struct Key {
    char id = '?';
    Cycle alpha;
    Cycle special;

    bool operator==(const Key&) const = default;
    const Cycle& cycle(Mode m) const { return m == Mode::Alpha ? alpha : special; }
};

// Where a symbol lives: press `key` `taps` times in `mode`.
struct SymbolLocation {
    char key = '?';
    int taps = 0;  // 1-based position within the cycle
    Mode mode = Mode::Alpha;

    bool operator==(const SymbolLocation&) const = default;
};

// An immutable 12-key keypad layout. Construction does not validate;
// run validate_layout to collect invariant violations.
struct Layout {
    std::string name;
    std::optional<char> mode_key = '#';
    std::vector<Key> keys;

    bool operator==(const Layout&) const = default;
    const Key* find_key(char id) const;
};

// The two canonical layouts. Throws UnknownLayoutName otherwise.
Layout builtin_layout(std::string_view name);
std::vector<std::string> builtin_layout_names();

// Returns the list of invariant violations; empty means the layout is valid.
// Checked rules: twelve distinct known key labels; the 26 letters appear
// exactly once across alpha cycles; every digit appears exactly once per
// mode; no symbol repeats within a cycle or across cycles of one mode;
// cycle length <= 5; the mode key carries empty cycles.
std::vector<std::string> validate_layout(const Layout& layout);

// JSON persistence. parse_layout rejects unknown fields and validates;
// parse(serialize(L)) == L for every valid layout.
Layout parse_layout(const std::string& json_text);
std::string serialize_layout(const Layout& layout);

// Finds the unique (key, taps) producing `symbol` in `mode`.
SymbolLocation locate(const Layout& layout, Mode mode, Symbol symbol);
std::optional<SymbolLocation> try_locate(const Layout& layout, Mode mode, Symbol symbol);

// Number of keys whose alpha cycle has a vowel at exactly this 1-based
// position. Positions beyond every cycle yield 0.
int vowel_count_at_position(const Layout& layout, int position);

// Letters of each key's alpha cycle, letter-bearing keys only, key order.
std::vector<Cycle> letter_groups(const Layout& layout);

}  // namespace taplab
