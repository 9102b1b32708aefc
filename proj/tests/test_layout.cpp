#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "taplab/layout.hpp"

using namespace taplab;

namespace {

bool any_violation_contains(const std::vector<std::string>& violations, const std::string& needle) {
    return std::any_of(violations.begin(), violations.end(), [&](const std::string& v) {
        return v.find(needle) != std::string::npos;
    });
}

}  // namespace

TEST_CASE("builtin baseline matches the classic keypad") {
    const Layout layout = builtin_layout("baseline");
    CHECK(layout.name == "baseline");
    CHECK(layout.mode_key == '#');
    REQUIRE(layout.keys.size() == 12);
    CHECK(layout.find_key('2')->alpha == U"abc2");
    CHECK(layout.find_key('7')->alpha == U"pqrs7");
    CHECK(layout.find_key('9')->alpha == U"wxyz9");
    CHECK(layout.find_key('*')->alpha.empty());
    CHECK(layout.find_key('#')->alpha.empty());
    CHECK(layout.find_key('5')->special == U"5");
}

TEST_CASE("builtin suggested moves the vowels forward") {
    const Layout layout = builtin_layout("suggested");
    CHECK(layout.find_key('2')->alpha == U"abr2");
    CHECK(layout.find_key('4')->alpha == U"eft4");
    // The printed figure repeats 'u' on key 6; the full-alphabet rule
    // forces 'v' there instead.
    CHECK(layout.find_key('6')->alpha == U"ijv6");
    CHECK(layout.find_key('7')->alpha == U"klwx7");
    CHECK(layout.find_key('9')->alpha == U"opqz9");
}

TEST_CASE("unknown builtin name throws") {
    CHECK_THROWS_AS(builtin_layout("dvorak"), UnknownLayoutName);
}

TEST_CASE("builtins validate with zero violations") {
    CHECK(validate_layout(builtin_layout("baseline")).empty());
    CHECK(validate_layout(builtin_layout("suggested")).empty());
}

TEST_CASE("both builtins use six 3-letter and two 4-letter groups") {
    for (const auto& name : builtin_layout_names()) {
        std::multiset<std::size_t> sizes;
        for (const Cycle& group : letter_groups(builtin_layout(name))) {
            sizes.insert(group.size());
        }
        CHECK(sizes == std::multiset<std::size_t>{3, 3, 3, 3, 3, 3, 4, 4});
    }
}

TEST_CASE("validation flags a duplicate within one cycle") {
    Layout layout = builtin_layout("baseline");
    layout.keys[1].alpha = U"aa2";  // key '2'
    const auto violations = validate_layout(layout);
    CHECK(any_violation_contains(violations, "duplicate within cycle"));
    CHECK(any_violation_contains(violations, "'a'"));
}

TEST_CASE("validation names a missing letter") {
    Layout layout = builtin_layout("baseline");
    layout.keys[7].alpha = U"tu8";  // drop 'v' from key '8'
    const auto violations = validate_layout(layout);
    CHECK(any_violation_contains(violations, "letter 'v'"));
    CHECK(any_violation_contains(violations, "26 letters"));
}

TEST_CASE("validation flags a letter on two keys") {
    Layout layout = builtin_layout("baseline");
    layout.keys[2].alpha = U"daef3";  // 'a' also lives on key '2'
    const auto violations = validate_layout(layout);
    CHECK(any_violation_contains(violations, "letter 'a' appears 2 times"));
}

TEST_CASE("validation rejects overlong cycles and non-empty mode keys") {
    Layout layout = builtin_layout("baseline");
    layout.keys[1].alpha = U"abcwx2";
    layout.keys[8].alpha = U"yz9";
    CHECK(any_violation_contains(validate_layout(layout), "length 6"));

    Layout with_mode_symbols = builtin_layout("baseline");
    with_mode_symbols.keys[11].special = U"+";
    CHECK(any_violation_contains(validate_layout(with_mode_symbols), "mode key"));
}

TEST_CASE("validation flags missing digits per mode") {
    Layout layout = builtin_layout("baseline");
    layout.keys[0].special = U"";  // '1' gone from special
    const auto violations = validate_layout(layout);
    CHECK(any_violation_contains(violations, "digit '1' appears 0 times across special"));
}

TEST_CASE("locate finds the figure positions") {
    const Layout baseline = builtin_layout("baseline");
    CHECK(locate(baseline, Mode::Alpha, U'c') == SymbolLocation{'2', 3, Mode::Alpha});
    CHECK(locate(baseline, Mode::Alpha, U'2') == SymbolLocation{'2', 4, Mode::Alpha});
    CHECK(locate(baseline, Mode::Alpha, U'1') == SymbolLocation{'1', 1, Mode::Alpha});
    CHECK(locate(baseline, Mode::Special, U'2') == SymbolLocation{'2', 1, Mode::Special});
    CHECK(locate(builtin_layout("suggested"), Mode::Alpha, U'o') ==
          SymbolLocation{'9', 1, Mode::Alpha});
}

TEST_CASE("locate throws for unproducible symbols") {
    const Layout baseline = builtin_layout("baseline");
    CHECK_THROWS_AS(locate(baseline, Mode::Alpha, U'!'), SymbolNotProducible);
    CHECK_THROWS_AS(locate(baseline, Mode::Special, U'a'), SymbolNotProducible);
    CHECK(!try_locate(baseline, Mode::Alpha, U'#'));  // the mode key is not text
}

TEST_CASE("every cycle element locates back to itself") {
    std::mt19937_64 rng(7);
    std::vector<Layout> layouts = {builtin_layout("baseline"), builtin_layout("suggested")};
    for (int i = 0; i < 5; ++i) {
        layouts.push_back(oracle::random_layout(rng, i));
    }
    for (const Layout& layout : layouts) {
        REQUIRE(validate_layout(layout).empty());
        for (const Key& key : layout.keys) {
            for (Mode mode : {Mode::Alpha, Mode::Special}) {
                const Cycle& cycle = key.cycle(mode);
                for (std::size_t i = 0; i < cycle.size(); ++i) {
                    const SymbolLocation loc = locate(layout, mode, cycle[i]);
                    CHECK(loc.key == key.id);
                    CHECK(loc.taps == static_cast<int>(i) + 1);
                }
            }
        }
    }
}

TEST_CASE("vowel counts by position match hand enumeration") {
    const Layout baseline = builtin_layout("baseline");
    const Layout suggested = builtin_layout("suggested");
    CHECK(vowel_count_at_position(baseline, 1) == 1);
    CHECK(vowel_count_at_position(suggested, 1) == 4);
    CHECK(vowel_count_at_position(baseline, 4) == 0);  // position 4 holds only s and z
    CHECK(vowel_count_at_position(baseline, 9) == 0);

    for (const Layout* layout : {&baseline, &suggested}) {
        for (int pos = 1; pos <= 5; ++pos) {
            int expected = 0;
            for (const Key& key : layout->keys) {
                if (static_cast<int>(key.alpha.size()) >= pos) {
                    const Symbol s = key.alpha[static_cast<std::size_t>(pos) - 1];
                    expected += (s == U'a' || s == U'e' || s == U'i' || s == U'o' || s == U'u');
                }
            }
            CHECK(vowel_count_at_position(*layout, pos) == expected);
        }
    }
}

TEST_CASE("serialize then parse is the identity") {
    std::mt19937_64 rng(11);
    std::vector<Layout> layouts = {builtin_layout("baseline"), builtin_layout("suggested")};
    for (int i = 0; i < 10; ++i) {
        layouts.push_back(oracle::random_layout(rng, i));
    }
    for (const Layout& layout : layouts) {
        CHECK(parse_layout(serialize_layout(layout)) == layout);
    }
}

TEST_CASE("parse rejects malformed documents") {
    CHECK_THROWS_AS(parse_layout("not json"), ParseError);
    CHECK_THROWS_AS(parse_layout("[1,2]"), ParseError);
    CHECK_THROWS_AS(parse_layout(R"({"name":"x","keys":[],"extra":1})"), ParseError);

    std::string doc = serialize_layout(builtin_layout("baseline"));
    // A two-scalar symbol is a format error, not a validation error.
    const auto pos = doc.find("\"a\"");
    REQUIRE(pos != std::string::npos);
    std::string broken = doc;
    broken.replace(pos, 3, "\"ab\"");
    CHECK_THROWS_AS(parse_layout(broken), ParseError);
}

TEST_CASE("parse surfaces validation failures with the rule named") {
    Layout layout = builtin_layout("baseline");
    layout.keys[7].alpha = U"tu8";  // no more 'v'
    const std::string doc = serialize_layout(layout);
    try {
        parse_layout(doc);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(any_violation_contains(e.violations, "letter 'v'"));
    }

    Layout duplicated = builtin_layout("baseline");
    duplicated.keys[2].alpha = U"daef3";
    try {
        parse_layout(serialize_layout(duplicated));
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(any_violation_contains(e.violations, "letter 'a' appears 2 times"));
    }
}

TEST_CASE("a layout without a mode key parses and validates") {
    Layout layout = builtin_layout("baseline");
    layout.mode_key = std::nullopt;
    CHECK(validate_layout(layout).empty());
    CHECK(parse_layout(serialize_layout(layout)) == layout);
}

TEST_CASE("custom layouts may hang extra symbols on the star key") {
    Layout layout = builtin_layout("baseline");
    layout.name = "with-punctuation";
    layout.keys[9].alpha = U" .é";  // '*' key: space, full stop, a non-ASCII scalar
    CHECK(validate_layout(layout).empty());
    CHECK(parse_layout(serialize_layout(layout)) == layout);
    CHECK(locate(layout, Mode::Alpha, U' ') == SymbolLocation{'*', 1, Mode::Alpha});
    CHECK(locate(layout, Mode::Alpha, U'é') == SymbolLocation{'*', 3, Mode::Alpha});

    // The same symbol on two keys is flagged even though it is no letter.
    layout.keys[0].alpha = U"1.";
    CHECK(any_violation_contains(validate_layout(layout), "'.' appears on multiple keys"));
}
