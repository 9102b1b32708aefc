#include "taplab/layout.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "taplab/utf8.hpp"

namespace taplab {

namespace {

constexpr int kMaxCycleLength = 5;

Key key(char id, Cycle alpha, Cycle special) {
    return Key{id, std::move(alpha), std::move(special)};
}

Layout make_baseline() {
    Layout layout;
    layout.name = "baseline";
    layout.mode_key = '#';
    layout.keys = {
        key('1', U"1", U"1"),     key('2', U"abc2", U"2"), key('3', U"def3", U"3"),
        key('4', U"ghi4", U"4"),  key('5', U"jkl5", U"5"), key('6', U"mno6", U"6"),
        key('7', U"pqrs7", U"7"), key('8', U"tuv8", U"8"), key('9', U"wxyz9", U"9"),
        key('*', U"", U""),       key('0', U"0", U"0"),    key('#', U"", U""),
    };
    return layout;
}

Layout make_suggested() {
    Layout layout;
    layout.name = "suggested";
    layout.mode_key = '#';
    layout.keys = {
        key('1', U"1", U"1"),     key('2', U"abr2", U"2"), key('3', U"cds3", U"3"),
        key('4', U"eft4", U"4"),  key('5', U"ghu5", U"5"), key('6', U"ijv6", U"6"),
        key('7', U"klwx7", U"7"), key('8', U"mny8", U"8"), key('9', U"opqz9", U"9"),
        key('*', U"", U""),       key('0', U"0", U"0"),    key('#', U"", U""),
    };
    return layout;
}

std::string glyph(Symbol s) { return utf8::encode(s); }

void check_cycles(const Layout& layout, Mode mode, std::vector<std::string>& out) {
    const std::string mode_name(to_string(mode));
    std::map<Symbol, std::vector<char>> seen;  // symbol -> keys carrying it
    for (const Key& k : layout.keys) {
        const Cycle& cycle = k.cycle(mode);
        if (static_cast<int>(cycle.size()) > kMaxCycleLength) {
            out.push_back("key '" + std::string(1, k.id) + "' " + mode_name +
                          " cycle has length " + std::to_string(cycle.size()) + " (max " +
                          std::to_string(kMaxCycleLength) + ")");
        }
        std::set<Symbol> within;
        for (Symbol s : cycle) {
            if (!within.insert(s).second) {
                out.push_back("duplicate within cycle: '" + glyph(s) + "' on key '" +
                              std::string(1, k.id) + "' (" + mode_name + ")");
            }
            seen[s].push_back(k.id);
        }
    }

    for (const auto& [symbol, keys] : seen) {
        // Letter/digit multiplicity is reported below against the exact rule;
        // every other symbol still has to be unique so locate stays unambiguous.
        if (keys.size() > 1 && !is_letter(symbol) && !is_digit_symbol(symbol)) {
            std::string where;
            for (char id : keys) {
                if (!where.empty()) where += ", ";
                where += "'" + std::string(1, id) + "'";
            }
            out.push_back("symbol '" + glyph(symbol) + "' appears on multiple keys (" + where +
                          ") in " + mode_name + " cycles");
        }
    }

    if (mode == Mode::Alpha) {
        for (Symbol letter = U'a'; letter <= U'z'; ++letter) {
            const auto it = seen.find(letter);
            const std::size_t n = it == seen.end() ? 0 : it->second.size();
            if (n != 1) {
                out.push_back("letter '" + glyph(letter) + "' appears " + std::to_string(n) +
                              " times across alpha cycles (each of the 26 letters must appear "
                              "exactly once)");
            }
        }
    }
    for (Symbol digit = U'0'; digit <= U'9'; ++digit) {
        const auto it = seen.find(digit);
        const std::size_t n = it == seen.end() ? 0 : it->second.size();
        if (n != 1) {
            out.push_back("digit '" + glyph(digit) + "' appears " + std::to_string(n) +
                          " times across " + mode_name + " cycles (must appear exactly once)");
        }
    }
}

nlohmann::ordered_json cycle_to_json(const Cycle& cycle) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (Symbol s : cycle) {
        arr.push_back(utf8::encode(s));
    }
    return arr;
}

Cycle cycle_from_json(const nlohmann::ordered_json& arr, const std::string& what) {
    if (!arr.is_array()) {
        throw ParseError(what + " must be an array of symbols");
    }
    Cycle cycle;
    for (const auto& item : arr) {
        if (!item.is_string()) {
            throw ParseError(what + " entries must be strings");
        }
        cycle.push_back(utf8::decode_single(item.get<std::string>()));
    }
    return cycle;
}

void reject_unknown_fields(const nlohmann::ordered_json& obj, const std::set<std::string>& allowed,
                           const std::string& what) {
    for (const auto& [field, value] : obj.items()) {
        (void)value;
        if (!allowed.contains(field)) {
            throw ParseError("unknown field \"" + field + "\" in " + what);
        }
    }
}

}  // namespace

Mode other(Mode m) { return m == Mode::Alpha ? Mode::Special : Mode::Alpha; }

std::string_view to_string(Mode m) { return m == Mode::Alpha ? "alpha" : "special"; }

Mode mode_from_string(std::string_view name) {
    if (name == "alpha") return Mode::Alpha;
    if (name == "special") return Mode::Special;
    throw ParseError("unknown mode \"" + std::string(name) + "\" (expected alpha or special)");
}

bool is_keypad_label(char id) {
    return std::find(kKeypadLabels.begin(), kKeypadLabels.end(), id) != kKeypadLabels.end();
}

const Key* Layout::find_key(char id) const {
    for (const Key& k : keys) {
        if (k.id == id) return &k;
    }
    return nullptr;
}

Layout builtin_layout(std::string_view name) {
    if (name == "baseline") return make_baseline();
    if (name == "suggested") return make_suggested();
    throw UnknownLayoutName(std::string(name));
}

std::vector<std::string> builtin_layout_names() { return {"baseline", "suggested"}; }

std::vector<std::string> validate_layout(const Layout& layout) {
    std::vector<std::string> out;

    if (layout.keys.size() != kKeypadLabels.size()) {
        out.push_back("expected 12 keys, found " + std::to_string(layout.keys.size()));
    }
    std::set<char> labels;
    for (const Key& k : layout.keys) {
        if (!is_keypad_label(k.id)) {
            out.push_back("unknown key label '" + std::string(1, k.id) + "'");
        } else if (!labels.insert(k.id).second) {
            out.push_back("duplicate key label '" + std::string(1, k.id) + "'");
        }
    }
    for (char id : kKeypadLabels) {
        if (!labels.contains(id)) {
            out.push_back("missing key '" + std::string(1, id) + "'");
        }
    }

    check_cycles(layout, Mode::Alpha, out);
    check_cycles(layout, Mode::Special, out);

    if (layout.mode_key) {
        const Key* mk = layout.find_key(*layout.mode_key);
        if (mk == nullptr) {
            out.push_back("mode key '" + std::string(1, *layout.mode_key) +
                          "' is not present in the layout");
        } else if (!mk->alpha.empty() || !mk->special.empty()) {
            out.push_back("mode key '" + std::string(1, *layout.mode_key) +
                          "' must carry empty cycles in both modes");
        }
    }
    return out;
}

Layout parse_layout(const std::string& json_text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("layout document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("layout document must be a JSON object");
    }
    reject_unknown_fields(doc, {"name", "mode_key", "keys"}, "layout document");
    if (!doc.contains("name") || !doc["name"].is_string()) {
        throw ParseError("layout document needs a string \"name\" field");
    }
    if (!doc.contains("keys")) {
        throw ParseError("layout document needs a \"keys\" array");
    }

    Layout layout;
    layout.name = doc["name"].get<std::string>();
    layout.mode_key = std::nullopt;
    if (doc.contains("mode_key") && !doc["mode_key"].is_null()) {
        if (!doc["mode_key"].is_string()) {
            throw ParseError("\"mode_key\" must be a string or null");
        }
        const std::string mk = doc["mode_key"].get<std::string>();
        if (mk.size() != 1) {
            throw ParseError("\"mode_key\" must be a single key glyph");
        }
        layout.mode_key = mk[0];
    }

    if (!doc["keys"].is_array()) {
        throw ParseError("\"keys\" must be an array");
    }
    for (const auto& key_obj : doc["keys"]) {
        if (!key_obj.is_object()) {
            throw ParseError("every entry of \"keys\" must be an object");
        }
        reject_unknown_fields(key_obj, {"id", "alpha", "special"}, "key entry");
        if (!key_obj.contains("id") || !key_obj["id"].is_string()) {
            throw ParseError("key entry needs a string \"id\" field");
        }
        const std::string id = key_obj["id"].get<std::string>();
        if (id.size() != 1) {
            throw ParseError("key id \"" + id + "\" must be a single glyph");
        }
        Key k;
        k.id = id[0];
        if (key_obj.contains("alpha")) {
            k.alpha = cycle_from_json(key_obj["alpha"], "\"alpha\" cycle");
        }
        if (key_obj.contains("special")) {
            k.special = cycle_from_json(key_obj["special"], "\"special\" cycle");
        }
        layout.keys.push_back(std::move(k));
    }

    if (auto violations = validate_layout(layout); !violations.empty()) {
        throw ValidationError(std::move(violations));
    }
    return layout;
}

std::string serialize_layout(const Layout& layout) {
    nlohmann::ordered_json doc;
    doc["name"] = layout.name;
    if (layout.mode_key) {
        doc["mode_key"] = std::string(1, *layout.mode_key);
    } else {
        doc["mode_key"] = nullptr;
    }
    doc["keys"] = nlohmann::ordered_json::array();
    for (const Key& k : layout.keys) {
        nlohmann::ordered_json key_obj;
        key_obj["id"] = std::string(1, k.id);
        key_obj["alpha"] = cycle_to_json(k.alpha);
        key_obj["special"] = cycle_to_json(k.special);
        doc["keys"].push_back(std::move(key_obj));
    }
    return doc.dump(2) + "\n";
}

std::optional<SymbolLocation> try_locate(const Layout& layout, Mode mode, Symbol symbol) {
    for (const Key& k : layout.keys) {
        const Cycle& cycle = k.cycle(mode);
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (cycle[i] == symbol) {
                return SymbolLocation{k.id, static_cast<int>(i) + 1, mode};
            }
        }
    }
    return std::nullopt;
}

SymbolLocation locate(const Layout& layout, Mode mode, Symbol symbol) {
    if (auto loc = try_locate(layout, mode, symbol)) {
        return *loc;
    }
    throw SymbolNotProducible(utf8::encode(symbol), std::string(to_string(mode)));
}

int vowel_count_at_position(const Layout& layout, int position) {
    if (position < 1) {
        throw Error("position must be >= 1");
    }
    int count = 0;
    for (const Key& k : layout.keys) {
        if (static_cast<int>(k.alpha.size()) >= position &&
            is_vowel(k.alpha[static_cast<std::size_t>(position) - 1])) {
            ++count;
        }
    }
    return count;
}

std::vector<Cycle> letter_groups(const Layout& layout) {
    std::vector<Cycle> groups;
    for (const Key& k : layout.keys) {
        Cycle letters;
        for (Symbol s : k.alpha) {
            if (is_letter(s)) letters.push_back(s);
        }
        if (!letters.empty()) groups.push_back(std::move(letters));
    }
    return groups;
}

}  // namespace taplab
