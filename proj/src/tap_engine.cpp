#include "taplab/tap_engine.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "taplab/utf8.hpp"

namespace taplab {

namespace {

constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max() / 4;

std::optional<std::int64_t> taps_for(const Layout& layout, Mode mode, Symbol symbol) {
    if (auto loc = try_locate(layout, mode, symbol)) {
        return loc->taps;
    }
    return std::nullopt;
}

// (presses, toggles), compared lexicographically.
struct PlanCost {
    std::int64_t presses = kInfinity;
    std::int64_t toggles = kInfinity;

    bool operator==(const PlanCost&) const = default;
    bool operator<(const PlanCost& o) const {
        return presses != o.presses ? presses < o.presses : toggles < o.toggles;
    }
    bool feasible() const { return presses < kInfinity; }
};

}  // namespace

std::vector<Mode> mode_trajectory(std::size_t text_length, Mode start_mode, const ModePlan* plan,
                                  bool has_mode_key) {
    std::vector<Mode> modes(text_length, start_mode);
    if (plan == nullptr || plan->toggle_before.empty()) {
        return modes;
    }
    if (!has_mode_key) {
        throw InvalidPlan("plan contains toggles but the layout has no mode key");
    }
    std::vector<std::size_t> toggles = plan->toggle_before;
    std::sort(toggles.begin(), toggles.end());
    if (std::adjacent_find(toggles.begin(), toggles.end()) != toggles.end()) {
        throw InvalidPlan("plan contains a duplicate toggle index");
    }
    if (!toggles.empty() && toggles.back() >= text_length) {
        throw InvalidPlan("toggle index " + std::to_string(toggles.back()) +
                          " is outside the text (length " + std::to_string(text_length) + ")");
    }
    Mode mode = start_mode;
    std::size_t next = 0;
    for (std::size_t i = 0; i < text_length; ++i) {
        if (next < toggles.size() && toggles[next] == i) {
            mode = other(mode);
            ++next;
        }
        modes[i] = mode;
    }
    return modes;
}

EncodeResult encode(std::u32string_view text, const Layout& layout,
                    const CommitStrategy& strategy, Mode start_mode, const ModePlan* plan) {
    if (strategy.kind == CommitStrategy::Kind::NextKey) {
        const Key* ck = layout.find_key(strategy.commit_key);
        if (ck == nullptr) {
            throw ValidationError("commit key '" + std::string(1, strategy.commit_key) +
                                  "' is not present in the layout");
        }
        if (!ck->alpha.empty() || !ck->special.empty()) {
            throw ValidationError("commit key '" + std::string(1, strategy.commit_key) +
                                  "' must carry empty cycles in both modes");
        }
        if (layout.mode_key && *layout.mode_key == strategy.commit_key) {
            throw ValidationError("commit key '" + std::string(1, strategy.commit_key) +
                                  "' cannot double as the mode key");
        }
    }

    const std::vector<Mode> modes =
        mode_trajectory(text.size(), start_mode, plan, layout.mode_key.has_value());

    EncodeResult result;
    result.taps.start_mode = start_mode;
    result.report.symbol_count = static_cast<std::int64_t>(text.size());

    Mode current = start_mode;
    char prev_key = 0;
    Mode prev_mode = Mode::Alpha;
    bool prev_multi_tap = false;  // previous symbol left a pending state

    for (std::size_t i = 0; i < text.size(); ++i) {
        if (modes[i] != current) {
            result.taps.events.push_back(TapEvent::press(*layout.mode_key));
            result.report.press_count += 1;
            result.report.toggle_count += 1;
            current = modes[i];
            prev_multi_tap = false;  // the toggle press separates
        }

        const auto loc = try_locate(layout, current, text[i]);
        if (!loc) {
            const std::string symbol = utf8::encode(text[i]);
            if (plan != nullptr && try_locate(layout, other(current), text[i])) {
                throw InvalidPlan("plan leaves symbol '" + symbol + "' unreachable in " +
                                  std::string(to_string(current)) + " mode at index " +
                                  std::to_string(i));
            }
            throw SymbolNotProducible(symbol, std::string(to_string(current)));
        }

        const Cycle& cycle = layout.find_key(loc->key)->cycle(current);
        if (prev_multi_tap && prev_key == loc->key && prev_mode == current) {
            if (strategy.kind == CommitStrategy::Kind::Timeout) {
                result.taps.events.push_back(TapEvent::commit());
            } else {
                result.taps.events.push_back(TapEvent::press(strategy.commit_key));
                result.report.press_count += 1;
            }
            result.report.commit_count += 1;
        }
        for (int t = 0; t < loc->taps; ++t) {
            result.taps.events.push_back(TapEvent::press(loc->key));
        }
        result.report.press_count += loc->taps;

        prev_key = loc->key;
        prev_mode = current;
        prev_multi_tap = cycle.size() > 1;
    }
    return result;
}

EncodeResult encode(std::string_view text_utf8, const Layout& layout,
                    const CommitStrategy& strategy, Mode start_mode, const ModePlan* plan) {
    return encode(utf8::decode(text_utf8), layout, strategy, start_mode, plan);
}

std::u32string decode_symbols(const TapSequence& taps, const Layout& layout) {
    std::u32string out;
    Mode mode = taps.start_mode;
    const Key* pending = nullptr;
    std::int64_t pending_taps = 0;

    const auto finalize = [&] {
        if (pending != nullptr) {
            const Cycle& cycle = pending->cycle(mode);
            out.push_back(cycle[static_cast<std::size_t>((pending_taps - 1) % cycle.size())]);
            pending = nullptr;
            pending_taps = 0;
        }
    };

    for (const TapEvent& event : taps.events) {
        if (event.kind == TapEvent::Kind::Commit) {
            finalize();  // commit with nothing pending is a no-op
            continue;
        }
        if (pending != nullptr && pending->id == event.key) {
            ++pending_taps;
            continue;
        }
        const bool had_pending = pending != nullptr;
        finalize();
        if (layout.mode_key && *layout.mode_key == event.key) {
            mode = other(mode);
            continue;
        }
        const Key* key = layout.find_key(event.key);
        if (key == nullptr) {
            throw Error("tap sequence presses key '" + std::string(1, event.key) +
                        "' which is not in the layout");
        }
        const Cycle& cycle = key->cycle(mode);
        if (cycle.empty()) {
            // With a pending symbol this press just committed it.
            if (!had_pending) {
                throw EmptyCycleKeyPressed(event.key, std::string(to_string(mode)));
            }
            continue;
        }
        if (cycle.size() == 1) {
            out.push_back(cycle[0]);
        } else {
            pending = key;
            pending_taps = 1;
        }
    }
    finalize();
    return out;
}

std::string decode(const TapSequence& taps, const Layout& layout) {
    return utf8::encode(decode_symbols(taps, layout));
}

ModePlan plan_modes(std::u32string_view text, const Layout& layout, Mode start_mode) {
    const std::size_t n = text.size();
    const bool can_toggle = layout.mode_key.has_value();

    // dp[i][m]: best (presses, toggles) to produce text[i..) starting in mode m.
    std::vector<std::array<PlanCost, 2>> dp(n + 1);
    dp[n] = {PlanCost{0, 0}, PlanCost{0, 0}};

    const auto direct = [&](std::size_t i, Mode m) -> PlanCost {
        const auto taps = taps_for(layout, m, text[i]);
        if (!taps) return PlanCost{};
        const PlanCost& rest = dp[i + 1][static_cast<int>(m)];
        if (!rest.feasible()) return PlanCost{};
        return PlanCost{*taps + rest.presses, rest.toggles};
    };

    for (std::size_t idx = n; idx-- > 0;) {
        for (Mode m : {Mode::Alpha, Mode::Special}) {
            const PlanCost stay = direct(idx, m);
            PlanCost toggled;
            if (can_toggle) {
                if (const PlanCost via = direct(idx, other(m)); via.feasible()) {
                    toggled = PlanCost{via.presses + 1, via.toggles + 1};
                }
            }
            dp[idx][static_cast<int>(m)] = std::min(stay, toggled);
            if (!dp[idx][static_cast<int>(m)].feasible() && !try_locate(layout, m, text[idx]) &&
                !try_locate(layout, other(m), text[idx])) {
                throw SymbolNotProducible(utf8::encode(text[idx]), "either");
            }
        }
    }

    if (!dp[0][static_cast<int>(start_mode)].feasible()) {
        // No toggles available (or usable) and some symbol needs the other mode.
        for (std::size_t i = 0; i < n; ++i) {
            if (!try_locate(layout, start_mode, text[i])) {
                throw SymbolNotProducible(utf8::encode(text[i]),
                                          std::string(to_string(start_mode)));
            }
        }
    }

    // Reconstruct, toggling as early as the optimum allows.
    ModePlan plan;
    Mode mode = start_mode;
    for (std::size_t i = 0; i < n; ++i) {
        const PlanCost best = dp[i][static_cast<int>(mode)];
        if (can_toggle) {
            if (const PlanCost via = direct(i, other(mode)); via.feasible() &&
                PlanCost{via.presses + 1, via.toggles + 1} == best) {
                plan.toggle_before.push_back(i);
                mode = other(mode);
            }
        }
    }
    plan.total_presses = dp[0][static_cast<int>(start_mode)].presses;
    return plan;
}

ModePlan plan_modes(std::string_view text_utf8, const Layout& layout, Mode start_mode) {
    return plan_modes(utf8::decode(text_utf8), layout, start_mode);
}

std::string format_tap_sequence(const TapSequence& taps) {
    std::string out = "mode=" + std::string(to_string(taps.start_mode));
    for (const TapEvent& event : taps.events) {
        out += ' ';
        if (event.kind == TapEvent::Kind::Commit) {
            out += 'C';
        } else {
            out += 'P';
            out += event.key;
        }
    }
    return out;
}

TapSequence parse_tap_sequence(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string token;
    if (!(in >> token) || !token.starts_with("mode=")) {
        throw ParseError("tap sequence must start with mode=<alpha|special>");
    }
    TapSequence taps;
    taps.start_mode = mode_from_string(token.substr(5));
    while (in >> token) {
        if (token == "C") {
            taps.events.push_back(TapEvent::commit());
        } else if (token.size() == 2 && token[0] == 'P') {
            taps.events.push_back(TapEvent::press(token[1]));
        } else {
            throw ParseError("bad tap token \"" + token + "\" (expected P<key> or C)");
        }
    }
    return taps;
}

}  // namespace taplab
