#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "taplab/layout.hpp"

namespace taplab {

struct TapEvent {
    enum class Kind { Press, Commit };

    Kind kind = Kind::Press;
    char key = 0;  // meaningful for Press only

    static TapEvent press(char key) { return {Kind::Press, key}; }
    static TapEvent commit() { return {Kind::Commit, 0}; }
    bool operator==(const TapEvent&) const = default;
};

struct TapSequence {
    Mode start_mode = Mode::Alpha;
    std::vector<TapEvent> events;

    bool operator==(const TapSequence&) const = default;
};

// How two consecutive symbols on the same key get separated. A timeout
// commit is a timing event (counted, but not a press); a next-key commit
// is a real press of a designated key with empty cycles in both modes.
struct CommitStrategy {
    enum class Kind { Timeout, NextKey };

    Kind kind = Kind::Timeout;
    char commit_key = '*';

    static CommitStrategy timeout() { return {Kind::Timeout, 0}; }
    static CommitStrategy next_key(char key) { return {Kind::NextKey, key}; }
};

// Toggle placement for a text: mode-key presses inserted before the given
// 0-based text indices. total_presses = toggles + per-symbol taps.
struct ModePlan {
    std::vector<std::size_t> toggle_before;  // sorted, no duplicates
    std::int64_t total_presses = 0;

    bool operator==(const ModePlan&) const = default;
};

struct KeystrokeReport {
    std::int64_t press_count = 0;
    std::int64_t commit_count = 0;
    std::int64_t toggle_count = 0;
    std::int64_t symbol_count = 0;

    double kspc_presses() const {
        return symbol_count == 0 ? 0.0 : static_cast<double>(press_count) / symbol_count;
    }
    double kspc_total() const {
        return symbol_count == 0 ? 0.0
                                 : static_cast<double>(press_count + commit_count) / symbol_count;
    }
    bool operator==(const KeystrokeReport&) const = default;
};

struct EncodeResult {
    TapSequence taps;
    KeystrokeReport report;
};

// Mode in effect for each text index, given the start mode and a plan
// (no plan means no toggles). Throws InvalidPlan for out-of-range or
// duplicate toggle indices, or toggles on a layout without a mode key.
std::vector<Mode> mode_trajectory(std::size_t text_length, Mode start_mode, const ModePlan* plan,
                                  bool has_mode_key);

// Turns text into the tap sequence that reproduces it, inserting commits
// between consecutive symbols that share a key and mode. Press count is
// taps + toggles (+ commit-key presses under NextKey); timeout commits
// are counted separately and are not presses.
EncodeResult encode(std::u32string_view text, const Layout& layout,
                    const CommitStrategy& strategy = {}, Mode start_mode = Mode::Alpha,
                    const ModePlan* plan = nullptr);
EncodeResult encode(std::string_view text_utf8, const Layout& layout,
                    const CommitStrategy& strategy = {}, Mode start_mode = Mode::Alpha,
                    const ModePlan* plan = nullptr);

// Replays a tap sequence left to right:
//   - pressing the pending key again increments its tap count;
//   - pressing any other key finalizes the pending symbol first;
//   - the mode key then toggles the mode;
//   - a key whose cycle has length 1 finalizes immediately;
//   - Commit (or end of sequence) finalizes the pending symbol;
//   - tap count t on a cycle of length L selects element ((t-1) mod L) + 1.
// Pressing a key with no cycle in the current mode finalizes a pending
// symbol (acting as a commit) but is an error when nothing is pending.
std::u32string decode_symbols(const TapSequence& taps, const Layout& layout);
std::string decode(const TapSequence& taps, const Layout& layout);

// Minimum-press toggle placement via dynamic programming over
// (text index, mode). Ties prefer fewer toggles, then earlier toggles.
ModePlan plan_modes(std::u32string_view text, const Layout& layout, Mode start_mode = Mode::Alpha);
ModePlan plan_modes(std::string_view text_utf8, const Layout& layout,
                    Mode start_mode = Mode::Alpha);

// Textual form: "mode=<alpha|special> P<key> ... C ...", whitespace-separated.
std::string format_tap_sequence(const TapSequence& taps);
TapSequence parse_tap_sequence(std::string_view text);

}  // namespace taplab
