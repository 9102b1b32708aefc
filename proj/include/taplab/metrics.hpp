#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "taplab/frequency.hpp"
#include "taplab/layout.hpp"
#include "taplab/tap_engine.hpp"

namespace taplab {

// Exact charges every symbol its cycle position. FlatDigit(k) charges a
// flat k taps per digit instead (letters keep exact positions, commits
// and toggles are unchanged) — the accounting that treats every digit as
// a worst-case four-tap entry.
struct CostModel {
    enum class Kind { Exact, FlatDigit };

    Kind kind = Kind::Exact;
    int taps_per_digit = 4;

    static CostModel exact() { return {Kind::Exact, 0}; }
    static CostModel flat_digit(int taps) { return {Kind::FlatDigit, taps}; }
};

// Probability-weighted taps per symbol: sum over symbols of
// freq(s) * locate(layout, mode, s).taps. Every table symbol must be
// producible in the given mode.
double expected_kspc(const Layout& layout, const FrequencyTable& freq, Mode mode);

// Keystroke accounting for a concrete text under a cost model.
KeystrokeReport count_keystrokes(std::u32string_view text, const Layout& layout,
                                 const CostModel& model = {}, const CommitStrategy& strategy = {},
                                 Mode start_mode = Mode::Alpha, const ModePlan* plan = nullptr);
KeystrokeReport count_keystrokes(std::string_view text_utf8, const Layout& layout,
                                 const CostModel& model = {}, const CommitStrategy& strategy = {},
                                 Mode start_mode = Mode::Alpha, const ModePlan* plan = nullptr);

// One comparison row. Deltas are against the first layout in the report.
struct LayoutMetrics {
    std::string name;
    double expected_kspc = 0.0;
    std::array<int, 5> vowels_at_position{};  // positions 1..5
    std::optional<KeystrokeReport> sample;
    double delta_expected_kspc = 0.0;
    std::int64_t delta_sample_presses = 0;
};

struct ComparisonReport {
    std::vector<LayoutMetrics> rows;
    std::optional<std::string> sample_text;
};

// Side-by-side layout comparison: expected KSPC under `freq` (alpha mode),
// vowel counts per position, and exact-model keystrokes on the optional
// sample text.
ComparisonReport compare(const std::vector<Layout>& layouts, const FrequencyTable& freq,
                         const std::optional<std::string>& sample_text = std::nullopt);

}  // namespace taplab
