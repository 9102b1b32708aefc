#include "taplab/metrics.hpp"

#include "taplab/utf8.hpp"

namespace taplab {

double expected_kspc(const Layout& layout, const FrequencyTable& freq, Mode mode) {
    double sum = 0.0;
    for (const auto& [symbol, p] : freq.probabilities) {
        sum += p * locate(layout, mode, symbol).taps;
    }
    return sum;
}

KeystrokeReport count_keystrokes(std::u32string_view text, const Layout& layout,
                                 const CostModel& model, const CommitStrategy& strategy,
                                 Mode start_mode, const ModePlan* plan) {
    KeystrokeReport report = encode(text, layout, strategy, start_mode, plan).report;
    if (model.kind == CostModel::Kind::FlatDigit) {
        if (model.taps_per_digit < 1) {
            throw Error("FlatDigit taps per digit must be positive");
        }
        const std::vector<Mode> modes =
            mode_trajectory(text.size(), start_mode, plan, layout.mode_key.has_value());
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (is_digit_symbol(text[i])) {
                report.press_count += model.taps_per_digit - locate(layout, modes[i], text[i]).taps;
            }
        }
    }
    return report;
}

KeystrokeReport count_keystrokes(std::string_view text_utf8, const Layout& layout,
                                 const CostModel& model, const CommitStrategy& strategy,
                                 Mode start_mode, const ModePlan* plan) {
    return count_keystrokes(utf8::decode(text_utf8), layout, model, strategy, start_mode, plan);
}

ComparisonReport compare(const std::vector<Layout>& layouts, const FrequencyTable& freq,
                         const std::optional<std::string>& sample_text) {
    if (layouts.size() < 2) {
        throw Error("compare needs at least two layouts");
    }
    ComparisonReport report;
    report.sample_text = sample_text;
    for (const Layout& layout : layouts) {
        LayoutMetrics row;
        row.name = layout.name;
        row.expected_kspc = expected_kspc(layout, freq, Mode::Alpha);
        for (int pos = 1; pos <= 5; ++pos) {
            row.vowels_at_position[static_cast<std::size_t>(pos) - 1] =
                vowel_count_at_position(layout, pos);
        }
        if (sample_text) {
            row.sample = count_keystrokes(*sample_text, layout, CostModel::exact());
        }
        report.rows.push_back(std::move(row));
    }
    const LayoutMetrics& first = report.rows.front();
    for (LayoutMetrics& row : report.rows) {
        row.delta_expected_kspc = row.expected_kspc - first.expected_kspc;
        if (row.sample && first.sample) {
            row.delta_sample_presses = row.sample->press_count - first.sample->press_count;
        }
    }
    return report;
}

}  // namespace taplab
