#pragma once

#include <string>
#include <string_view>

#include "taplab/frequency.hpp"
#include "taplab/layout.hpp"
#include "taplab/metrics.hpp"
#include "taplab/optimizer.hpp"
#include "taplab/tap_engine.hpp"

namespace taplab {

enum class Format { Json, Text, Csv };

// Parses "json" | "text" | "csv"; throws UnsupportedFormat otherwise.
Format format_from_string(std::string_view name);
std::string_view to_string(Format format);

// Renderers. JSON output has a fixed key order, so identical values give
// byte-identical bytes; text is an aligned human-readable block; csv
// exists only for tabular reports and throws UnsupportedFormat elsewhere.
std::string format_report(const KeystrokeReport& report, Format format);
std::string format_report(const ModePlan& plan, Format format);
std::string format_report(const ComparisonReport& report, Format format);
std::string format_report(const FrequencyTable& table, Format format);
std::string format_report(const Layout& layout, Format format);
std::string format_report(const OptimizerResult& result, Format format);

// JSON value converters used by the CLI to build composite outputs.
// keystroke_report_from_json re-reads what keystroke_report_to_json wrote.
std::string keystroke_report_to_json(const KeystrokeReport& report);
KeystrokeReport keystroke_report_from_json(const std::string& json_text);

// The optimizer sidecar: expected cost, evaluations, seed and the
// constraints that produced the layout, without the layout itself.
std::string optimizer_sidecar_json(const OptimizerResult& result);

}  // namespace taplab
