#include "taplab/reports.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "taplab/utf8.hpp"

namespace taplab {

namespace {

using Json = nlohmann::ordered_json;

std::string fixed(double value, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

// Left-aligned cell padding for the text tables.
std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.resize(width, ' ');
    return s;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

Json keystroke_json(const KeystrokeReport& r) {
    Json j;
    j["press_count"] = r.press_count;
    j["commit_count"] = r.commit_count;
    j["toggle_count"] = r.toggle_count;
    j["symbol_count"] = r.symbol_count;
    j["kspc_presses"] = r.kspc_presses();
    j["kspc_total"] = r.kspc_total();
    return j;
}

std::string keystroke_text(const KeystrokeReport& r) {
    std::ostringstream out;
    out << "presses : " << r.press_count << "\n"
        << "commits : " << r.commit_count << "\n"
        << "toggles : " << r.toggle_count << "\n"
        << "symbols : " << r.symbol_count << "\n"
        << "kspc (presses)          : " << fixed(r.kspc_presses()) << "\n"
        << "kspc (presses + commits): " << fixed(r.kspc_total()) << "\n";
    return out.str();
}

Json constraints_json(const Constraints& c) {
    Json j;
    switch (c.kind) {
        case Constraints::Kind::ContiguousAlphabet:
            j["kind"] = "contiguous";
            j["groups"] = c.groups;
            j["min_size"] = c.min_size;
            j["max_size"] = c.max_size;
            break;
        case Constraints::Kind::FreeAssignment:
            j["kind"] = "free";
            j["group_sizes"] = c.group_sizes;
            break;
        case Constraints::Kind::Constrained:
            j["kind"] = "constrained";
            j["group_sizes"] = c.group_sizes;
            j["preserve_alpha_order"] = c.preserve_alpha_order;
            break;
    }
    return j;
}

std::string unsupported(const char* report, Format format) {
    return std::string(report) + " has no " + std::string(to_string(format)) + " rendering";
}

}  // namespace

Format format_from_string(std::string_view name) {
    if (name == "json") return Format::Json;
    if (name == "text") return Format::Text;
    if (name == "csv") return Format::Csv;
    throw UnsupportedFormat("unknown format \"" + std::string(name) +
                            "\" (expected json, text or csv)");
}

std::string_view to_string(Format format) {
    switch (format) {
        case Format::Json: return "json";
        case Format::Text: return "text";
        case Format::Csv: return "csv";
    }
    return "?";
}

std::string format_report(const KeystrokeReport& report, Format format) {
    switch (format) {
        case Format::Json: return keystroke_json(report).dump(2) + "\n";
        case Format::Text: return keystroke_text(report);
        case Format::Csv: throw UnsupportedFormat(unsupported("keystroke report", format));
    }
    return {};
}

std::string format_report(const ModePlan& plan, Format format) {
    switch (format) {
        case Format::Json: {
            Json j;
            j["toggle_before"] = plan.toggle_before;
            j["total_presses"] = plan.total_presses;
            return j.dump(2) + "\n";
        }
        case Format::Text: {
            std::ostringstream out;
            out << "toggles at    : ";
            if (plan.toggle_before.empty()) {
                out << "(none)";
            } else {
                for (std::size_t i = 0; i < plan.toggle_before.size(); ++i) {
                    if (i > 0) out << ", ";
                    out << plan.toggle_before[i];
                }
            }
            out << "\ntotal presses : " << plan.total_presses << "\n";
            return out.str();
        }
        case Format::Csv: throw UnsupportedFormat(unsupported("mode plan", format));
    }
    return {};
}

std::string format_report(const ComparisonReport& report, Format format) {
    const bool with_sample = !report.rows.empty() && report.rows.front().sample.has_value();
    switch (format) {
        case Format::Json: {
            Json j;
            if (report.sample_text) j["sample_text"] = *report.sample_text;
            j["layouts"] = Json::array();
            for (const LayoutMetrics& row : report.rows) {
                Json r;
                r["name"] = row.name;
                r["expected_kspc"] = row.expected_kspc;
                r["delta_expected_kspc"] = row.delta_expected_kspc;
                r["vowels_at_position"] = row.vowels_at_position;
                if (row.sample) {
                    r["sample"] = keystroke_json(*row.sample);
                    r["delta_sample_presses"] = row.delta_sample_presses;
                }
                j["layouts"].push_back(std::move(r));
            }
            return j.dump(2) + "\n";
        }
        case Format::Text: {
            std::size_t name_width = 6;
            for (const LayoutMetrics& row : report.rows) {
                name_width = std::max(name_width, row.name.size());
            }
            std::ostringstream out;
            out << pad("layout", name_width) << "  " << pad("exp.kspc", 10) << pad("delta", 10)
                << "vowels@1..5";
            if (with_sample) out << "   " << pad("presses", 9) << pad("commits", 9) << "delta";
            out << "\n";
            for (const LayoutMetrics& row : report.rows) {
                out << pad(row.name, name_width) << "  " << pad(fixed(row.expected_kspc), 10)
                    << pad(fixed(row.delta_expected_kspc, 6), 10);
                std::string vowels;
                for (int v : row.vowels_at_position) {
                    if (!vowels.empty()) vowels += ' ';
                    vowels += std::to_string(v);
                }
                out << pad(vowels, 11);
                if (row.sample) {
                    out << "   " << pad(std::to_string(row.sample->press_count), 9)
                        << pad(std::to_string(row.sample->commit_count), 9)
                        << row.delta_sample_presses;
                }
                out << "\n";
            }
            if (report.sample_text) {
                out << "sample text: " << *report.sample_text << "\n";
            }
            return out.str();
        }
        case Format::Csv: {
            std::ostringstream out;
            out << "layout,expected_kspc,delta_expected_kspc,vowels_pos1,vowels_pos2,vowels_pos3,"
                   "vowels_pos4,vowels_pos5";
            if (with_sample) out << ",sample_presses,sample_commits,delta_sample_presses";
            out << "\n";
            for (const LayoutMetrics& row : report.rows) {
                out << csv_quote(row.name) << ',' << fixed(row.expected_kspc, 9) << ','
                    << fixed(row.delta_expected_kspc, 9);
                for (int v : row.vowels_at_position) {
                    out << ',' << v;
                }
                if (row.sample) {
                    out << ',' << row.sample->press_count << ',' << row.sample->commit_count << ','
                        << row.delta_sample_presses;
                }
                out << "\n";
            }
            return out.str();
        }
    }
    return {};
}

std::string format_report(const FrequencyTable& table, Format format) {
    switch (format) {
        case Format::Json: return serialize_frequency(table);
        case Format::Text: {
            // Most frequent first; alphabetical among ties.
            std::vector<std::pair<Symbol, double>> rows(table.probabilities.begin(),
                                                        table.probabilities.end());
            std::stable_sort(rows.begin(), rows.end(),
                             [](const auto& a, const auto& b) { return a.second > b.second; });
            std::ostringstream out;
            out << pad("symbol", 8) << pad("probability", 13) << "count\n";
            for (const auto& [symbol, p] : rows) {
                std::string count = "-";
                if (const auto it = table.counts.find(symbol); it != table.counts.end()) {
                    count = std::to_string(it->second);
                }
                out << pad(utf8::encode(symbol), 8) << pad(fixed(p), 13) << count << "\n";
            }
            out << "total symbols: " << table.total_count << ", dropped: " << table.dropped
                << "\n";
            return out.str();
        }
        case Format::Csv: {
            std::ostringstream out;
            out << "symbol,count,probability\n";
            for (const auto& [symbol, p] : table.probabilities) {
                std::string count = "0";
                if (const auto it = table.counts.find(symbol); it != table.counts.end()) {
                    count = std::to_string(it->second);
                }
                out << csv_quote(utf8::encode(symbol)) << ',' << count << ',' << fixed(p, 9)
                    << "\n";
            }
            return out.str();
        }
    }
    return {};
}

std::string format_report(const Layout& layout, Format format) {
    switch (format) {
        case Format::Json: return serialize_layout(layout);
        case Format::Text: {
            std::ostringstream out;
            out << "layout  : " << layout.name << "\n"
                << "mode key: "
                << (layout.mode_key ? std::string(1, *layout.mode_key) : std::string("(none)"))
                << "\n";
            for (const Key& key : layout.keys) {
                out << "  key " << key.id << "  alpha: " << pad(utf8::encode(key.alpha), 8)
                    << "special: " << utf8::encode(key.special) << "\n";
            }
            return out.str();
        }
        case Format::Csv: throw UnsupportedFormat(unsupported("layout", format));
    }
    return {};
}

std::string format_report(const OptimizerResult& result, Format format) {
    switch (format) {
        case Format::Json: {
            Json j;
            j["layout"] = Json::parse(serialize_layout(result.layout));
            j["expected_cost"] = result.expected_cost;
            j["evaluations"] = result.evaluations;
            if (result.seed) {
                j["seed"] = *result.seed;
            } else {
                j["seed"] = nullptr;
            }
            j["constraints"] = constraints_json(result.constraints);
            return j.dump(2) + "\n";
        }
        case Format::Text: {
            std::ostringstream out;
            out << "expected cost: " << fixed(result.expected_cost) << " taps/letter\n"
                << "evaluations  : " << result.evaluations << "\n";
            if (result.seed) {
                out << "seed         : " << *result.seed << "\n";
            }
            out << format_report(result.layout, Format::Text);
            return out.str();
        }
        case Format::Csv: throw UnsupportedFormat(unsupported("optimizer result", format));
    }
    return {};
}

std::string keystroke_report_to_json(const KeystrokeReport& report) {
    return keystroke_json(report).dump(2) + "\n";
}

KeystrokeReport keystroke_report_from_json(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("keystroke report is not valid JSON: ") + e.what());
    }
    KeystrokeReport report;
    report.press_count = j.at("press_count").get<std::int64_t>();
    report.commit_count = j.at("commit_count").get<std::int64_t>();
    report.toggle_count = j.at("toggle_count").get<std::int64_t>();
    report.symbol_count = j.at("symbol_count").get<std::int64_t>();
    return report;
}

std::string optimizer_sidecar_json(const OptimizerResult& result) {
    Json j;
    j["expected_cost"] = result.expected_cost;
    j["evaluations"] = result.evaluations;
    if (result.seed) {
        j["seed"] = *result.seed;
    } else {
        j["seed"] = nullptr;
    }
    j["constraints"] = constraints_json(result.constraints);
    return j.dump(2) + "\n";
}

}  // namespace taplab
