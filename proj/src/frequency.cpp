#include "taplab/frequency.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "taplab/utf8.hpp"

namespace taplab {

namespace {

bool is_ascii_space(Symbol s) {
    return s == U' ' || s == U'\t' || s == U'\n' || s == U'\r' || s == U'\f' || s == U'\v';
}

void normalize(FrequencyTable& table) {
    table.total_count = 0;
    for (const auto& [symbol, count] : table.counts) {
        (void)symbol;
        table.total_count += count;
    }
    if (table.total_count == 0) {
        throw EmptyCorpus();
    }
    table.probabilities.clear();
    for (const auto& [symbol, count] : table.counts) {
        table.probabilities[symbol] =
            static_cast<double>(count) / static_cast<double>(table.total_count);
    }
}

}  // namespace

double FrequencyTable::probability(Symbol s) const {
    const auto it = probabilities.find(s);
    return it == probabilities.end() ? 0.0 : it->second;
}

FrequencyTable build_frequency(std::string_view corpus_utf8, const NormalizeOptions& options) {
    FrequencyTable table;
    for (Symbol s : utf8::decode(corpus_utf8)) {
        if (options.lowercase && s >= U'A' && s <= U'Z') {
            s = s - U'A' + U'a';
        }
        if (is_ascii_space(s)) {
            continue;
        }
        const bool kept = is_letter(s) || (options.include_digits && is_digit_symbol(s));
        if (!kept) {
            if (options.policy == NormalizeOptions::Policy::Error) {
                throw UnsupportedSymbol(utf8::encode(s));
            }
            ++table.dropped;
            continue;
        }
        ++table.counts[s];
    }
    normalize(table);
    return table;
}

FrequencyTable build_frequency(std::istream& corpus, const NormalizeOptions& options) {
    std::ostringstream buffer;
    buffer << corpus.rdbuf();
    return build_frequency(buffer.str(), options);
}

FrequencyTable frequency_from_counts(std::map<Symbol, std::uint64_t> counts,
                                     std::uint64_t dropped) {
    FrequencyTable table;
    table.counts = std::move(counts);
    table.dropped = dropped;
    normalize(table);
    return table;
}

FrequencyTable merge(const FrequencyTable& a, const FrequencyTable& b) {
    if (a.counts.empty() || b.counts.empty()) {
        throw Error("only count-backed frequency tables can be merged");
    }
    std::map<Symbol, std::uint64_t> counts = a.counts;
    for (const auto& [symbol, count] : b.counts) {
        counts[symbol] += count;
    }
    return frequency_from_counts(std::move(counts), a.dropped + b.dropped);
}

FrequencyTable uniform_letters() {
    std::map<Symbol, std::uint64_t> counts;
    for (Symbol s = U'a'; s <= U'z'; ++s) {
        counts[s] = 1;
    }
    return frequency_from_counts(std::move(counts));
}

void validate_frequency(const FrequencyTable& table) {
    std::vector<std::string> violations;
    if (table.probabilities.empty()) {
        violations.push_back("frequency table has no entries");
    }
    double sum = 0.0;
    for (const auto& [symbol, p] : table.probabilities) {
        if (p < 0.0 || !std::isfinite(p)) {
            violations.push_back("probability of '" + utf8::encode(symbol) +
                                 "' is not a finite non-negative number");
        }
        sum += p;
    }
    if (!table.probabilities.empty() && std::abs(sum - 1.0) > 1e-9) {
        violations.push_back("probabilities sum to " + std::to_string(sum) +
                             ", expected 1 within 1e-9");
    }
    if (!table.counts.empty()) {
        std::uint64_t total = 0;
        for (const auto& [symbol, count] : table.counts) {
            (void)symbol;
            total += count;
        }
        if (total != table.total_count) {
            violations.push_back("total_count does not match the sum of counts");
        }
    }
    if (!violations.empty()) {
        throw ValidationError(std::move(violations));
    }
}

std::string serialize_frequency(const FrequencyTable& table) {
    nlohmann::ordered_json doc;
    doc["counts"] = nlohmann::ordered_json::object();
    for (const auto& [symbol, count] : table.counts) {
        doc["counts"][utf8::encode(symbol)] = count;
    }
    doc["probabilities"] = nlohmann::ordered_json::object();
    for (const auto& [symbol, p] : table.probabilities) {
        doc["probabilities"][utf8::encode(symbol)] = p;
    }
    if (table.dropped > 0) {
        doc["dropped"] = table.dropped;
    }
    return doc.dump(2) + "\n";
}

FrequencyTable parse_frequency(const std::string& json_text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("frequency document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("frequency document must be a JSON object");
    }
    for (const auto& [field, value] : doc.items()) {
        (void)value;
        if (field != "counts" && field != "probabilities" && field != "dropped") {
            throw ParseError("unknown field \"" + field + "\" in frequency document");
        }
    }

    FrequencyTable table;
    if (doc.contains("dropped")) {
        if (!doc["dropped"].is_number_unsigned()) {
            throw ParseError("\"dropped\" must be a non-negative integer");
        }
        table.dropped = doc["dropped"].get<std::uint64_t>();
    }
    if (doc.contains("counts") && !doc["counts"].empty()) {
        if (!doc["counts"].is_object()) {
            throw ParseError("\"counts\" must be an object");
        }
        for (const auto& [symbol, count] : doc["counts"].items()) {
            if (!count.is_number_unsigned()) {
                throw ParseError("count of '" + symbol + "' must be a non-negative integer");
            }
            table.counts[utf8::decode_single(symbol)] = count.get<std::uint64_t>();
        }
        normalize(table);
    } else if (doc.contains("probabilities")) {
        if (!doc["probabilities"].is_object()) {
            throw ParseError("\"probabilities\" must be an object");
        }
        for (const auto& [symbol, p] : doc["probabilities"].items()) {
            if (!p.is_number()) {
                throw ParseError("probability of '" + symbol + "' must be a number");
            }
            table.probabilities[utf8::decode_single(symbol)] = p.get<double>();
        }
    } else {
        throw ParseError("frequency document needs \"counts\" or \"probabilities\"");
    }
    validate_frequency(table);
    return table;
}

}  // namespace taplab
