#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>

#include "taplab/layout.hpp"

namespace taplab {

// A symbol -> probability distribution, with the raw counts it came from
// (when known) so tables can be merged associatively.
struct FrequencyTable {
    std::map<Symbol, std::uint64_t> counts;  // empty when loaded from probabilities only
    std::map<Symbol, double> probabilities;  // non-negative, sums to 1 within 1e-9
    std::uint64_t total_count = 0;
    std::uint64_t dropped = 0;  // symbols discarded during normalization

    double probability(Symbol s) const;
    bool operator==(const FrequencyTable&) const = default;
};

struct NormalizeOptions {
    enum class Policy { Drop, Error };

    bool lowercase = true;        // ASCII 'A'..'Z' -> 'a'..'z'
    bool include_digits = false;  // keep '0'..'9' beside the letters
    Policy policy = Policy::Drop;
};

// Counts letters (and optionally digits) in a UTF-8 corpus and normalizes
// the counts into probabilities. Whitespace is always skipped; any other
// out-of-alphabet symbol is dropped (and counted) or raises
// UnsupportedSymbol, depending on the policy. Throws EmptyCorpus when
// nothing survives normalization.
FrequencyTable build_frequency(std::string_view corpus_utf8, const NormalizeOptions& options = {});
FrequencyTable build_frequency(std::istream& corpus, const NormalizeOptions& options = {});

// Builds a table directly from counts (used for merging and tests).
FrequencyTable frequency_from_counts(std::map<Symbol, std::uint64_t> counts,
                                     std::uint64_t dropped = 0);

// Associative, commutative merge of two count-backed tables.
FrequencyTable merge(const FrequencyTable& a, const FrequencyTable& b);

// The uniform distribution over the 26 lowercase letters.
FrequencyTable uniform_letters();

// Throws ValidationError when the table invariants do not hold.
void validate_frequency(const FrequencyTable& table);

// JSON persistence: {"counts": {sym: int, ...}, "probabilities": {sym: float, ...}}.
// Counts may be absent; probabilities are rederived from counts when present.
std::string serialize_frequency(const FrequencyTable& table);
FrequencyTable parse_frequency(const std::string& json_text);

}  // namespace taplab
