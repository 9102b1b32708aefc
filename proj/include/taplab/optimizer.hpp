#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "taplab/frequency.hpp"
#include "taplab/layout.hpp"

namespace taplab {

// The layout families searched. ContiguousAlphabet cuts a..z in order
// into consecutive groups (the baseline keypad family); FreeAssignment
// allows any letter-to-slot mapping with the given group sizes;
// Constrained optionally keeps letters alphabetical within each key.
struct Constraints {
    enum class Kind { ContiguousAlphabet, FreeAssignment, Constrained };

    Kind kind = Kind::FreeAssignment;
    int groups = 8;    // ContiguousAlphabet
    int min_size = 1;  // ContiguousAlphabet
    int max_size = 5;  // ContiguousAlphabet
    std::vector<int> group_sizes;  // FreeAssignment / Constrained
    bool preserve_alpha_order = false;  // Constrained

    static Constraints contiguous(int groups, int min_size, int max_size) {
        Constraints c;
        c.kind = Kind::ContiguousAlphabet;
        c.groups = groups;
        c.min_size = min_size;
        c.max_size = max_size;
        return c;
    }
    static Constraints free_assignment(std::vector<int> sizes) {
        Constraints c;
        c.kind = Kind::FreeAssignment;
        c.group_sizes = std::move(sizes);
        return c;
    }
    static Constraints constrained(std::vector<int> sizes, bool preserve_alpha_order) {
        Constraints c;
        c.kind = Kind::Constrained;
        c.group_sizes = std::move(sizes);
        c.preserve_alpha_order = preserve_alpha_order;
        return c;
    }
};

// Both builtin layouts use this shape: six keys of three letters, two of four.
inline const std::vector<int> kDefaultGroupSizes = {3, 3, 3, 3, 3, 3, 4, 4};

struct AnnealSchedule {
    double initial_temp = 0.25;
    double cooling = 0.999;
    std::uint64_t iterations = 20000;
};

struct OptimizerResult {
    Layout layout;                    // letters on keys 2..9, digits appended
    std::vector<Cycle> groups;        // the raw letter assignment, position = index + 1
    double expected_cost = 0.0;       // assignment_cost(groups, freq)
    std::uint64_t evaluations = 0;    // cost evaluations performed by the search
    std::optional<std::uint64_t> seed;
    Constraints constraints;
};

// Probability-weighted tap cost of a letter assignment:
// sum over letters of freq(letter) * (1-based position within its group).
// Every table letter must be assigned exactly once; assigned letters
// without a table entry weigh zero.
double assignment_cost(const std::vector<Cycle>& groups, const FrequencyTable& freq);

// Exact minimum over contiguous alphabetical partitions of a..z into
// `groups` groups of size [min_size, max_size], by dynamic programming
// over (letters consumed, groups used). Cost ties pick the
// lexicographically smallest size sequence.
OptimizerResult optimize_contiguous(const FrequencyTable& freq, int groups, int min_size,
                                    int max_size);

// Exact minimum over unrestricted assignments with the given group sizes:
// letters sorted by descending frequency fill all position-1 slots, then
// position-2 slots, and so on (rearrangement argument).
OptimizerResult optimize_free(const FrequencyTable& freq, const std::vector<int>& group_sizes);

// Seeded simulated annealing over single letter swaps, for FreeAssignment
// and Constrained families. Swaps breaking the within-key alphabetical
// order are never applied when that constraint is set. Returns the best
// assignment seen; identical inputs give identical results. Randomness
// comes from std::mt19937_64 consumed raw, so runs are reproducible.
OptimizerResult anneal(const FrequencyTable& freq, const Constraints& constraints,
                       std::uint64_t seed, const AnnealSchedule& schedule = {});

// Materializes a letter assignment (at most 8 groups) as a full keypad
// layout: groups land on keys 2..9 in order and each key's digit is
// appended to its alpha cycle; when a 5-letter group leaves no room, the
// digit moves to the '*' cycle. Remaining keys match the builtins.
Layout assignment_to_layout(const std::vector<Cycle>& groups, std::string name);

}  // namespace taplab
