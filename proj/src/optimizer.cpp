#include "taplab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "taplab/utf8.hpp"

namespace taplab {

namespace {

constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max() / 4;
constexpr double kProbabilityScale = 1099511627776.0;  // 2^40, for count-less tables

// Integer letter weights keep search arithmetic exact: raw counts when the
// table has them, scaled probabilities otherwise.
std::map<Symbol, std::int64_t> integer_weights(const FrequencyTable& freq) {
    std::map<Symbol, std::int64_t> weights;
    for (const auto& [symbol, p] : freq.probabilities) {
        if (!is_letter(symbol)) {
            throw Error("frequency table contains non-letter symbol '" + utf8::encode(symbol) +
                        "'; the optimizer works on letter tables");
        }
        if (!freq.counts.empty()) {
            weights[symbol] = static_cast<std::int64_t>(freq.counts.at(symbol));
        } else {
            weights[symbol] = std::llround(p * kProbabilityScale);
        }
    }
    return weights;
}

void check_group_sizes(const std::vector<int>& sizes, std::size_t letter_count) {
    std::int64_t total = 0;
    for (int size : sizes) {
        if (size < 1 || size > 5) {
            throw InfeasibleConstraints("group size " + std::to_string(size) +
                                        " is outside [1, 5]");
        }
        total += size;
    }
    if (total != static_cast<std::int64_t>(letter_count)) {
        throw SizeMismatch("group sizes sum to " + std::to_string(total) + " but the table has " +
                           std::to_string(letter_count) + " letters");
    }
}

// Slot order used by the greedy fill and the round-robin start: all
// position-1 slots in group order, then all position-2 slots, ...
struct Slot {
    int group = 0;
    int position = 0;  // 1-based
};

std::vector<Slot> slot_order(const std::vector<int>& sizes) {
    std::vector<Slot> slots;
    const int max_size = *std::max_element(sizes.begin(), sizes.end());
    for (int pos = 1; pos <= max_size; ++pos) {
        for (std::size_t g = 0; g < sizes.size(); ++g) {
            if (sizes[g] >= pos) {
                slots.push_back(Slot{static_cast<int>(g), pos});
            }
        }
    }
    return slots;
}

std::vector<Cycle> groups_from_slots(const std::vector<int>& sizes, const std::vector<Slot>& slots,
                                     const std::vector<Symbol>& slot_letters) {
    std::vector<Cycle> groups(sizes.size());
    for (std::size_t g = 0; g < sizes.size(); ++g) {
        groups[g].resize(static_cast<std::size_t>(sizes[g]));
    }
    for (std::size_t k = 0; k < slots.size(); ++k) {
        groups[static_cast<std::size_t>(slots[k].group)]
              [static_cast<std::size_t>(slots[k].position) - 1] = slot_letters[k];
    }
    return groups;
}

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

}  // namespace

double assignment_cost(const std::vector<Cycle>& groups, const FrequencyTable& freq) {
    std::map<Symbol, int> position;
    for (const Cycle& group : groups) {
        for (std::size_t i = 0; i < group.size(); ++i) {
            if (!position.emplace(group[i], static_cast<int>(i) + 1).second) {
                throw IncompleteAssignment("letter '" + utf8::encode(group[i]) +
                                           "' is assigned more than once");
            }
        }
    }
    double cost = 0.0;
    for (const auto& [symbol, p] : freq.probabilities) {
        const auto it = position.find(symbol);
        if (it == position.end()) {
            throw IncompleteAssignment("letter '" + utf8::encode(symbol) +
                                       "' from the frequency table is unassigned");
        }
        cost += p * it->second;
    }
    return cost;
}

OptimizerResult optimize_contiguous(const FrequencyTable& freq, int groups, int min_size,
                                    int max_size) {
    if (groups < 1 || min_size < 1 || max_size > 5 || min_size > max_size) {
        throw InfeasibleConstraints("contiguous constraints need groups >= 1 and 1 <= min_size <= "
                                    "max_size <= 5");
    }
    constexpr int kLetters = 26;
    if (static_cast<std::int64_t>(groups) * min_size > kLetters ||
        static_cast<std::int64_t>(groups) * max_size < kLetters) {
        throw InfeasibleConstraints("no composition of 26 letters into " + std::to_string(groups) +
                                    " groups of size [" + std::to_string(min_size) + ", " +
                                    std::to_string(max_size) + "] exists");
    }

    const auto weights = integer_weights(freq);
    std::array<std::int64_t, kLetters> w{};
    for (const auto& [symbol, weight] : weights) {
        w[symbol - U'a'] = weight;
    }

    const auto group_cost = [&](int start, int len) {
        std::int64_t cost = 0;
        for (int j = 0; j < len; ++j) {
            cost += w[start + j] * (j + 1);
        }
        return cost;
    };

    // dp[i][g]: minimum cost of splitting letters[i..26) into exactly g groups.
    std::vector<std::vector<std::int64_t>> dp(
        kLetters + 1, std::vector<std::int64_t>(static_cast<std::size_t>(groups) + 1,
                                                kUnreachable));
    dp[kLetters][0] = 0;
    std::uint64_t evaluations = 0;
    for (int i = kLetters - 1; i >= 0; --i) {
        for (int g = 1; g <= groups; ++g) {
            for (int len = min_size; len <= max_size && i + len <= kLetters; ++len) {
                if (dp[i + len][g - 1] == kUnreachable) continue;
                ++evaluations;
                dp[i][g] = std::min(dp[i][g], group_cost(i, len) + dp[i + len][g - 1]);
            }
        }
    }

    // Forward reconstruction; taking the smallest feasible length first
    // yields the lexicographically smallest size sequence among ties.
    std::vector<Cycle> result_groups;
    int at = 0;
    for (int g = groups; g >= 1; --g) {
        for (int len = min_size; len <= max_size && at + len <= kLetters; ++len) {
            if (dp[at + len][g - 1] == kUnreachable) continue;
            if (group_cost(at, len) + dp[at + len][g - 1] == dp[at][g]) {
                Cycle group;
                for (int j = 0; j < len; ++j) {
                    group.push_back(static_cast<Symbol>(U'a' + at + j));
                }
                result_groups.push_back(std::move(group));
                at += len;
                break;
            }
        }
    }

    OptimizerResult result;
    result.groups = std::move(result_groups);
    result.layout = assignment_to_layout(result.groups, "opt-contiguous");
    result.expected_cost = assignment_cost(result.groups, freq);
    result.evaluations = evaluations;
    result.constraints = Constraints::contiguous(groups, min_size, max_size);
    return result;
}

OptimizerResult optimize_free(const FrequencyTable& freq, const std::vector<int>& group_sizes) {
    const auto weights = integer_weights(freq);
    check_group_sizes(group_sizes, weights.size());

    std::vector<std::pair<Symbol, std::int64_t>> letters(weights.begin(), weights.end());
    std::sort(letters.begin(), letters.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });

    const std::vector<Slot> slots = slot_order(group_sizes);
    std::vector<Symbol> slot_letters(slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k) {
        slot_letters[k] = letters[k].first;
    }

    OptimizerResult result;
    result.groups = groups_from_slots(group_sizes, slots, slot_letters);
    result.layout = assignment_to_layout(result.groups, "opt-free");
    result.expected_cost = assignment_cost(result.groups, freq);
    result.evaluations = 1;
    result.constraints = Constraints::free_assignment(group_sizes);
    return result;
}

OptimizerResult anneal(const FrequencyTable& freq, const Constraints& constraints,
                       std::uint64_t seed, const AnnealSchedule& schedule) {
    if (constraints.kind == Constraints::Kind::ContiguousAlphabet) {
        throw InfeasibleConstraints(
            "annealing searches free or order-constrained assignments; use the exact contiguous "
            "optimizer for that family");
    }
    if (schedule.iterations < 1) {
        throw InfeasibleConstraints("annealing needs at least one iteration");
    }
    const bool preserve_order =
        constraints.kind == Constraints::Kind::Constrained && constraints.preserve_alpha_order;

    const auto weights = integer_weights(freq);
    check_group_sizes(constraints.group_sizes, weights.size());
    const std::vector<int>& sizes = constraints.group_sizes;

    const std::vector<Slot> slots = slot_order(sizes);
    const std::size_t slot_count = slots.size();

    // slot_of[g][p-1] -> slot index, for neighbour lookups.
    std::vector<std::vector<std::size_t>> slot_of(sizes.size());
    for (std::size_t g = 0; g < sizes.size(); ++g) {
        slot_of[g].resize(static_cast<std::size_t>(sizes[g]));
    }
    for (std::size_t k = 0; k < slot_count; ++k) {
        slot_of[static_cast<std::size_t>(slots[k].group)]
               [static_cast<std::size_t>(slots[k].position) - 1] = k;
    }

    // Alphabetical round-robin start: a..z dealt across the position-1
    // slots first, then position-2, and so on.
    std::vector<Symbol> state(slot_count);
    {
        std::size_t k = 0;
        for (const auto& [symbol, weight] : weights) {
            (void)weight;
            state[k++] = symbol;
        }
    }

    std::int64_t total_weight = 0;
    for (const auto& [symbol, weight] : weights) {
        (void)symbol;
        total_weight += weight;
    }
    const auto cost_of = [&](const std::vector<Symbol>& s) {
        std::int64_t cost = 0;
        for (std::size_t k = 0; k < slot_count; ++k) {
            cost += weights.at(s[k]) * slots[k].position;
        }
        return cost;
    };

    const auto keeps_alpha_order = [&](std::size_t i, std::size_t j) {
        if (slots[i].group == slots[j].group) {
            return false;  // an in-key swap always breaks the sorted order
        }
        const auto fits = [&](std::size_t slot, Symbol incoming) {
            const auto g = static_cast<std::size_t>(slots[slot].group);
            const auto p = static_cast<std::size_t>(slots[slot].position);
            if (p > 1 && state[slot_of[g][p - 2]] >= incoming) return false;
            if (p < slot_of[g].size() && state[slot_of[g][p]] <= incoming) return false;
            return true;
        };
        return fits(i, state[j]) && fits(j, state[i]);
    };

    std::mt19937_64 rng(seed);
    std::int64_t current_cost = cost_of(state);
    std::vector<Symbol> best_state = state;
    std::int64_t best_cost = current_cost;
    std::uint64_t evaluations = 1;
    double temperature = schedule.initial_temp;

    for (std::uint64_t iter = 0; iter < schedule.iterations; ++iter, temperature *= schedule.cooling) {
        const std::size_t i = draw_below(rng, slot_count);
        std::size_t j = draw_below(rng, slot_count - 1);
        if (j >= i) ++j;
        if (preserve_order && !keeps_alpha_order(i, j)) {
            continue;
        }
        const std::int64_t delta = (weights.at(state[i]) - weights.at(state[j])) *
                                   (slots[j].position - slots[i].position);
        ++evaluations;
        bool accept = delta <= 0;
        if (!accept) {
            const double normalized = static_cast<double>(delta) / static_cast<double>(total_weight);
            accept = u01(rng) < std::exp(-normalized / temperature);
        }
        if (accept) {
            std::swap(state[i], state[j]);
            current_cost += delta;
            if (current_cost < best_cost) {
                best_cost = current_cost;
                best_state = state;
            }
        }
    }

    OptimizerResult result;
    result.groups = groups_from_slots(sizes, slots, best_state);
    result.layout = assignment_to_layout(result.groups, "opt-anneal");
    result.expected_cost = assignment_cost(result.groups, freq);
    result.evaluations = evaluations;
    result.seed = seed;
    result.constraints = constraints;
    return result;
}

Layout assignment_to_layout(const std::vector<Cycle>& groups, std::string name) {
    if (groups.size() > 8) {
        throw InfeasibleConstraints("cannot place " + std::to_string(groups.size()) +
                                    " letter groups on keys 2..9");
    }
    Layout layout;
    layout.name = std::move(name);
    layout.mode_key = '#';

    Cycle star_overflow;  // digits whose key cycle is already full
    layout.keys.push_back(Key{'1', U"1", U"1"});
    for (std::size_t g = 0; g < 8; ++g) {
        const char id = static_cast<char>('2' + g);
        const auto digit = static_cast<Symbol>(id);
        Key key{id, U"", Cycle(1, digit)};
        if (g < groups.size()) {
            key.alpha = groups[g];
        }
        if (key.alpha.size() < 5) {
            key.alpha.push_back(digit);
        } else {
            star_overflow.push_back(digit);
        }
        layout.keys.push_back(std::move(key));
    }
    layout.keys.push_back(Key{'*', star_overflow, U""});
    layout.keys.push_back(Key{'0', U"0", U"0"});
    layout.keys.push_back(Key{'#', U"", U""});
    return layout;
}

}  // namespace taplab
