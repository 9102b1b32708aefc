#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "taplab/metrics.hpp"
#include "taplab/optimizer.hpp"

using namespace taplab;

namespace {

FrequencyTable table_from_weights(const std::map<Symbol, std::int64_t>& weights) {
    std::map<Symbol, std::uint64_t> counts;
    for (const auto& [symbol, weight] : weights) {
        counts[symbol] = static_cast<std::uint64_t>(weight);
    }
    return frequency_from_counts(std::move(counts));
}

bool groups_sorted_within(const std::vector<Cycle>& groups) {
    for (const Cycle& group : groups) {
        for (std::size_t i = 1; i < group.size(); ++i) {
            if (group[i - 1] >= group[i]) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("assignment cost weighs positions by probability") {
    const FrequencyTable uniform = uniform_letters();
    const auto baseline_groups = letter_groups(builtin_layout("baseline"));
    CHECK(std::abs(assignment_cost(baseline_groups, uniform) - 56.0 / 26.0) <= 1e-12);

    const FrequencyTable point = frequency_from_counts({{U'q', 7}});
    CHECK(assignment_cost({U"q"}, point) == 1.0);

    const FrequencyTable etq = frequency_from_counts({{U'e', 5}, {U't', 3}, {U'q', 2}});
    CHECK(assignment_cost(baseline_groups, etq) == doctest::Approx(1.7).epsilon(1e-12));
}

TEST_CASE("assignment cost rejects incomplete or doubled assignments") {
    const FrequencyTable etq = frequency_from_counts({{U'e', 5}, {U't', 3}, {U'q', 2}});
    CHECK_THROWS_AS(assignment_cost({U"et"}, etq), IncompleteAssignment);
    CHECK_THROWS_AS(assignment_cost({U"et", U"te"}, etq), IncompleteAssignment);
}

TEST_CASE("the contiguous optimum under uniform letters is the balanced cut") {
    const OptimizerResult result = optimize_contiguous(uniform_letters(), 8, 1, 5);
    CHECK(std::abs(result.expected_cost - 56.0 / 26.0) <= 1e-12);
    std::multiset<std::size_t> sizes;
    for (const Cycle& group : result.groups) {
        sizes.insert(group.size());
    }
    CHECK(sizes == std::multiset<std::size_t>{3, 3, 3, 3, 3, 3, 4, 4});
    CHECK(validate_layout(result.layout).empty());
    CHECK(groups_sorted_within(result.groups));
    CHECK(!result.seed.has_value());
}

TEST_CASE("a point mass pulls its letter to the front of a group") {
    const FrequencyTable point = frequency_from_counts({{U'e', 1}});
    const OptimizerResult result = optimize_contiguous(point, 8, 1, 5);
    CHECK(result.expected_cost == 1.0);
    bool e_starts_a_group = false;
    for (const Cycle& group : result.groups) {
        if (!group.empty() && group.front() == U'e') e_starts_a_group = true;
    }
    CHECK(e_starts_a_group);
}

TEST_CASE("contiguous DP equals the exhaustive composition enumeration") {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 10; ++round) {
        const auto weights = oracle::random_letter_weights(rng, 26);
        const FrequencyTable freq = table_from_weights(weights);
        const OptimizerResult result = optimize_contiguous(freq, 8, 1, 5);
        CHECK(oracle::assignment_cost_int(result.groups, weights) ==
              oracle::min_contiguous_cost(weights, 8, 1, 5));
    }
}

TEST_CASE("the contiguous optimum never loses to the baseline cut") {
    std::mt19937_64 rng(43);
    const auto baseline_groups = letter_groups(builtin_layout("baseline"));
    for (int round = 0; round < 10; ++round) {
        const FrequencyTable freq = table_from_weights(oracle::random_letter_weights(rng, 26));
        const OptimizerResult result = optimize_contiguous(freq, 8, 1, 5);
        CHECK(result.expected_cost <= assignment_cost(baseline_groups, freq) + 1e-12);

        // Feasible-set nesting: freeing the same group sizes can only help.
        std::vector<int> sizes;
        for (const Cycle& group : result.groups) {
            sizes.push_back(static_cast<int>(group.size()));
        }
        CHECK(optimize_free(freq, sizes).expected_cost <= result.expected_cost + 1e-12);
    }
}

TEST_CASE("contiguous constraints are checked up front") {
    CHECK_THROWS_AS(optimize_contiguous(uniform_letters(), 5, 1, 5), InfeasibleConstraints);
    CHECK_THROWS_AS(optimize_contiguous(uniform_letters(), 27, 1, 5), InfeasibleConstraints);
    CHECK_THROWS_AS(optimize_contiguous(uniform_letters(), 8, 4, 3), InfeasibleConstraints);
    CHECK_THROWS_AS(
        optimize_contiguous(frequency_from_counts({{U'!', 1}}), 8, 1, 5), Error);
}

TEST_CASE("greedy free assignment puts frequent letters on first taps") {
    const FrequencyTable etq = frequency_from_counts({{U'e', 5}, {U't', 3}, {U'q', 2}});
    const OptimizerResult result = optimize_free(etq, {2, 1});
    CHECK(result.expected_cost == doctest::Approx(1.2).epsilon(1e-12));
    REQUIRE(result.groups.size() == 2);
    CHECK(result.groups[0] == U"eq");  // e first, q second tap
    CHECK(result.groups[1] == U"t");

    const FrequencyTable single = frequency_from_counts({{U'x', 3}});
    CHECK(optimize_free(single, {1}).expected_cost == 1.0);

    const OptimizerResult uniform = optimize_free(uniform_letters(), kDefaultGroupSizes);
    CHECK(std::abs(uniform.expected_cost - 56.0 / 26.0) <= 1e-12);
    CHECK(validate_layout(uniform.layout).empty());
}

TEST_CASE("free assignment validates the size vector") {
    const FrequencyTable etq = frequency_from_counts({{U'e', 5}, {U't', 3}, {U'q', 2}});
    CHECK_THROWS_AS(optimize_free(etq, {2, 2}), SizeMismatch);
    CHECK_THROWS_AS(optimize_free(etq, {3, 0}), InfeasibleConstraints);
    CHECK_THROWS_AS(optimize_free(uniform_letters(), {26}), InfeasibleConstraints);
}

TEST_CASE("greedy free assignment equals the exhaustive assignment minimum") {
    std::mt19937_64 rng(44);
    for (int round = 0; round < 10; ++round) {
        const int letters = static_cast<int>(rng() % 5) + 4;  // 4..8 letters
        const auto weights = oracle::random_letter_weights(rng, letters);
        std::vector<int> sizes;
        int remaining = letters;
        while (remaining > 0) {
            const int size = static_cast<int>(rng() % std::min(remaining, 4)) + 1;
            sizes.push_back(size);
            remaining -= size;
        }
        const FrequencyTable freq = table_from_weights(weights);
        const OptimizerResult result = optimize_free(freq, sizes);
        CHECK(oracle::assignment_cost_int(result.groups, weights) ==
              oracle::min_free_cost(weights, sizes));
    }
}

TEST_CASE("annealing is deterministic for a fixed seed") {
    std::mt19937_64 rng(7);
    const FrequencyTable freq = table_from_weights(oracle::random_letter_weights(rng, 26));
    const Constraints constraints = Constraints::free_assignment(kDefaultGroupSizes);
    AnnealSchedule schedule;
    schedule.iterations = 5000;
    const OptimizerResult a = anneal(freq, constraints, 99, schedule);
    const OptimizerResult b = anneal(freq, constraints, 99, schedule);
    CHECK(a.groups == b.groups);
    CHECK(a.expected_cost == b.expected_cost);
    CHECK(a.evaluations == b.evaluations);
    CHECK(serialize_layout(a.layout) == serialize_layout(b.layout));
    CHECK(a.seed == 99);
}

TEST_CASE("annealing never loses to its round-robin start") {
    std::mt19937_64 rng(45);
    for (int round = 0; round < 5; ++round) {
        const FrequencyTable freq = table_from_weights(oracle::random_letter_weights(rng, 26));
        std::vector<Cycle> round_robin(kDefaultGroupSizes.size());
        Symbol s = U'a';
        for (int pos = 1; pos <= 4; ++pos) {
            for (std::size_t g = 0; g < kDefaultGroupSizes.size(); ++g) {
                if (kDefaultGroupSizes[g] >= pos) round_robin[g].push_back(s++);
            }
        }
        AnnealSchedule schedule;
        schedule.iterations = 2000;
        const OptimizerResult result =
            anneal(freq, Constraints::free_assignment(kDefaultGroupSizes), rng(), schedule);
        CHECK(result.expected_cost <= assignment_cost(round_robin, freq) + 1e-12);
        CHECK(result.expected_cost + 1e-12 >=
              optimize_free(freq, kDefaultGroupSizes).expected_cost);
        CHECK(validate_layout(result.layout).empty());
    }
}

TEST_CASE("annealing reaches the free optimum on a small alphabet") {
    std::mt19937_64 rng(46);
    const auto weights = oracle::random_letter_weights(rng, 8);
    const FrequencyTable freq = table_from_weights(weights);
    const std::vector<int> sizes = {3, 3, 2};
    AnnealSchedule schedule;
    schedule.iterations = 10000;
    const OptimizerResult annealed =
        anneal(freq, Constraints::free_assignment(sizes), 17, schedule);
    CHECK(oracle::assignment_cost_int(annealed.groups, weights) ==
          oracle::min_free_cost(weights, sizes));
}

TEST_CASE("order-preserving annealing keeps keys alphabetical") {
    std::mt19937_64 rng(47);
    const FrequencyTable freq = table_from_weights(oracle::random_letter_weights(rng, 26));
    AnnealSchedule schedule;
    schedule.iterations = 8000;
    const OptimizerResult result =
        anneal(freq, Constraints::constrained(kDefaultGroupSizes, true), 3, schedule);
    CHECK(groups_sorted_within(result.groups));
    CHECK(validate_layout(result.layout).empty());
    // Still a valid upper bound chain: free optimum <= constrained result.
    CHECK(optimize_free(freq, kDefaultGroupSizes).expected_cost <= result.expected_cost + 1e-12);
}

TEST_CASE("annealing rejects the contiguous family") {
    CHECK_THROWS_AS(anneal(uniform_letters(), Constraints::contiguous(8, 1, 5), 1, {}),
                    InfeasibleConstraints);
}

TEST_CASE("feasible-set nesting holds on small alphabets") {
    // Exhaustively: free minimum <= sorted-within-keys minimum, which the
    // order-preserving annealer can only match or exceed.
    std::mt19937_64 rng(48);
    const auto weights = oracle::random_letter_weights(rng, 6);
    const std::vector<int> sizes = {2, 2, 2};
    const FrequencyTable freq = table_from_weights(weights);

    const std::int64_t free_min = oracle::min_free_cost(weights, sizes);
    AnnealSchedule schedule;
    schedule.iterations = 10000;
    const OptimizerResult constrained =
        anneal(freq, Constraints::constrained(sizes, true), 5, schedule);
    CHECK(free_min <= oracle::assignment_cost_int(constrained.groups, weights));
}

TEST_CASE("five-letter groups push their digit onto the star key") {
    std::vector<Cycle> groups = {U"abcde", U"fghij", U"klmno", U"pqrst", U"uvwxy", U"z"};
    const Layout layout = assignment_to_layout(groups, "bulky");
    CHECK(validate_layout(layout).empty());
    CHECK(layout.find_key('2')->alpha == U"abcde");
    CHECK(layout.find_key('7')->alpha == U"z7");
    // Keys 2..6 are full, so digits 2..6 land on '*'.
    CHECK(layout.find_key('*')->alpha == U"23456");
    CHECK(layout.find_key('8')->alpha == U"8");

    CHECK_THROWS_AS(assignment_to_layout(std::vector<Cycle>(9, U"x"), "toomany"),
                    InfeasibleConstraints);
}

TEST_CASE("optimizer results track their provenance") {
    const OptimizerResult result = optimize_contiguous(uniform_letters(), 8, 1, 5);
    CHECK(result.constraints.kind == Constraints::Kind::ContiguousAlphabet);
    CHECK(result.evaluations > 0);
    const double recomputed = assignment_cost(result.groups, uniform_letters());
    CHECK(std::abs(result.expected_cost - recomputed) <= 1e-12);
    // The layout's letter positions agree with the raw groups.
    CHECK(std::abs(expected_kspc(result.layout, uniform_letters(), Mode::Alpha) -
                   result.expected_cost) <= 1e-12);
}
