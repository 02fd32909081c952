#include <doctest.h>

#include <vector>

#include "iotrust/rng.hpp"
#include "iotrust/window.hpp"

using namespace iotrust;

namespace {

WindowConfig cfg(double slot, std::size_t max, std::size_t min) {
    return {slot, max, min};
}

// Builds a window whose closed slots hold the given rating counts, then
// leaves `current` ratings in the in-progress slot. Slot i covers
// [i*slot, (i+1)*slot).
TrustWindow window_with_counts(const WindowConfig& config,
                               const std::vector<std::size_t>& closed_counts,
                               std::size_t current_count, double value = 0.5) {
    TrustWindow window(config, 0.0);
    double start = 0.0;
    for (const std::size_t count : closed_counts) {
        for (std::size_t i = 0; i < count; ++i)
            window.record_rating({value, start});
        start += config.slot_duration;
        window.close_slot_and_adjust(start);
    }
    for (std::size_t i = 0; i < current_count; ++i)
        window.record_rating({value, start});
    return window;
}

std::vector<std::size_t> closed_counts(const TrustWindow& window) {
    std::vector<std::size_t> counts;
    for (const TimeSlot& slot : window.closed_slots())
        counts.push_back(slot.count());
    return counts;
}

}  // namespace

TEST_CASE("record_rating appends to the current slot") {
    TrustWindow window(cfg(20, 20, 5), 0.0);
    window.record_rating({0.9, 3.0});
    CHECK(window.current_slot().count() == 1);
    CHECK(window.current_slot().ratings()[0].value == 0.9);
    CHECK(window.closed_slots().empty());

    window.record_rating({0.7, 5.0});
    REQUIRE(window.current_slot().count() == 2);
    CHECK(window.current_slot().ratings()[0].value == 0.9);
    CHECK(window.current_slot().ratings()[1].value == 0.7);
}

TEST_CASE("record_rating rejects timestamps outside the current slot") {
    TrustWindow window(cfg(20, 20, 5), 0.0);
    CHECK_THROWS_AS(window.record_rating({0.5, 20.0}), std::logic_error);
    CHECK_THROWS_AS(window.record_rating({0.5, -1.0}), std::logic_error);
    window.close_slot_and_adjust(20.0);
    CHECK_THROWS_AS(window.record_rating({0.5, 10.0}), std::logic_error);
    CHECK_NOTHROW(window.record_rating({0.5, 20.0}));
}

TEST_CASE("close_slot_and_adjust trims the oldest slot when over the max") {
    // counts [2,3,2,2] plus a current slot of 2: closing pushes the total to
    // 11 > 10, dropping the oldest leaves 9 >= 5, so exactly one slot goes.
    TrustWindow window = window_with_counts(cfg(20, 10, 5), {2, 3, 2, 2}, 2);
    CHECK(window.transaction_count() == 11);
    window.close_slot_and_adjust(100.0);
    CHECK(closed_counts(window) == std::vector<std::size_t>{3, 2, 2, 2});
    CHECK(window.transaction_count() == 9);
    CHECK(window.closed_slots().front().start_time() == 20.0);
    CHECK(window.current_slot().start_time() == 100.0);
}

TEST_CASE("close_slot_and_adjust keeps an oversized window when trimming would starve it") {
    TrustWindow window = window_with_counts(cfg(20, 10, 5), {9}, 3);
    window.close_slot_and_adjust(40.0);
    CHECK(closed_counts(window) == std::vector<std::size_t>{9, 3});
    CHECK(window.transaction_count() == 12);
}

TEST_CASE("closing an empty window stores a zero-count slot") {
    TrustWindow window(cfg(20, 10, 5), 0.0);
    window.close_slot_and_adjust(20.0);
    CHECK(closed_counts(window) == std::vector<std::size_t>{0});
    CHECK(window.transaction_count() == 0);
}

TEST_CASE("transaction_count sums closed slots and the current slot") {
    CHECK(window_with_counts(cfg(20, 100, 5), {2, 3, 2, 2}, 2).transaction_count() == 11);
    CHECK(TrustWindow(cfg(20, 10, 5)).transaction_count() == 0);
    CHECK(window_with_counts(cfg(20, 100, 5), {5, 4}, 0).transaction_count() == 9);
}

TEST_CASE("adjustment dichotomy holds on randomized slot sequences") {
    Rng rng(20240811);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t max = 1 + rng.index(30);
        const std::size_t min = 1 + rng.index(max);
        TrustWindow window(cfg(10, max, min), 0.0);
        double start = 0.0;
        const std::size_t closes = 3 + rng.index(28);
        for (std::size_t c = 0; c < closes; ++c) {
            const std::size_t arrivals = rng.index(9);
            for (std::size_t i = 0; i < arrivals; ++i)
                window.record_rating({rng.uniform(), start});
            start += 10.0;
            window.close_slot_and_adjust(start);

            const std::size_t count = window.transaction_count();
            const bool within_max = count <= max;
            const bool starved = !window.closed_slots().empty() &&
                                 count - window.closed_slots().front().count() < min;
            CHECK((within_max || starved));
        }
    }
}

TEST_CASE("slot removal is strictly oldest-first") {
    Rng rng(7);
    TrustWindow window(cfg(10, 12, 4), 0.0);
    double start = 0.0;
    double last_seen_front = -1.0;
    for (int c = 0; c < 200; ++c) {
        const std::size_t arrivals = rng.index(6);
        for (std::size_t i = 0; i < arrivals; ++i)
            window.record_rating({rng.uniform(), start});
        start += 10.0;
        window.close_slot_and_adjust(start);

        // closed slots must stay in increasing start-time order and the front
        // may only move forward
        double prev = -1.0;
        for (const TimeSlot& slot : window.closed_slots()) {
            CHECK(slot.start_time() > prev);
            prev = slot.start_time();
        }
        if (!window.closed_slots().empty()) {
            CHECK(window.closed_slots().front().start_time() >= last_seen_front);
            last_seen_front = window.closed_slots().front().start_time();
        }
    }
}

TEST_CASE("steady-state slot count does not grow with the arrival rate") {
    std::vector<std::size_t> lengths;
    for (std::size_t rate = 1; rate <= 8; ++rate) {
        TrustWindow window(cfg(10, 20, 5), 0.0);
        double start = 0.0;
        for (int c = 0; c < 60; ++c) {
            for (std::size_t i = 0; i < rate; ++i)
                window.record_rating({0.5, start});
            start += 10.0;
            window.close_slot_and_adjust(start);
        }
        lengths.push_back(window.closed_slots().size());
    }
    for (std::size_t i = 1; i < lengths.size(); ++i)
        CHECK(lengths[i] <= lengths[i - 1]);
}

TEST_CASE("weighted slot positions cover closed slots plus a non-empty current slot") {
    TrustWindow window = window_with_counts(cfg(20, 100, 5), {1, 0, 2}, 0);
    CHECK(window.weighted_slot_count() == 3);

    window.record_rating({0.9, 61.0});
    CHECK(window.weighted_slot_count() == 4);

    std::vector<std::pair<std::size_t, std::size_t>> seen;  // (position, total)
    window.visit_ratings([&](const TrustRating&, std::size_t pos, std::size_t total) {
        seen.emplace_back(pos, total);
    });
    REQUIRE(seen.size() == 4);
    CHECK(seen[0] == std::pair<std::size_t, std::size_t>{1, 4});
    CHECK(seen[1] == std::pair<std::size_t, std::size_t>{3, 4});
    CHECK(seen[2] == std::pair<std::size_t, std::size_t>{3, 4});
    CHECK(seen[3] == std::pair<std::size_t, std::size_t>{4, 4});
}

TEST_CASE("window config is validated") {
    CHECK_THROWS_AS(TrustWindow(cfg(0, 10, 5)), std::invalid_argument);
    CHECK_THROWS_AS(TrustWindow(cfg(20, 4, 5)), std::invalid_argument);
    CHECK_THROWS_AS(TrustWindow(cfg(20, 10, 0)), std::invalid_argument);
}
