#pragma once

#include <cstddef>
#include <deque>
#include <stdexcept>
#include <utility>
#include <vector>

namespace iotrust {

// A single trust score an IoT device assigned to a service provider.
struct TrustRating {
    double value = 0.0;      // in [0, 1]
    double timestamp = 0.0;  // simulated seconds

    bool operator==(const TrustRating&) const = default;
};

struct WindowConfig {
    double slot_duration = 20.0;  // seconds per time slot
    std::size_t max_rating = 20;  // ratings kept for trust computation, upper bound
    std::size_t min_rating = 5;   // ratings preserved when trimming old slots

    void validate() const {
        if (slot_duration <= 0.0)
            throw std::invalid_argument("WindowConfig: slot_duration must be > 0");
        if (min_rating < 1)
            throw std::invalid_argument("WindowConfig: min_rating must be >= 1");
        if (max_rating < min_rating)
            throw std::invalid_argument("WindowConfig: max_rating must be >= min_rating");
    }

    bool operator==(const WindowConfig&) const = default;
};

// One fixed-duration bucket of ratings.
class TimeSlot {
public:
    explicit TimeSlot(double start_time = 0.0) : start_(start_time) {}

    double start_time() const { return start_; }
    std::size_t count() const { return ratings_.size(); }
    bool empty() const { return ratings_.empty(); }
    const std::vector<TrustRating>& ratings() const { return ratings_; }

    void add(const TrustRating& rating) { ratings_.push_back(rating); }

private:
    double start_;
    std::vector<TrustRating> ratings_;
};

// Sliding window of time slots; one window exists per (device, provider) pair.
// The in-progress slot collects new ratings. Closed slots form the history and
// are trimmed oldest-first at slot boundaries so the total rating count stays
// at or under max_rating without dropping below min_rating. A window can hold
// more than max_rating ratings when removing the oldest slot would leave too
// few.
class TrustWindow {
public:
    explicit TrustWindow(WindowConfig config, double start_time = 0.0)
        : config_(config), current_(start_time) {
        config_.validate();
    }

    const WindowConfig& config() const { return config_; }
    const std::deque<TimeSlot>& closed_slots() const { return closed_; }
    const TimeSlot& current_slot() const { return current_; }

    std::size_t transaction_count() const { return closed_count_ + current_.count(); }
    bool empty() const { return transaction_count() == 0; }

    // Appends a rating to the in-progress slot. A timestamp outside the slot
    // interval means the caller's scheduling is broken and is rejected.
    void record_rating(const TrustRating& rating) {
        const double end = current_.start_time() + config_.slot_duration;
        if (rating.timestamp < current_.start_time() || rating.timestamp >= end)
            throw std::logic_error("TrustWindow: rating timestamp outside the current slot");
        current_.add(rating);
    }

    // Closes the in-progress slot, trims oldest slots while the window holds
    // more than max_rating ratings and trimming still leaves min_rating, then
    // starts a fresh slot at next_start. Zero-rating slots are stored like any
    // other and keep their position for time weighting.
    void close_slot_and_adjust(double next_start) {
        closed_count_ += current_.count();
        closed_.push_back(std::move(current_));
        while (closed_count_ > config_.max_rating &&
               closed_count_ - closed_.front().count() >= config_.min_rating) {
            closed_count_ -= closed_.front().count();
            closed_.pop_front();
        }
        current_ = TimeSlot(next_start);
    }

    // Slot positions used for time weighting: every closed slot, plus the
    // in-progress slot once it holds ratings. The newest slot that actually
    // contains ratings therefore always has weight 1.
    std::size_t weighted_slot_count() const {
        return closed_.size() + (current_.empty() ? 0 : 1);
    }

    // Visits every rating together with the 1-based position of its slot
    // (oldest = 1) and the total slot count from weighted_slot_count().
    template <typename Visitor>
    void visit_ratings(Visitor&& visit) const {
        const std::size_t total = weighted_slot_count();
        std::size_t position = 1;
        for (const TimeSlot& slot : closed_) {
            for (const TrustRating& rating : slot.ratings())
                visit(rating, position, total);
            ++position;
        }
        for (const TrustRating& rating : current_.ratings())
            visit(rating, position, total);
    }

private:
    WindowConfig config_;
    std::deque<TimeSlot> closed_;
    TimeSlot current_;
    std::size_t closed_count_ = 0;
};

}  // namespace iotrust
