#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>

namespace tges {

/// Extended-real score. The contradiction value (negative infinity) absorbs
/// addition and compares below every finite score.
class Score {
public:
    constexpr Score() = default;
    constexpr explicit Score(double value) : value_(value) {}

    static constexpr Score contradiction() { return Score(-std::numeric_limits<double>::infinity()); }

    constexpr double value() const noexcept { return value_; }
    bool is_contradiction() const noexcept { return std::isinf(value_) && value_ < 0; }
    bool is_finite() const noexcept { return std::isfinite(value_); }

    Score& operator+=(Score other) {
        value_ += other.value_;
        return *this;
    }
    friend Score operator+(Score a, Score b) { return a += b; }

    friend bool operator==(Score a, Score b) { return a.value_ == b.value_; }
    friend std::partial_ordering operator<=>(Score a, Score b) { return a.value_ <=> b.value_; }

    friend std::ostream& operator<<(std::ostream& os, Score s) {
        return s.is_contradiction() ? os << "-inf" : os << s.value_;
    }

private:
    double value_ = 0.0;
};

/// Change from `before` to `after`. Moving into a contradiction is -inf;
/// leaving one for a finite score is +inf. Both contradictions gives -inf.
inline double score_delta(Score after, Score before) {
    if (after.is_contradiction()) return -std::numeric_limits<double>::infinity();
    if (before.is_contradiction()) return std::numeric_limits<double>::infinity();
    return after.value() - before.value();
}

}  // namespace tges
