#pragma once

#include <random>

#include <qsha/matrix.hpp>
#include <qsha/rational.hpp>

namespace qsha {

/// Deterministic sampler for property checks. Entries are uniform in
/// {-9,...,9}/{1,...,4} so that exact arithmetic stays cheap.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : eng_(seed) {}

    Rational rational() {
        std::uniform_int_distribution<int> num(-9, 9);
        std::uniform_int_distribution<int> den(1, 4);
        return Rational(num(eng_), den(eng_));
    }

    int integer(int lo, int hi) {
        std::uniform_int_distribution<int> d(lo, hi);
        return d(eng_);
    }

    QMatrix matrix(int rows, int cols) {
        QMatrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(r, c) = rational();
        return m;
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

} // namespace qsha
