#pragma once

// Monotonicity-preserving cubic interpolation (Fritsch-Carlson slopes).
// Used for tabulated profiles and for particle insertion in label space,
// where preserving the strict ordering of interpolated positions matters.

#include <vector>

namespace bq1d {

class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    // Evaluates inside [x.front(), x.back()]; clamps to end values outside.
    double operator()(double q) const;

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> slope_;
};

}  // namespace bq1d
