#pragma once

#include <functional>
#include <stdexcept>

namespace dlsa {

/// Thrown when a function handed to maximize_concave fails the concavity
/// spot-check.
struct NonConcaveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MaxResult {
    double x = 0;
    double value = 0;
};

/// Golden-section maximizer for a concave f on [lo, hi]; the returned x is
/// within tol of the true argmax. Concavity is spot-checked with midpoint
/// tests on the initial interval and its halves.
MaxResult maximize_concave(const std::function<double(double)>& f,
                           double lo, double hi, double tol);

}  // namespace dlsa
