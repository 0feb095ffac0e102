#pragma once
#include <stdexcept>
#include <string>

namespace hexband {

// Thrown when an integration or root refinement fails; carries the
// spectral value that was being processed.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double lambda)
        : std::runtime_error(what), lambda_(lambda) {}
    double lambda() const { return lambda_; }

private:
    double lambda_;
};

// Near-degenerate band edges that could not be separated at the
// minimum bracketing spacing.
class ResolutionError : public std::runtime_error {
public:
    ResolutionError(const std::string& what, double lo, double hi)
        : std::runtime_error(what), lo_(lo), hi_(hi) {}
    double cluster_lo() const { return lo_; }
    double cluster_hi() const { return hi_; }

private:
    double lo_, hi_;
};

} // namespace hexband
