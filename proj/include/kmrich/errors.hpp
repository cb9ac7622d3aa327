#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmr {

/// Malformed config text or JSON. `position` is a 0-based character offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class NonPositiveDistanceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A point lies at exactly equal distance from two or more centroids.
class TieError : public std::runtime_error {
public:
    TieError(int step, int point, std::vector<int> clusters);
    int step() const { return step_; }
    /// 1-based point index.
    int point() const { return point_; }
    const std::vector<int>& clusters() const { return clusters_; }

private:
    int step_;
    int point_;
    std::vector<int> clusters_;
};

/// A region-defining comparison of the case classifier evaluated to equality.
class RegionTieError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnclassifiedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ExhaustionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace kmr
