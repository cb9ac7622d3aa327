#include "kmrich/errors.hpp"

namespace kmr {

namespace {
std::string tie_message(int step, int point, const std::vector<int>& clusters) {
    std::string out = "tie at point n" + std::to_string(point) + " between clusters";
    for (int c : clusters) out += " " + std::to_string(c);
    if (step >= 0) out += " (assignment " + std::to_string(step) + ")";
    return out;
}
}  // namespace

TieError::TieError(int step, int point, std::vector<int> clusters)
    : std::runtime_error(tie_message(step, point, clusters)),
      step_(step),
      point_(point),
      clusters_(std::move(clusters)) {}

}  // namespace kmr
