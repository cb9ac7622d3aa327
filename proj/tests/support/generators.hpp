#pragma once

#include <random>
#include <vector>

#include "kmrich/model.hpp"

namespace kmr::testing {

inline DistanceConfig random_config(std::mt19937_64& rng, int k, int bound, int denominator = 1) {
    std::uniform_int_distribution<int> draw(1, bound);
    std::vector<Rational> a, p;
    for (int j = 0; j < k; ++j) a.emplace_back(draw(rng), denominator);
    for (int j = 1; j < k; ++j) p.emplace_back(draw(rng), denominator);
    return DistanceConfig(std::move(a), std::move(p));
}

inline DistanceConfig random_valid_config(std::mt19937_64& rng, int k, int bound, int denominator = 1) {
    for (;;) {
        DistanceConfig cfg = random_config(rng, k, bound, denominator);
        if (validate(cfg).valid()) return cfg;
    }
}

inline Seeding random_seeding(std::mt19937_64& rng, int k) {
    std::vector<int> all(2 * static_cast<std::size_t>(k));
    for (int i = 0; i < 2 * k; ++i) all[i] = i + 1;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(k));
    return Seeding(std::move(all), k);
}

}  // namespace kmr::testing
