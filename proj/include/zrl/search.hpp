// search.hpp
// Resonance-seeded maximization: scan a cheap weight on a grid, keep its
// highest local maxima, then sample and golden-section refine an expensive
// target around each of them.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace zrl {

struct PeakSearchConfig {
    double grid_step = 0.05;
    int peaks = 32;
    double window = 1.0;  // half-width sampled around each seed
    double sample_step = 0.01;
    double refine_tol = 1e-9;
};

void validate(const PeakSearchConfig& cfg);

struct SearchSample {
    double t;
    double weight;
    double target;
};

struct PeakSearchResult {
    double argmax = 0.0;
    double max_value = 0.0;
    std::vector<double> seeds;           // descending weight
    std::vector<SearchSample> samples;   // ascending t within each seed window
    std::size_t target_evaluations = 0;
};

PeakSearchResult resonance_search(const std::function<double(double)>& weight,
                                  const std::function<double(double)>& target, double lo, double hi,
                                  const PeakSearchConfig& cfg);

// Golden-section maximization of a unimodal-ish f on [a, b].
double golden_max(const std::function<double(double)>& f, double a, double b, double tol,
                  std::size_t* evaluations = nullptr);

}  // namespace zrl
