// search.cpp

#include "zrl/search.hpp"

#include <algorithm>
#include <cmath>

#include "zrl/errors.hpp"
#include "zrl/parallel.hpp"

namespace zrl {

void validate(const PeakSearchConfig& cfg) {
    if (!(cfg.grid_step > 0.0)) throw ConfigError("search: grid_step must be positive");
    if (cfg.peaks < 1) throw ConfigError("search: peaks must be at least 1");
    if (!(cfg.window >= 0.0)) throw ConfigError("search: window must be nonnegative");
    if (!(cfg.sample_step > 0.0)) throw ConfigError("search: sample_step must be positive");
    if (!(cfg.refine_tol > 0.0)) throw ConfigError("search: refine_tol must be positive");
}

double golden_max(const std::function<double(double)>& f, double a, double b, double tol,
                  std::size_t* evaluations) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    std::size_t n = 2;
    while (b - a > tol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
        ++n;
    }
    if (evaluations) *evaluations += n;
    return f1 >= f2 ? x1 : x2;
}

PeakSearchResult resonance_search(const std::function<double(double)>& weight,
                                  const std::function<double(double)>& target, double lo, double hi,
                                  const PeakSearchConfig& cfg) {
    validate(cfg);
    if (!(hi > lo)) throw DomainError("search: empty interval");

    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / cfg.grid_step)) + 1;
    std::vector<double> w(n);
    parallel_for(n, [&](std::size_t i) { w[i] = weight(lo + cfg.grid_step * static_cast<double>(i)); });

    std::vector<std::size_t> maxima;
    for (std::size_t i = 0; i < n; ++i) {
        const bool left = i == 0 || w[i] >= w[i - 1];
        const bool right = i + 1 == n || w[i] > w[i + 1];
        if (left && right) maxima.push_back(i);
    }
    std::stable_sort(maxima.begin(), maxima.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
    if (maxima.size() > static_cast<std::size_t>(cfg.peaks)) maxima.resize(static_cast<std::size_t>(cfg.peaks));

    PeakSearchResult out;
    out.max_value = -1.0;
    for (const std::size_t idx : maxima) {
        const double seed = lo + cfg.grid_step * static_cast<double>(idx);
        out.seeds.push_back(seed);
        const double a = std::max(lo, seed - cfg.window);
        const double b = std::min(hi, seed + cfg.window);
        const auto m = static_cast<std::size_t>(std::floor((b - a) / cfg.sample_step)) + 1;
        std::vector<SearchSample> local(m);
        parallel_for(m, [&](std::size_t i) {
            const double t = a + cfg.sample_step * static_cast<double>(i);
            local[i] = {t, weight(t), target(t)};
        });
        out.target_evaluations += m;
        std::size_t best = 0;
        for (std::size_t i = 1; i < m; ++i)
            if (local[i].target > local[best].target) best = i;
        const double ra = std::max(a, local[best].t - cfg.sample_step);
        const double rb = std::min(b, local[best].t + cfg.sample_step);
        double t_star = local[best].t;
        double v_star = local[best].target;
        if (rb > ra) {
            const double t_ref = golden_max(target, ra, rb, cfg.refine_tol, &out.target_evaluations);
            const double v_ref = target(t_ref);
            ++out.target_evaluations;
            if (v_ref > v_star) {
                t_star = t_ref;
                v_star = v_ref;
            }
        }
        if (v_star > out.max_value) {
            out.max_value = v_star;
            out.argmax = t_star;
        }
        out.samples.insert(out.samples.end(), local.begin(), local.end());
    }
    return out;
}

}  // namespace zrl
