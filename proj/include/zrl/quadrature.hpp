// quadrature.hpp
// Globally adaptive 7/15-point Gauss-Kronrod integration for real or
// complex integrands. Panels are bisected worst-first; the final value is
// re-summed left to right so results do not depend on refinement order.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <type_traits>
#include <vector>

#include "zrl/numeric.hpp"

namespace zrl {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::size_t max_panels = 200000;
    // Width of the initial uniform partition; 0 means a single panel.
    double initial_width = 0.0;
};

template <class V>
struct QuadResult {
    V value{};
    double error = 0.0;
    bool converged = false;
    std::size_t evaluations = 0;
    std::size_t panels = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class V>
struct Panel {
    double a;
    double b;
    V value;
    double error;
};

template <class V, class F>
Panel<V> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const V fc = f(c);
    V resk = fc * kWgk[7];
    V resg = fc * kWg[3];
    double resabs = magnitude(fc) * kWgk[7];
    std::array<V, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        f1[j] = f(c - dx);
        f2[j] = f(c + dx);
        const V s = f1[j] + f2[j];
        resk += s * kWgk[j];
        resabs += kWgk[j] * (magnitude(f1[j]) + magnitude(f2[j]));
        if (j % 2 == 1) resg += s * kWg[j / 2];
    }
    const V mean = resk * 0.5;
    double resasc = kWgk[7] * magnitude(fc - mean);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (magnitude(f1[j] - mean) + magnitude(f2[j] - mean));

    const double ah = std::abs(h);
    resabs *= ah;
    resasc *= ah;
    double err = magnitude((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, resk * h, err};
}

}  // namespace detail

// Integrate f over [a, b]. Never throws on non-convergence; inspect
// `converged` and `error`.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureConfig& cfg)
    -> QuadResult<std::decay_t<decltype(f(a))>> {
    using V = std::decay_t<decltype(f(a))>;
    using detail::Panel;
    QuadResult<V> out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    std::size_t n0 = 1;
    if (cfg.initial_width > 0.0) {
        const double want = std::ceil(std::abs(b - a) / cfg.initial_width);
        n0 = static_cast<std::size_t>(std::clamp(want, 1.0, static_cast<double>(std::max<std::size_t>(1, cfg.max_panels / 2))));
    }

    auto worse = [](const Panel<V>& x, const Panel<V>& y) { return x.error < y.error; };
    std::vector<Panel<V>> heap;
    heap.reserve(std::min<std::size_t>(cfg.max_panels + 2, 1 << 16));
    const double w = (b - a) / static_cast<double>(n0);
    for (std::size_t i = 0; i < n0; ++i) {
        const double lo = a + w * static_cast<double>(i);
        const double hi = (i + 1 == n0) ? b : a + w * static_cast<double>(i + 1);
        heap.push_back(detail::gk15<V>(f, lo, hi));
        out.evaluations += 15;
    }
    std::make_heap(heap.begin(), heap.end(), worse);

    auto totals = [&heap]() {
        V v{};
        double e = 0.0;
        for (const auto& p : heap) {
            v += p.value;
            e += p.error;
        }
        return std::pair<V, double>{v, e};
    };

    double err_sum = 0.0;
    V val_sum{};
    {
        auto [v, e] = totals();
        val_sum = v;
        err_sum = e;
    }
    // Running sums drift; recompute exactly every so often.
    std::size_t since_refresh = 0;
    while (heap.size() < cfg.max_panels) {
        if (err_sum <= std::max(cfg.abs_tol, cfg.rel_tol * detail::magnitude(val_sum))) break;
        const Panel<V> worst = heap.front();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        std::pop_heap(heap.begin(), heap.end(), worse);
        heap.pop_back();
        const Panel<V> left = detail::gk15<V>(f, worst.a, mid);
        const Panel<V> right = detail::gk15<V>(f, mid, worst.b);
        out.evaluations += 30;
        err_sum += left.error + right.error - worst.error;
        val_sum += left.value + right.value - worst.value;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), worse);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), worse);
        if (++since_refresh == 256) {
            auto [v, e] = totals();
            val_sum = v;
            err_sum = e;
            since_refresh = 0;
        }
    }

    std::vector<Panel<V>> panels = std::move(heap);
    std::sort(panels.begin(), panels.end(), [](const Panel<V>& x, const Panel<V>& y) { return x.a < y.a; });

    CompensatedSum<double> err;
    if constexpr (std::is_same_v<V, double>) {
        CompensatedSum<double> acc;
        for (const auto& p : panels) {
            acc.add(p.value);
            err.add(p.error);
        }
        out.value = acc.value();
    } else {
        CompensatedComplexSum<double> acc;
        for (const auto& p : panels) {
            acc.add(p.value);
            err.add(p.error);
        }
        out.value = acc.value();
    }
    out.error = err.value();
    out.panels = panels.size();
    out.converged = out.error <= std::max(cfg.abs_tol, cfg.rel_tol * detail::magnitude(out.value));
    return out;
}

}  // namespace zrl
