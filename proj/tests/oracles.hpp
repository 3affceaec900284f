// SPDX-License-Identifier: Apache-2.0
//
// Reference computations used only by the tests. None of them share code
// with the library solvers.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

struct GridOptimum {
    double value = -1e300;
    std::vector<double> point;
};

/// Exact maximum of Σ_m f_m(p_m) over {p = h·k : k ∈ ℕ^N, Σk = K}, each
/// f_m concave and nondecreasing, h = budget/K. The outer coordinates are
/// enumerated; the last two are split by integer ternary search, which is
/// exact because j ↦ f_a(j) + f_b(r - j) is concave.
inline GridOptimum simplex_grid_max(const std::vector<std::function<double(double)>>& f,
                                    double budget, std::size_t units) {
    const std::size_t n = f.size();
    const double h = budget / static_cast<double>(units);
    std::vector<std::vector<double>> table(n, std::vector<double>(units + 1));
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t j = 0; j <= units; ++j) table[m][j] = f[m](h * static_cast<double>(j));

    GridOptimum best;
    std::vector<std::size_t> k(n, 0);
    auto record = [&](double v) {
        if (v <= best.value) return;
        best.value = v;
        best.point.resize(n);
        for (std::size_t i = 0; i < n; ++i) best.point[i] = h * static_cast<double>(k[i]);
    };
    auto finish = [&](double head, std::size_t r) {
        if (n == 1) {
            k[0] = r;
            record(head + table[0][r]);
            return;
        }
        const auto& fa = table[n - 2];
        const auto& fb = table[n - 1];
        auto split = [&](std::size_t j) { return head + fa[j] + fb[r - j]; };
        std::size_t lo = 0;
        std::size_t hi = r;
        while (hi - lo > 2) {
            const std::size_t a = lo + (hi - lo) / 3;
            const std::size_t b = hi - (hi - lo) / 3;
            if (split(a) < split(b)) {
                lo = a + 1;
            } else {
                hi = b;
            }
        }
        for (std::size_t j = lo; j <= hi; ++j) {
            k[n - 2] = j;
            k[n - 1] = r - j;
            record(split(j));
        }
    };
    std::function<void(std::size_t, std::size_t, double)> descend = [&](std::size_t i, std::size_t r,
                                                                        double head) {
        if (n < 2 || i + 2 == n) {
            finish(head, r);
            return;
        }
        for (std::size_t j = 0; j <= r; ++j) {
            k[i] = j;
            descend(i + 1, r - j, head + table[i][j]);
        }
    };
    descend(0, units, 0.0);
    return best;
}

/// Euclidean projection onto {p ≥ 0, Σp = budget}.
inline std::vector<double> project_simplex(std::vector<double> v, double budget) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        cumulative += u[i];
        const double t = (cumulative - budget) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) theta = t;
    }
    for (double& x : v) x = std::max(x - theta, 0.0);
    return v;
}

/// max Σ log(1 + p_m c_m) on the budget simplex by accelerated projected
/// gradient. Returns the objective in nats.
inline double projected_gradient_log_sum(const std::vector<double>& cnr, double budget,
                                         std::size_t iterations = 20000) {
    const std::size_t n = cnr.size();
    const double lipschitz = std::pow(*std::max_element(cnr.begin(), cnr.end()), 2);
    auto value = [&](const std::vector<double>& p) {
        double s = 0.0;
        for (std::size_t m = 0; m < n; ++m) s += std::log1p(p[m] * cnr[m]);
        return s;
    };
    std::vector<double> x(n, budget / static_cast<double>(n));
    std::vector<double> y = x;
    double t = 1.0;
    for (std::size_t it = 0; it < iterations; ++it) {
        std::vector<double> step(n);
        for (std::size_t m = 0; m < n; ++m) step[m] = y[m] + cnr[m] / (1.0 + y[m] * cnr[m]) / lipschitz;
        std::vector<double> next = project_simplex(step, budget);
        if (value(next) < value(x)) {
            // restart momentum on a non-monotone step
            t = 1.0;
            y = x;
            continue;
        }
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        for (std::size_t m = 0; m < n; ++m) y[m] = next[m] + (t - 1.0) / t_next * (next[m] - x[m]);
        x = std::move(next);
        t = t_next;
    }
    return value(x);
}

inline long double sinc_ld(long double x) {
    return x == 0.0L ? 1.0L : std::sin(x) / x;
}

/// E|S(f)|² as the literal four-fold sum over (m, n, m', n') with
/// E[c_{m,n} c*_{m',n'}] = δ_{mm'}δ_{nn'}.
inline double quadruple_sum_psd(const std::vector<double>& powers, std::size_t n_symbols,
                                double spacing, double guard, double f) {
    using C = std::complex<long double>;
    const long double pi = std::numbers::pi_v<long double>;
    const long double ts = 1.0L / spacing + guard;
    const std::size_t n_c = powers.size();
    auto term = [&](std::size_t m, std::size_t n) {
        const long double md = static_cast<long double>(m);
        const long double lag = (static_cast<long double>(n) - 0.5L) * ts;
        return std::sqrt(static_cast<long double>(powers[m])) * std::polar(1.0L, -pi * md * spacing * ts) *
               sinc_ld(pi * (f - md * spacing) * ts) * std::polar(1.0L, -2.0L * pi * f * lag);
    };
    C acc{0.0L, 0.0L};
    for (std::size_t m = 0; m < n_c; ++m)
        for (std::size_t n = 0; n < n_symbols; ++n)
            for (std::size_t mp = 0; mp < n_c; ++mp)
                for (std::size_t np = 0; np < n_symbols; ++np) {
                    if (m != mp || n != np) continue;
                    acc += term(m, n) * std::conj(term(mp, np));
                }
    return static_cast<double>(ts * ts * acc.real());
}

/// Σ_{k≠m} p_k sinc²(π(m-k)ΔfT_s) / p_m, summed directly.
inline double cross_term_fraction(const std::vector<double>& powers, double spacing_times_ts,
                                  std::size_t m) {
    const long double pi = std::numbers::pi_v<long double>;
    long double acc = 0.0L;
    for (std::size_t k = 0; k < powers.size(); ++k) {
        if (k == m) continue;
        const long double offset = static_cast<long double>(m) - static_cast<long double>(k);
        const long double s = sinc_ld(pi * offset * spacing_times_ts);
        acc += powers[k] * s * s;
    }
    return static_cast<double>(acc / powers[m]);
}

/// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& g, double a, double b, std::size_t panels) {
    if (panels % 2) ++panels;
    const double h = (b - a) / static_cast<double>(panels);
    double acc = g(a) + g(b);
    for (std::size_t i = 1; i < panels; ++i) acc += g(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace oracle
