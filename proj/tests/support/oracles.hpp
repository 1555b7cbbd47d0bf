#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "symdom/jet.hpp"

namespace oracle {

/// Explicit sum P_n^{(a,b)}(x) = sum_k binom(n+a, n-k) binom(n+b, k) ((x-1)/2)^k ((x+1)/2)^(n-k).
inline double jacobi_series(int n, double a, double b, double x) {
    using L = long double;
    L s = 0, xm = (L(x) - 1) / 2, xp = (L(x) + 1) / 2;
    for (int k = 0; k <= n; ++k) {
        L lc = std::lgamma(L(n) + a + 1) - std::lgamma(L(k) + a + 1) - std::lgamma(L(n - k) + 1)
             + std::lgamma(L(n) + b + 1) - std::lgamma(L(n - k) + b + 1) - std::lgamma(L(k) + 1);
        s += std::exp(lc) * std::pow(xm, k) * std::pow(xp, n - k);
    }
    return double(s);
}

/// C_n^lambda(x) = sum_k (-1)^k Gamma(n-k+lambda) / (Gamma(lambda) k! (n-2k)!) (2x)^(n-2k).
inline double gegenbauer_series(int n, double lambda, double x) {
    using L = long double;
    L s = 0;
    for (int k = 0; 2 * k <= n; ++k) {
        L lc = std::lgamma(L(n - k) + lambda) - std::lgamma(L(lambda)) - std::lgamma(L(k) + 1)
             - std::lgamma(L(n - 2 * k) + 1);
        s += (k % 2 ? -1 : 1) * std::exp(lc) * std::pow(2 * L(x), n - 2 * k);
    }
    return double(s);
}

/// Double-exponential rule on [a, b]; handles integrable endpoint singularities.
/// f receives the node together with its distances to a and to b, both free of cancellation.
inline double tanh_sinh_ends(const std::function<double(double, double, double)>& f, double a, double b,
                             int level = 7) {
    if (b <= a) return 0.0;
    const double h = std::ldexp(1.0, -level) * 4.0;
    const double r = 0.5 * (b - a);
    double sum = 0.0;
    for (int k = -int(std::ceil(4.5 / h)); k <= int(std::ceil(4.5 / h)); ++k) {
        double t = k * h;
        double u = 0.5 * std::numbers::pi * std::sinh(t);
        double w = 0.5 * std::numbers::pi * std::cosh(t) / (std::cosh(u) * std::cosh(u));
        double dist = r * 2.0 / (std::exp(2.0 * std::abs(u)) + 1.0);
        if (dist <= 0.0) continue;
        double da = u >= 0 ? (b - a) - dist : dist;
        double db = u >= 0 ? dist : (b - a) - dist;
        sum += w * f(u >= 0 ? b - dist : a + dist, da, db);
    }
    return sum * h * r;
}

inline double tanh_sinh(const std::function<double(double)>& f, double a, double b, int level = 7) {
    return tanh_sinh_ends([&](double x, double, double) { return x <= a || x >= b ? 0.0 : f(x); }, a, b, level);
}

/// Integral over {(u, v): |u| <= 1, lo(u) <= v <= hi(u)}.
inline double nested2(const std::function<double(double, double)>& f, const std::function<double(double)>& lo,
                      const std::function<double(double)>& hi, int level = 7) {
    return tanh_sinh([&](double u) { return tanh_sinh([&](double v) { return f(u, v); }, lo(u), hi(u), level); }, -1.0,
                     1.0, level);
}

/// Integral of f(u, v) over Lambda = {a + (c-a)u^2 <= v^2 <= b + (c-b)u^2, v >= 0}.
inline double lambda_integral(double a, double b, double c, const std::function<double(double, double)>& f,
                              int level = 7) {
    return nested2(
        f, [=](double u) { return std::sqrt(std::max(0.0, a + (c - a) * u * u)); },
        [=](double u) { return std::sqrt(std::max(0.0, b + (c - b) * u * u)); }, level);
}

/// Integral over the upper half disk.
inline double half_disk_integral(const std::function<double(double, double)>& f, int level = 7) {
    return nested2(f, [](double) { return 0.0; }, [](double s) { return std::sqrt(std::max(0.0, 1 - s * s)); }, level);
}

/// Integral of f(x1, x2, t) over the solid of revolution, polar in x with a
/// periodic trapezoid rule in the angle.
inline double rev_integral(double a, double b, double c, const std::function<double(double, double, double)>& f,
                           int level = 6, int angles = 24) {
    double s = 0.0;
    for (int k = 0; k < angles; ++k) {
        double th = 2 * std::numbers::pi * (k + 0.5) / angles;
        double ct = std::cos(th), st = std::sin(th);
        s += tanh_sinh(
            [&](double r) {
                double lo = std::sqrt(std::max(0.0, a + (c - a) * r * r));
                double hi = std::sqrt(std::max(0.0, b + (c - b) * r * r));
                return r * tanh_sinh([&](double t) { return f(r * ct, r * st, t); }, lo, hi, level);
            },
            0.0, 1.0, level);
    }
    return s * 2 * std::numbers::pi / angles;
}

/// Integral over the upper half ball {|y| <= 1, y3 >= 0}.
inline double half_ball_integral(const std::function<double(double, double, double)>& f, int level = 6,
                                 int angles = 24) {
    return rev_integral(0.0, 1.0, 0.0, f, level, angles);
}

/// Central-difference gradient and Hessian of a scalar function of D variables.
template <int D>
struct FiniteDiff {
    std::array<double, D> g{};
    std::array<std::array<double, D>, D> h{};
};

template <int D, class F>
FiniteDiff<D> finite_diff(const F& f, std::array<double, D> x, double step = 1e-4) {
    FiniteDiff<D> r;
    auto at = [&](int i, double di, int j, double dj) {
        auto y = x;
        y[i] += di;
        y[j] += dj;
        return f(y);
    };
    const double f0 = f(x);
    for (int i = 0; i < D; ++i) {
        r.g[i] = (at(i, step, i, 0) - at(i, -step, i, 0)) / (2 * step);
        r.h[i][i] = (at(i, step, i, 0) - 2 * f0 + at(i, -step, i, 0)) / (step * step);
        for (int j = 0; j < i; ++j) {
            double v = (at(i, step, j, step) - at(i, step, j, -step) - at(i, -step, j, step) + at(i, -step, j, -step))
                     / (4 * step * step);
            r.h[i][j] = r.h[j][i] = v;
        }
    }
    return r;
}

/// Operator of the circular cone as displayed for d = 2, with the misprinted
/// tokens read as t d_t and beta. F is given through its jet at (x1, x2, t).
inline double cone_operator(double beta, double gamma, const symdom::Jet3& F, double x1, double x2, double t) {
    const double x[2] = {x1, x2};
    double lap = F.dd(0, 0) + F.dd(1, 1);
    double euler = x1 * F.d(0) + x2 * F.d(1);
    double euler2 = euler;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) euler2 += x[i] * x[j] * F.dd(i, j);
    double mixed = x1 * F.dd(0, 2) + x2 * F.dd(1, 2);
    return lap - euler2 + (1 - t * t) * F.dd(2, 2) + (1 - t * t) * 2.0 / t * mixed
         - (2 * beta + 2 * gamma + 3) * (euler + t * F.d(2)) - t * F.d(2) + (2 * beta + 2) / t * F.d(2);
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * double(g() >> 11) * 0x1.0p-53;
}

}  // namespace oracle
