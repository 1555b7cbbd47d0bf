#pragma once

#include <array>
#include <cmath>
#include <type_traits>

namespace symdom {

/// Second-order forward-mode number in N variables: value, gradient and
/// (symmetric) Hessian, propagated exactly through arithmetic.
template <int N>
struct Jet {
    double v = 0.0;
    std::array<double, N> g{};
    std::array<std::array<double, N>, N> h{};

    Jet() = default;
    Jet(double value) : v(value) {}

    static Jet variable(double value, int i) {
        Jet x(value);
        x.g[i] = 1.0;
        return x;
    }

    double d(int i) const { return g[i]; }
    double dd(int i, int j) const { return h[i][j]; }

    Jet& operator+=(const Jet& o) {
        v += o.v;
        for (int i = 0; i < N; ++i) {
            g[i] += o.g[i];
            for (int j = 0; j < N; ++j) h[i][j] += o.h[i][j];
        }
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        v -= o.v;
        for (int i = 0; i < N; ++i) {
            g[i] -= o.g[i];
            for (int j = 0; j < N; ++j) h[i][j] -= o.h[i][j];
        }
        return *this;
    }
    Jet& operator*=(double s) {
        v *= s;
        for (int i = 0; i < N; ++i) {
            g[i] *= s;
            for (int j = 0; j < N; ++j) h[i][j] *= s;
        }
        return *this;
    }
    Jet& operator+=(double s) { v += s; return *this; }
    Jet& operator-=(double s) { v -= s; return *this; }
    Jet& operator*=(const Jet& o) { *this = *this * o; return *this; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a -= s; }
    friend Jet operator-(double s, const Jet& a) { Jet r = -a; return r += s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
    friend Jet operator-(Jet a) { return a *= -1.0; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(a.v * b.v);
        for (int i = 0; i < N; ++i) {
            r.g[i] = a.g[i] * b.v + a.v * b.g[i];
            for (int j = 0; j < N; ++j)
                r.h[i][j] = a.h[i][j] * b.v + a.v * b.h[i][j]
                          + a.g[i] * b.g[j] + a.g[j] * b.g[i];
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
    friend Jet operator/(double s, const Jet& b) { return reciprocal(b) * s; }

    /// Applies a scalar function given its value and first two derivatives at v.
    Jet chain(double f0, double f1, double f2) const {
        Jet r(f0);
        for (int i = 0; i < N; ++i) {
            r.g[i] = f1 * g[i];
            for (int j = 0; j < N; ++j) r.h[i][j] = f1 * h[i][j] + f2 * g[i] * g[j];
        }
        return r;
    }

    friend Jet reciprocal(const Jet& a) {
        double r = 1.0 / a.v;
        return a.chain(r, -r * r, 2.0 * r * r * r);
    }
    friend Jet sqrt(const Jet& a) {
        double s = std::sqrt(a.v);
        return a.chain(s, 0.5 / s, -0.25 / (s * a.v));
    }
    friend Jet exp(const Jet& a) {
        double e = std::exp(a.v);
        return a.chain(e, e, e);
    }
    friend Jet log(const Jet& a) { return a.chain(std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
    friend Jet cos(const Jet& a) {
        double c = std::cos(a.v), s = std::sin(a.v);
        return a.chain(c, -s, -c);
    }
    friend Jet sin(const Jet& a) {
        double c = std::cos(a.v), s = std::sin(a.v);
        return a.chain(s, c, -s);
    }
    friend Jet pow(const Jet& a, double p) {
        double f0 = std::pow(a.v, p);
        return a.chain(f0, p * f0 / a.v, p * (p - 1.0) * f0 / (a.v * a.v));
    }
};

template <class T> struct is_jet : std::false_type {};
template <int N> struct is_jet<Jet<N>> : std::true_type {};

inline double value_of(double x) { return x; }
template <int N> double value_of(const Jet<N>& x) { return x.v; }

using Jet2 = Jet<2>;
using Jet3 = Jet<3>;

} // namespace symdom
