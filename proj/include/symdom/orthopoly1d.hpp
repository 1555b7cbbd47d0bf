#pragma once

#include <cmath>
#include <vector>

#include "symdom/errors.hpp"

namespace symdom {

struct JacobiParams {
    double a = 0.0;
    double b = 0.0;
};

struct GenGegenbauerParams {
    double lambda = 0.0;
    double mu = 0.0;
};

enum class RuleKind { Continuous, PointMassLimit };

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int exactness = 0;
    RuleKind kind = RuleKind::Continuous;

    std::size_t size() const { return nodes.size(); }
    double mass() const;
    template <class F> double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

void validate(const JacobiParams& p);
void validate(const GenGegenbauerParams& p);

// Recurrence coefficients: P_k = (A_k x + B_k) P_{k-1} - C_k P_{k-2}, k >= 2.
struct JacobiStep {
    double A, B, C;
};

inline JacobiStep jacobi_step(int k, double a, double b) {
    double s = 2.0 * k + a + b;
    double den = 2.0 * k * (k + a + b) * (s - 2.0);
    return {(s - 1.0) * s * (s - 2.0) / den,
            (s - 1.0) * (a * a - b * b) / den,
            2.0 * (k + a - 1.0) * (k + b - 1.0) * s / den};
}

/// Homogenized Jacobi polynomial s^n P_n^{(a,b)}(x/s); a polynomial in (x, s)
/// that stays finite as s -> 0.
template <class T>
T jacobi_h(int n, double a, double b, const T& x, const T& s) {
    if (n == 0) return T(1.0);
    T p0(1.0);
    T p1 = ((a + b + 2.0) * x + (a - b) * s) * 0.5;
    if (n == 1) return p1;
    T s2 = s * s;
    for (int k = 2; k <= n; ++k) {
        JacobiStep c = jacobi_step(k, a, b);
        T p2 = (c.A * x + c.B * s) * p1 - c.C * (s2 * p0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// Values s^k P_k^{(a,b)}(x/s) for k = 0..n written to out[0..n].
template <class T>
void jacobi_h_all(int n, double a, double b, const T& x, const T& s, T* out) {
    out[0] = T(1.0);
    if (n == 0) return;
    out[1] = ((a + b + 2.0) * x + (a - b) * s) * 0.5;
    T s2 = s * s;
    for (int k = 2; k <= n; ++k) {
        JacobiStep c = jacobi_step(k, a, b);
        out[k] = (c.A * x + c.B * s) * out[k - 1] - c.C * (s2 * out[k - 2]);
    }
}

template <class T>
T jacobi(int n, double a, double b, const T& x) {
    if (n == 0) return T(1.0);
    T p0(1.0);
    T p1 = ((a + b + 2.0) * x + (a - b)) * 0.5;
    for (int k = 2; k <= n; ++k) {
        JacobiStep c = jacobi_step(k, a, b);
        T p2 = (c.A * x + c.B) * p1 - c.C * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// Classical Gegenbauer C_n^lambda.
template <class T>
T gegenbauer(int n, double lambda, const T& x) {
    if (n == 0) return T(1.0);
    T c0(1.0);
    T c1 = (2.0 * lambda) * x;
    for (int k = 2; k <= n; ++k) {
        T c2 = ((2.0 * (k + lambda - 1.0)) * x * c1 - (k + 2.0 * lambda - 2.0) * c0) / double(k);
        c0 = c1;
        c1 = c2;
    }
    return c1;
}

/// (lambda+mu)_m / (mu+1/2)_m
double gen_gegenbauer_ratio(int m, double lambda, double mu);

/// Homogenized generalized Gegenbauer s^n C_n^{(lambda,mu)}(x/s), taking S = s^2.
template <class T>
T gen_gegenbauer_h(int n, double lambda, double mu, const T& x, const T& S) {
    int m = n / 2;
    T X = 2.0 * (x * x) - S;
    if (n % 2 == 0)
        return gen_gegenbauer_ratio(m, lambda, mu) * jacobi_h(m, lambda - 0.5, mu - 0.5, X, S);
    return gen_gegenbauer_ratio(m + 1, lambda, mu) * (x * jacobi_h(m, lambda - 0.5, mu + 0.5, X, S));
}

template <class T>
T gen_gegenbauer(int n, double lambda, double mu, const T& x) {
    return gen_gegenbauer_h(n, lambda, mu, x, T(1.0));
}

/// Even-degree generalized Gegenbauer written as a function of x^2 only.
template <class T>
T gen_gegenbauer_even_sq(int n, double lambda, double mu, const T& x2, const T& S) {
    int m = n / 2;
    return gen_gegenbauer_ratio(m, lambda, mu) * jacobi_h(m, lambda - 0.5, mu - 0.5, 2.0 * x2 - S, S);
}

// Checked scalar entry points.
double jacobi_eval(int n, const JacobiParams& p, double t);
double jacobi_deriv(int n, const JacobiParams& p, double t, int order);
double gegenbauer_eval(int n, double lambda, double t);
double zn_eval(int n, double lambda, double t);
double gen_gegenbauer_eval(int n, const GenGegenbauerParams& p, double t);

/// Z_k^lambda(t) for k = 0..n.
void zn_all(int n, double lambda, double t, double* out);

QuadRule gauss_jacobi_rule(int m, const JacobiParams& p);

/// Symmetric rule for |t|^{2mu}(1-t^2)^{lambda-1/2} with 2*pairs nodes and exactness 4*pairs-1.
QuadRule gen_gegenbauer_rule(int pairs, const GenGegenbauerParams& p);

enum class LimitKind { HalfEndpointAverage, RightEndpoint };
QuadRule limit_rule(LimitKind kind);

/// Normalized (mass one) rule for c (1-t^2)^{alpha-1/2}, alpha >= -1/2; the
/// endpoint average at alpha = -1/2.
QuadRule symmetric_measure_rule(double alpha, int m);

/// Normalized rule for c (1+t)(1-t^2)^{kappa-1}, kappa >= 0; the right
/// endpoint mass at kappa = 0.
QuadRule shifted_measure_rule(double kappa, int m);

/// log of 2^{a+b+1} Gamma(a+1) Gamma(b+1) / Gamma(a+b+2)
double jacobi_log_mass(double a, double b);

} // namespace symdom
