#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "symdom/cubature.hpp"
#include "symdom/curved2d.hpp"
#include "symdom/orthopoly1d.hpp"

namespace symdom {

struct RevDomainParams {
    double a = 0.0, b = 1.0, c = 1.0;
    int d = 2;
    DomainParams2 planar() const { return {a, b, c}; }
};

void validate(const RevDomainParams& dp);

struct BallWeightParams {
    double beta = 0.0, gamma = 0.0;
    double eigen_shift() const { return 2.0 * beta + 2.0 * gamma + 3.0; }
};

void validate(const BallWeightParams& p);

struct RevBasisIndex {
    int n = 0, k = 0, j = 0, l = 1;
    bool operator==(const RevBasisIndex&) const = default;
};

/// dim of the spherical harmonics of degree n on S^{d-1}.
int dim_harmonics(int d, int n);

/// Basis indices of total degree n; `even_only` keeps n - k even (even in the last variable).
std::vector<RevBasisIndex> rev_indices(int n, bool even_only);
void validate(const RevBasisIndex& idx);

/// Solid circle harmonics, normalized to circle-average square one.
template <class T>
T circle_harmonic(int k, int l, const T& x1, const T& x2) {
    if (k == 0) return T(1.0);
    T re = x1, im = x2;
    for (int i = 1; i < k; ++i) {
        T r2 = re * x1 - im * x2;
        im = re * x2 + im * x1;
        re = r2;
    }
    return std::sqrt(2.0) * (l == 1 ? re : im);
}

/// P_m^{(gamma, n-2m)}(2|x|^2 - 1) Y^{n-2m}_l(x)
template <class T>
T ball_classical(double gamma, int n, int m, int l, const T& x1, const T& x2) {
    T r2 = x1 * x1 + x2 * x2;
    return jacobi(m, gamma, double(n - 2 * m), 2.0 * r2 - 1.0) * circle_harmonic(n - 2 * m, l, x1, x2);
}

/// C_{n-k}^{(k+gamma+3/2, beta)}(y3) (1-y3^2)^{k/2} P^k_{l,j}(x/sqrt(1-y3^2)), x = (y1, y2).
template <class T>
T ball3_weighted(const BallWeightParams& p, const RevBasisIndex& i, const T& y1, const T& y2, const T& y3) {
    T S = 1.0 - y3 * y3;
    T r2 = y1 * y1 + y2 * y2;
    T outer = gen_gegenbauer(i.n - i.k, i.k + p.gamma + 1.5, p.beta, y3);
    return outer * jacobi_h(i.j, p.gamma, double(i.k - 2 * i.j), 2.0 * r2 - S, S)
         * circle_harmonic(i.k - 2 * i.j, i.l, y1, y2);
}

/// Same as ball3_weighted for n - k even, written through y3sq = y3^2.
template <class T>
T ball3_even_sq(const BallWeightParams& p, const RevBasisIndex& i, const T& y1, const T& y2, const T& y3sq) {
    T S = 1.0 - y3sq;
    T r2 = y1 * y1 + y2 * y2;
    T outer = gen_gegenbauer_even_sq(i.n - i.k, i.k + p.gamma + 1.5, p.beta, y3sq, T(1.0));
    return outer * jacobi_h(i.j, p.gamma, double(i.k - 2 * i.j), 2.0 * r2 - S, S)
         * circle_harmonic(i.k - 2 * i.j, i.l, y1, y2);
}

template <class T>
T rev_frakt_sq(const RevDomainParams& dp, const T& x1, const T& x2, const T& t) {
    return (t * t + (dp.a - dp.c) * (x1 * x1 + x2 * x2) - dp.a) / (dp.b - dp.a);
}

template <class T>
T rev_basis(const RevDomainParams& dp, const BallWeightParams& p, const RevBasisIndex& i, const T& x1, const T& x2,
            const T& t) {
    return ball3_even_sq(p, i, x1, x2, rev_frakt_sq(dp, x1, x2, t));
}

double circle_harmonic_eval(int k, int l, const Point2& x);
double ball_classical_eval(double gamma, int n, int m, int l, const Point2& x);
double ball3_weighted_eval(const BallWeightParams& p, const RevBasisIndex& idx, const Point3& y);

bool ball3_contains(const Point3& y, double tol = 1e-12);
double ball3_weight(const BallWeightParams& p, const Point3& y);

/// Product rule on the ball for |y3|^{2 beta} (1-|y|^2)^gamma; `half` keeps y3 > 0.
Rule3D ball3_rule(const BallWeightParams& p, int degree, bool half = false);

struct BallOpOptions {
    bool even_y3 = false;
};

double ball3_diffop_apply(const BallWeightParams& p, const Field3& f, const Point3& y, BallOpOptions opt = {});
inline double ball3_eigenvalue(const BallWeightParams& p, int n) { return -n * (n + p.eigen_shift()); }

double ball3_kernel_eval(const BallWeightParams& p, int n, const Point3& y1, const Point3& y2);

bool rev_contains(const RevDomainParams& dp, const Point3& p, double tol = 1e-12);
Point3 rev_psi(const RevDomainParams& dp, const Point3& p);
Point3 rev_psi_inv(const RevDomainParams& dp, const Point3& y);
double rev_weight(const RevDomainParams& dp, const BallWeightParams& p, const Point3& pt);
double rev_basis_eval(const RevDomainParams& dp, const BallWeightParams& p, const RevBasisIndex& idx,
                      const Point3& pt);

/// Rule on the solid of revolution pulled back from the half-ball rule.
Rule3D rev_quadrature(const RevDomainParams& dp, const BallWeightParams& p, int degree);

struct RevOpOptions {
    double t_min = 0.05;
};

struct RevPoly {
    struct Term {
        RevBasisIndex idx;
        double coef;
    };
    std::vector<Term> terms;
};

/// Pullback evaluation (D_B f)(psi(p)) for f given on the ball.
double rev_diffop_apply(const RevDomainParams& dp, const BallWeightParams& p, const Field3& f_ball,
                        const Point3& pt, RevOpOptions opt = {});
double rev_diffop_apply(const RevDomainParams& dp, const BallWeightParams& p, const RevPoly& poly,
                        const Point3& pt, RevOpOptions opt = {});

/// Direct rational-coefficient operator applied to F(x1, x2, t).
double rev_diffop_direct(const RevDomainParams& dp, const BallWeightParams& p, const Field3& F, const Point3& pt,
                         RevOpOptions opt = {});

inline double rev_eigenvalue(const BallWeightParams& p, int n) { return ball3_eigenvalue(p, n); }

/// Kernel of the even space for beta = 0.
double rev_kernel_eval(const RevDomainParams& dp, double gamma, int n, const Point3& x, const Point3& y);

double rev_distance(const RevDomainParams& dp, const Point3& x, const Point3& y);

using Cutoff = std::function<double(double)>;

/// 1 on [0,1], smooth monotone transition on (1,2), 0 from 2 on.
double default_cutoff(double t);
void validate_cutoff(const Cutoff& a);

double localized_kernel_eval(const RevDomainParams& dp, double gamma, int n, const Point3& x, const Point3& y,
                             const Cutoff& cutoff = default_cutoff);

/// L_n with the window and the one-dimensional rule precomputed.
class LocalizedKernel {
public:
    LocalizedKernel(const RevDomainParams& dp, double gamma, int n, const Cutoff& cutoff = default_cutoff);
    double operator()(const Point3& x, const Point3& y) const;

private:
    RevDomainParams dp_;
    int n_;
    double lambda_;
    std::vector<double> window_;
    QuadRule rule_;
};

enum class AngularKind {
    D,              // D_{i,j} = x_i d_j - x_j d_i
    FrakD,          // d_{x_i} + c x_i / t d_t
    FrakDLast,      // (t(x,t) / t) d_t
    FrakDMixed,     // x_i FrakDLast - t(x,t) FrakD_i
    FrakDMixedDisplay,  // -(t(x,t)/t)(t d_i - (1-c) x_i d_t)
    FrakDPair,      // x_i FrakD_j - x_j FrakD_i
    PhiC,           // multiplication by sqrt(1 - (1-c) t^2 - |x|^2)
};

struct AngularOp {
    AngularKind kind = AngularKind::D;
    int i = 1;
    int j = 2;
};

double angular_ops_apply(const RevDomainParams& dp, AngularOp op, const Field3& f, const Point3& p,
                         RevOpOptions opt = {});

} // namespace symdom
