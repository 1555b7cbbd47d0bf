#pragma once

#include <vector>

#include "symdom/cubature.hpp"
#include "symdom/disk.hpp"
#include "symdom/fullsym.hpp"

namespace symdom {

struct DomainParams2 {
    double a = 0.0, b = 1.0, c = 0.0;
};

void validate(const DomainParams2& dp);

/// Weight W^kappa_{a,b,c}; (beta, gamma) stands for kappa = (0, beta, gamma).
struct CurvedWeightParams {
    double kappa1 = 0.0, kappa2 = 0.0, kappa3 = 0.0;

    static CurvedWeightParams from_beta_gamma(double beta, double gamma) { return {0.0, beta, gamma}; }
    DiskWeightParams disk() const { return {kappa1, kappa2, kappa3}; }
    double eigen_shift() const { return 2.0 * kappa2 + 2.0 * kappa3 + 2.0; }
};

void validate(const CurvedWeightParams& p);

/// Squared quadratic map t(u,v)^2 = z(u^2, v^2), a polynomial in (u, v).
template <class T>
T frakt_sq(const DomainParams2& dp, const T& u, const T& v) {
    return (v * v + (dp.a - dp.c) * (u * u) - dp.a) / (dp.b - dp.a);
}

/// Q_{j,n}(u,v): the even disk basis composed with psi; polynomial in (u, v).
template <class T>
T q_basis(const DomainParams2& dp, const CurvedWeightParams& p, int j, int n, const T& u, const T& v) {
    return disk_even_basis_sq(p.disk(), j, n, u, frakt_sq(dp, u, v));
}

bool domain_contains(const DomainParams2& dp, const Point2& pt, bool half, double tol = 1e-12);
Point2 z_affine(const DomainParams2& dp, const Point2& pt);
Point2 z_affine_inv(const DomainParams2& dp, const Point2& st);
double frakt(const DomainParams2& dp, const Point2& pt);
Point2 psi(const DomainParams2& dp, const Point2& pt);
Point2 psi_inv(const DomainParams2& dp, const Point2& st);

double curved_weight(const DomainParams2& dp, const CurvedWeightParams& p, const Point2& pt);
double q_basis_eval(const DomainParams2& dp, const CurvedWeightParams& p, int j, int n, const Point2& pt);

/// Rule on Lambda (or, with full_domain, on Omega) pulled back from a disk
/// product rule; exact for even polynomials of the requested degree.
Rule2D lambda_quadrature(const DomainParams2& dp, const CurvedWeightParams& p, int degree, bool full_domain = false);

struct CurvedOpOptions {
    double v_min = 0.05;
};

/// Pullback evaluation: f is given on the disk and the result is
/// (D_B f)(psi(pt)), i.e. the curved operator applied to f o psi at pt.
double curved_diffop_apply(const DomainParams2& dp, const CurvedWeightParams& p, const Field2& f_disk,
                           const Point2& pt, CurvedOpOptions opt = {});

/// Polynomial on Lambda written in the Q basis.
struct CurvedPoly {
    struct Term {
        int j, n;
        double coef;
    };
    std::vector<Term> terms;
};

double curved_diffop_apply(const DomainParams2& dp, const CurvedWeightParams& p, const CurvedPoly& poly,
                           const Point2& pt, CurvedOpOptions opt = {});

enum class DisplayReading {
    Corrected,  // dangling term dropped, sign of the (2|kappa|+3) term flipped
    Literal,    // dangling term dropped only
};

/// Direct evaluation of the rational-coefficient operator on a function F of (u, v).
double curved_diffop_direct(const DomainParams2& dp, const CurvedWeightParams& p, const Field2& F,
                            const Point2& pt, DisplayReading reading = DisplayReading::Corrected,
                            CurvedOpOptions opt = {});

inline double curved_eigenvalue(const CurvedWeightParams& p, int n) { return -n * (n + p.eigen_shift()); }

double curved_kernel_eval(const DomainParams2& dp, const CurvedWeightParams& p, int n, const Point2& x,
                          const Point2& y);

/// Parity bases of W^kappa_{a,b,c} built from the triangle T_{a,b,c}; only the
/// EE and OE families (even in v) have classical square-root-domain weights.
SqrtDomainBasis curved_sqrt_basis(const DomainParams2& dp, const CurvedWeightParams& p, int mmax);

} // namespace symdom
