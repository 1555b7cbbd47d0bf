#pragma once

#include <vector>

#include "symdom/cubature.hpp"
#include "symdom/orthopoly1d.hpp"
#include "symdom/triangle.hpp"

namespace symdom {

struct DiskWeightParams {
    double kappa1 = 0.0, kappa2 = 0.0, kappa3 = 0.0;
    double sum() const { return kappa1 + kappa2 + kappa3; }
};

void validate(const DiskWeightParams& p);

/// G_{j,n}(u,v) = C_{n-j}^{(j+k1+k3+1,k2)}(v) (1-v^2)^{j/2} C_j^{(k3+1/2,k1)}(u/sqrt(1-v^2))
template <class T>
T disk_basis(const DiskWeightParams& p, int j, int n, const T& u, const T& v) {
    T outer = gen_gegenbauer(n - j, j + p.kappa1 + p.kappa3 + 1.0, p.kappa2, v);
    return outer * gen_gegenbauer_h(j, p.kappa3 + 0.5, p.kappa1, u, 1.0 - v * v);
}

/// Basis of the polynomials even in v, written through t2 = v^2:
/// C_{n-2j}^{(2j+k2+k3+1,k1)}(s) (1-s^2)^j P_j^{(k3,k2-1/2)}(2 t2/(1-s^2) - 1).
template <class T>
T disk_even_basis_sq(const DiskWeightParams& p, int j, int n, const T& s, const T& t2) {
    T outer = gen_gegenbauer(n - 2 * j, 2.0 * j + p.kappa2 + p.kappa3 + 1.0, p.kappa1, s);
    T S = 1.0 - s * s;
    return outer * jacobi_h(j, p.kappa3, p.kappa2 - 0.5, 2.0 * t2 - S, S);
}

bool disk_contains(const Point2& pt, double tol = 1e-12);
double disk_weight(const DiskWeightParams& p, const Point2& pt);

double disk_basis_eval(const DiskWeightParams& p, int j, int n, const Point2& pt);
double disk_even_basis_eval(const DiskWeightParams& p, int j, int n, const Point2& pt);

/// Product rule for the disk weight, exact for polynomials of the requested
/// degree; `half` keeps the nodes with v > 0 (for integrands even in v).
Rule2D disk_rule(const DiskWeightParams& p, int degree, bool half = false);

double disk_kernel_eval(const DiskWeightParams& p, int n, const Point2& x, const Point2& y);
double disk_parity_kernel_eval(const DiskWeightParams& p, int n, const Point2& x, const Point2& y);

struct DiskOpOptions {
    bool even_u = false;
    bool even_v = false;
};

double disk_diffop_apply(const DiskWeightParams& p, const Field2& f, const Point2& pt,
                         DiskOpOptions opt = {});

inline double disk_eigenvalue(const DiskWeightParams& p, int n) { return -n * (n + 2.0 * p.sum() + 2.0); }

struct RelationReport {
    double constant = 0.0;
    double max_deviation = 0.0;
};

/// Compares G_{2j+e,n} (e = n mod 2) with T_{j,m}^{(k1-/+1/2,k2-1/2,k3)}(u^2,v^2),
/// times u for odd n.
RelationReport disk_triangle_relation_check(const DiskWeightParams& p, int j, int n,
                                            const std::vector<Point2>& pts);

} // namespace symdom
