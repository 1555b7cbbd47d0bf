#pragma once

#include <functional>
#include <vector>

#include "symdom/cubature.hpp"
#include "symdom/orthopoly1d.hpp"

namespace symdom {

struct TriangleWeightParams {
    double alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0;
    double sum() const { return alpha1 + alpha2 + alpha3; }
};

void validate(const TriangleWeightParams& p);

/// T_{j,m}(u,v) = P_{m-j}^{(2j+a1+a3+1,a2)}(2v-1) (1-v)^j P_j^{(a3,a1)}(2u/(1-v)-1)
template <class T>
T triangle_basis(const TriangleWeightParams& p, int j, int m, const T& u, const T& v) {
    T outer = jacobi(m - j, 2.0 * j + p.alpha1 + p.alpha3 + 1.0, p.alpha2, 2.0 * v - 1.0);
    T s = 1.0 - v;
    return outer * jacobi_h(j, p.alpha3, p.alpha1, 2.0 * u - s, s);
}

bool triangle_contains(const Point2& pt, double tol = 1e-12);

double triangle_weight(const TriangleWeightParams& p, const Point2& pt);
double triangle_norm_const(const TriangleWeightParams& p);
double triangle_basis_eval(const TriangleWeightParams& p, int j, int m, const Point2& pt);

/// Collapsed product rule on the triangle for the weight u^a1 v^a2 (1-u-v)^a3.
Rule2D triangle_rule(const TriangleWeightParams& p, int degree);

/// Closed-form kernel; rule_res < 0 selects n + 2 points per axis.
double triangle_kernel_eval(const TriangleWeightParams& p, int n, const Point2& x, const Point2& y,
                            int rule_res = -1);

struct TriangleTerm {
    int j, m;
    double coef;
};

/// A polynomial written in the (unnormalized) T basis.
struct TriangleExpansion {
    TriangleWeightParams alpha;
    std::vector<TriangleTerm> terms;

    template <class T> T operator()(const T& u, const T& v) const {
        T s(0.0);
        for (const auto& t : terms) s += t.coef * triangle_basis(alpha, t.j, t.m, u, v);
        return s;
    }
};

TriangleExpansion triangle_expand(const TriangleWeightParams& p, const std::function<double(double, double)>& f,
                                  int mmax);

double triangle_diffop_apply(const TriangleWeightParams& p, const Field2& f, const Point2& pt);
double triangle_diffop_apply(const TriangleWeightParams& p, const TriangleExpansion& poly, const Point2& pt);

inline double triangle_eigenvalue(const TriangleWeightParams& p, int m) {
    return -m * (m + p.sum() + 2.0);
}

} // namespace symdom
