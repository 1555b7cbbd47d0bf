#pragma once

#include <array>
#include <functional>
#include <memory>

#include "symdom/cubature.hpp"
#include "symdom/disk.hpp"
#include "symdom/triangle.hpp"

namespace symdom {

enum class ParityFamily { EE, OO, EO, OE };

const char* to_string(ParityFamily f);

/// Orthonormal polynomial P_{j,m}(w; s, t) on the square-root domain.
using SqrtEvaluator = std::function<double(int j, int m, double s, double t)>;

/// Bases on sqrt(Omega) for the four weights w_{e1,e2}(s,t) = s^{e1} t^{e2} w(s,t),
/// e_i = -1/2 or +1/2, slot = 2*[e1 > 0] + [e2 > 0]. Missing evaluators are
/// empty functions.
struct SqrtDomainBasis {
    std::array<SqrtEvaluator, 4> orthonormal;
    std::array<double, 4> mass_b{};  // b(w_{e1,e2}) = 1 / integral of w_{e1,e2}
    double b_W = 0.0;                // 1 / integral of W over Omega
};

int sqrt_weight_slot(bool plus_s, bool plus_t);

double parity_basis_eval(const SqrtDomainBasis& base, ParityFamily family, int j, int m, const Point2& pt);

/// Orthonormalized Jacobi basis of u^a1 v^a2 (1-u-v)^a3 composed with a chart
/// (s,t) -> triangle; norms tabulated up to degree mmax.
SqrtEvaluator orthonormal_triangle_evaluator(const TriangleWeightParams& alpha, int mmax,
                                             std::function<Point2(double, double)> chart = nullptr);

/// Instantiation with sqrt(Omega) the standard triangle: parity bases of the
/// disk weight W_B^kappa.
SqrtDomainBasis triangle_sqrt_basis(const DiskWeightParams& kappa, int mmax);

using KernelFn = std::function<double(int n, const Point2& x, const Point2& y)>;

double parity_kernel_eval(const KernelFn& full, int n, const Point2& x, const Point2& y);

using ScalarFn2 = std::function<double(const Point2&)>;

ScalarFn2 even_extend(ScalarFn2 f);

struct ProjValue {
    double value = 0.0;
    bool underresolved = false;
};

/// Degree-n even projection b * sum_q w_q f(q) K(pt, q) over a rule on Lambda,
/// with b the reciprocal of the rule mass.
ProjValue proj_even(const KernelFn& even_kernel, const ScalarFn2& f, int n, const Rule2D& rule, const Point2& pt);

} // namespace symdom
