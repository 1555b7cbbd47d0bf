#pragma once

#include <array>
#include <functional>
#include <numeric>
#include <vector>

#include "symdom/jet.hpp"

namespace symdom {

/// Weighted cubature rule on a planar or spatial domain; the weight function
/// is folded into `weights`.
template <int D>
struct Cubature {
    std::vector<std::array<double, D>> nodes;
    std::vector<double> weights;
    int exactness = 0;

    std::size_t size() const { return nodes.size(); }
    double mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

    template <class F> double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

using Rule2D = Cubature<2>;
using Rule3D = Cubature<3>;

using Point2 = std::array<double, 2>;
using Point3 = std::array<double, 3>;

/// Functions that can be differentiated twice by propagating jets.
using Field2 = std::function<Jet2(const Jet2&, const Jet2&)>;
using Field3 = std::function<Jet3(const Jet3&, const Jet3&, const Jet3&)>;

inline Jet2 eval_jet(const Field2& f, const Point2& p) {
    return f(Jet2::variable(p[0], 0), Jet2::variable(p[1], 1));
}
inline Jet3 eval_jet(const Field3& f, const Point3& p) {
    return f(Jet3::variable(p[0], 0), Jet3::variable(p[1], 1), Jet3::variable(p[2], 2));
}
inline double eval_value(const Field2& f, const Point2& p) { return f(Jet2(p[0]), Jet2(p[1])).v; }
inline double eval_value(const Field3& f, const Point3& p) {
    return f(Jet3(p[0]), Jet3(p[1]), Jet3(p[2])).v;
}

} // namespace symdom
