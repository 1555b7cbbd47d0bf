#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symdom/approx.hpp"
#include "symdom/fullsym.hpp"
#include "symdom/triangle.hpp"

namespace py = pybind11;
using namespace symdom;

namespace {

using Triple = std::array<double, 3>;

DomainParams2 domain2(const Triple& d) {
    DomainParams2 dp{d[0], d[1], d[2]};
    validate(dp);
    return dp;
}

RevDomainParams domain3(const Triple& d) {
    RevDomainParams dp{d[0], d[1], d[2], 2};
    validate(dp);
    return dp;
}

CurvedWeightParams curved(const Triple& k) { return {k[0], k[1], k[2]}; }
BallWeightParams ball(const std::array<double, 2>& w) { return {w[0], w[1]}; }

py::tuple rule_tuple(const std::vector<double>& nodes, const std::vector<double>& weights) {
    return py::make_tuple(nodes, weights);
}

template <int D>
py::tuple rule_tuple(const Cubature<D>& r) {
    return py::make_tuple(r.nodes, r.weights);
}

py::dict convergence_dict(const ConvergenceReport& r) {
    py::dict d;
    d["degrees"] = r.degrees;
    d["l2"] = r.l2;
    d["sup_sampled"] = r.sup_sampled;
    d["decay_order"] = r.decay_order;
    d["strictly_decreasing"] = r.strictly_decreasing;
    d["quad_degree"] = r.quad_degree;
    d["nodes"] = r.nodes;
    return d;
}

Func wrap(const py::function& f, int dim) {
    return [f, dim](const Pt& p) {
        py::gil_scoped_acquire gil;
        return dim == 3 ? f(p[0], p[1], p[2]).cast<double>() : f(p[0], p[1]).cast<double>();
    };
}

}  // namespace

PYBIND11_MODULE(_symdom, m) {
    m.doc() = "Orthogonal polynomials, kernels and expansions on symmetric curved domains";
    m.attr("__version__") = SYMDOM_VERSION;

    py::register_exception<Error>(m, "SymdomError", PyExc_ValueError);

    // One-variable polynomials and rules.
    m.def("jacobi", [](int n, double a, double b, double t) { return jacobi_eval(n, {a, b}, t); }, py::arg("n"),
          py::arg("a"), py::arg("b"), py::arg("t"));
    m.def("gegenbauer", &gegenbauer_eval, py::arg("n"), py::arg("lam"), py::arg("t"));
    m.def("gauss_jacobi", [](int count, double a, double b) {
        QuadRule r = gauss_jacobi_rule(count, {a, b});
        return rule_tuple(r.nodes, r.weights);
    }, py::arg("count"), py::arg("a"), py::arg("b"), "Nodes and weights for (1-t)^a (1+t)^b.");

    // Triangle and disk.
    m.def("triangle_basis", [](const Triple& al, int j, int mdeg, double u, double v) {
        return triangle_basis_eval({al[0], al[1], al[2]}, j, mdeg, {u, v});
    }, py::arg("alpha"), py::arg("j"), py::arg("m"), py::arg("u"), py::arg("v"));
    m.def("triangle_kernel", [](const Triple& al, int n, const Point2& x, const Point2& y) {
        return triangle_kernel_eval({al[0], al[1], al[2]}, n, x, y);
    }, py::arg("alpha"), py::arg("n"), py::arg("x"), py::arg("y"));
    m.def("disk_basis", [](const Triple& k, int j, int n, double u, double v) {
        return disk_basis_eval({k[0], k[1], k[2]}, j, n, {u, v});
    }, py::arg("kappa"), py::arg("j"), py::arg("n"), py::arg("u"), py::arg("v"));
    m.def("disk_kernel", [](const Triple& k, int n, const Point2& x, const Point2& y) {
        return disk_kernel_eval({k[0], k[1], k[2]}, n, x, y);
    }, py::arg("kappa"), py::arg("n"), py::arg("x"), py::arg("y"));
    m.def("disk_parity_kernel", [](const Triple& k, int n, const Point2& x, const Point2& y) {
        return disk_parity_kernel_eval({k[0], k[1], k[2]}, n, x, y);
    }, py::arg("kappa"), py::arg("n"), py::arg("x"), py::arg("y"));

    // Planar curved domains Lambda_{a,b,c}.
    m.def("psi", [](const Triple& d, const Point2& x) { return psi(domain2(d), x); }, py::arg("domain"), py::arg("x"));
    m.def("psi_inv", [](const Triple& d, const Point2& y) { return psi_inv(domain2(d), y); }, py::arg("domain"),
          py::arg("y"));
    m.def("curved_weight", [](const Triple& d, const Triple& k, const Point2& x) {
        return curved_weight(domain2(d), curved(k), x);
    }, py::arg("domain"), py::arg("kappa"), py::arg("x"));
    m.def("q_basis", [](const Triple& d, const Triple& k, int j, int n, const Point2& x) {
        return q_basis_eval(domain2(d), curved(k), j, n, x);
    }, py::arg("domain"), py::arg("kappa"), py::arg("j"), py::arg("n"), py::arg("x"));
    m.def("curved_kernel", [](const Triple& d, const Triple& k, int n, const Point2& x, const Point2& y) {
        return curved_kernel_eval(domain2(d), curved(k), n, x, y);
    }, py::arg("domain"), py::arg("kappa"), py::arg("n"), py::arg("x"), py::arg("y"));
    m.def("lambda_quadrature", [](const Triple& d, const Triple& k, int degree) {
        return rule_tuple(lambda_quadrature(domain2(d), curved(k), degree));
    }, py::arg("domain"), py::arg("kappa"), py::arg("degree"));
    m.def("curved_eigenvalue", [](const Triple& k, int n) { return curved_eigenvalue(curved(k), n); },
          py::arg("kappa"), py::arg("n"));

    // Solids of revolution (x in R^2, t).
    m.def("rev_psi", [](const Triple& d, const Point3& x) { return rev_psi(domain3(d), x); }, py::arg("domain"),
          py::arg("x"));
    m.def("rev_psi_inv", [](const Triple& d, const Point3& y) { return rev_psi_inv(domain3(d), y); },
          py::arg("domain"), py::arg("y"));
    m.def("rev_basis", [](const Triple& d, const std::array<double, 2>& w, const std::array<int, 4>& idx,
                          const Point3& x) {
        return rev_basis_eval(domain3(d), ball(w), {idx[0], idx[1], idx[2], idx[3]}, x);
    }, py::arg("domain"), py::arg("weight"), py::arg("index"), py::arg("x"), "index is (n, k, j, l); weight is (beta, gamma).");
    m.def("rev_indices", [](int n, bool even_only) {
        std::vector<std::array<int, 4>> out;
        for (const auto& i : rev_indices(n, even_only)) out.push_back({i.n, i.k, i.j, i.l});
        return out;
    }, py::arg("n"), py::arg("even_only") = true);
    m.def("rev_kernel", [](const Triple& d, double gamma, int n, const Point3& x, const Point3& y) {
        return rev_kernel_eval(domain3(d), gamma, n, x, y);
    }, py::arg("domain"), py::arg("gamma"), py::arg("n"), py::arg("x"), py::arg("y"));
    m.def("rev_quadrature", [](const Triple& d, const std::array<double, 2>& w, int degree) {
        return rule_tuple(rev_quadrature(domain3(d), ball(w), degree));
    }, py::arg("domain"), py::arg("weight"), py::arg("degree"));
    m.def("rev_distance", [](const Triple& d, const Point3& x, const Point3& y) {
        return rev_distance(domain3(d), x, y);
    }, py::arg("domain"), py::arg("x"), py::arg("y"));
    m.def("localized_kernel", [](const Triple& d, double gamma, int n, const Point3& x, const Point3& y) {
        return localized_kernel_eval(domain3(d), gamma, n, x, y);
    }, py::arg("domain"), py::arg("gamma"), py::arg("n"), py::arg("x"), py::arg("y"));
    m.def("default_cutoff", &default_cutoff, py::arg("t"));

    // Expansions.
    py::class_<OrthoSystem, std::shared_ptr<OrthoSystem>>(m, "System")
        .def_property_readonly("dim", &OrthoSystem::dim)
        .def_property_readonly("max_degree", &OrthoSystem::max_degree)
        .def("__len__", &OrthoSystem::size)
        .def("__repr__", [](const OrthoSystem& s) { return "<System " + s.describe() + ">"; })
        .def("labels", [](const OrthoSystem& s) {
            std::vector<std::array<int, 4>> out;
            for (const auto& l : s.labels()) out.push_back({l.n, l.j, l.k, l.l});
            return out;
        })
        .def("eigenvalue", &OrthoSystem::eigenvalue, py::arg("n"))
        .def("eval", [](const OrthoSystem& s, const Pt& p) {
            std::vector<double> out(s.size());
            s.eval(p, out.data());
            return out;
        }, py::arg("point"), "Orthonormal basis values; planar points use the first two slots.");

    m.def("curved_system", [](const Triple& d, const Triple& k, int N, bool full) {
        return std::const_pointer_cast<OrthoSystem>(make_curved_system(domain2(d), curved(k), N, full));
    }, py::arg("domain"), py::arg("kappa"), py::arg("nmax"), py::arg("full_domain") = false);
    m.def("rev_system", [](const Triple& d, const std::array<double, 2>& w, int N) {
        return std::const_pointer_cast<OrthoSystem>(make_rev_system(domain3(d), ball(w), N));
    }, py::arg("domain"), py::arg("weight"), py::arg("nmax"));

    py::class_<Expansion>(m, "Expansion")
        .def_readonly("coef", &Expansion::coef)
        .def_readonly("degree", &Expansion::degree)
        .def_readonly("underresolved", &Expansion::underresolved)
        .def_readonly("quad_degree", &Expansion::quad_degree)
        .def("norm2", &Expansion::norm2, py::arg("n") = -1)
        .def("partial_sum", [](const Expansion& e, int N, const std::vector<double>& p) {
            Pt q{p.at(0), p.at(1), p.size() > 2 ? p[2] : 0.0};
            return partial_sum_eval(e, N, q);
        }, py::arg("n"), py::arg("point"));

    m.def("project", [](const std::shared_ptr<OrthoSystem>& s, const py::function& f, int q) {
        return project(s, wrap(f, s->dim()), q);
    }, py::arg("system"), py::arg("f"), py::arg("quad_degree") = -1,
          "f takes (u, v) on planar systems and (x1, x2, t) on solids.");
    m.def("convergence_report", [](const std::shared_ptr<OrthoSystem>& s, const py::function& f, int q) {
        return convergence_dict(convergence_report(s, wrap(f, s->dim()), q));
    }, py::arg("system"), py::arg("f"), py::arg("quad_degree") = -1);
    m.def("localization_profile", [](const Triple& d, double gamma, int n, const Point3& center, int bins,
                                     std::size_t samples, std::uint64_t seed) {
        LocalizationReport r = localization_profile(domain3(d), gamma, n, center, bins, samples, seed);
        py::dict out;
        out["bin_lo"] = r.bin_lo;
        out["bin_hi"] = r.bin_hi;
        out["count"] = r.count;
        out["value"] = r.value;
        out["decay_ratio"] = r.decay_ratio();
        out["monotone_envelope"] = r.monotone_envelope();
        return out;
    }, py::arg("domain"), py::arg("gamma"), py::arg("n"), py::arg("center"), py::arg("bins") = 10,
          py::arg("samples") = 20000, py::arg("seed") = 1);
}
