// Python bindings for the main operations: bicomplex arithmetic, the
// expression DSL with Wirtinger calculus, the residual checkers, and the
// named verification suites.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bvk/calculus.hpp"
#include "bvk/catalog.hpp"
#include "bvk/errors.hpp"
#include "bvk/pseudoanalytic.hpp"
#include "bvk/schrodinger.hpp"
#include "bvk/suites.hpp"

namespace py = pybind11;
using namespace bvk;

namespace {

Conjugation conj_from_int(int k) {
    if (k < 0 || k > 3) throw ConfigError("conjugation kind must be 0..3");
    return static_cast<Conjugation>(k);
}

ModulusAxis axis_from_string(const std::string& axis) {
    if (axis == "i1") return ModulusAxis::i1;
    if (axis == "i2") return ModulusAxis::i2;
    if (axis == "j") return ModulusAxis::j;
    throw ConfigError("axis must be 'i1', 'i2' or 'j'");
}

Var var_from_string(const std::string& v) {
    if (v == "z1") return Var::z1;
    if (v == "z2") return Var::z2;
    if (v == "cz1") return Var::cz1;
    if (v == "cz2") return Var::cz2;
    throw ConfigError("variable must be z1, z2, cz1 or cz2");
}

WirtingerOp op_from_string(const std::string& op) {
    if (op == "omega") return WirtingerOp::omega;
    if (op == "dag1") return WirtingerOp::dag1;
    if (op == "dag2") return WirtingerOp::dag2;
    if (op == "dag3") return WirtingerOp::dag3;
    throw ConfigError("operator must be omega, dag1, dag2 or dag3");
}

Plane plane_from_string(const std::string& plane) {
    if (plane == "c2") return Plane::c_i2;
    if (plane == "d") return Plane::d;
    throw ConfigError("plane must be 'c2' or 'd'");
}

py::dict report_dict(const ResidualReport& rep) {
    py::dict d;
    d["suite"] = rep.suite;
    d["case_id"] = rep.case_id;
    d["anchor"] = rep.anchor;
    d["grid"] = rep.grid;
    d["max_residual"] = rep.max_residual;
    d["mean_residual"] = rep.mean_residual;
    d["tolerance"] = rep.tolerance;
    d["pass"] = rep.pass;
    d["wall_ms"] = rep.wall_ms;
    d["note"] = rep.note;
    return d;
}

}  // namespace

PYBIND11_MODULE(_bvk, m) {
    m.doc() = "bicomplex pseudoanalytic function theory and the complexified "
              "Schrodinger factorization";

    py::register_exception<NullConeError>(m, "NullConeError");
    py::register_exception<SyntaxError>(m, "DslSyntaxError");
    py::register_exception<EvaluationError>(m, "EvaluationError");
    py::register_exception<DegeneratePairError>(m, "DegeneratePairError");
    py::register_exception<VanishingF0Error>(m, "VanishingF0Error");
    py::register_exception<NotComplexValuedError>(m, "NotComplexValuedError");
    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<Bicomplex>(m, "Bicomplex")
        .def(py::init<>())
        .def(py::init<double, double, double, double>(), py::arg("w0"), py::arg("w1"),
             py::arg("w2"), py::arg("w3"))
        .def_readwrite("w0", &Bicomplex::w0)
        .def_readwrite("w1", &Bicomplex::w1)
        .def_readwrite("w2", &Bicomplex::w2)
        .def_readwrite("w3", &Bicomplex::w3)
        .def_static("from_parts", &Bicomplex::from_parts, py::arg("z1"), py::arg("z2"))
        .def_property_readonly("z1", &Bicomplex::z1)
        .def_property_readonly("z2", &Bicomplex::z2)
        .def("__add__", [](const Bicomplex& a, const Bicomplex& b) { return a + b; })
        .def("__sub__", [](const Bicomplex& a, const Bicomplex& b) { return a - b; })
        .def("__mul__", [](const Bicomplex& a, const Bicomplex& b) { return a * b; })
        .def("__truediv__", [](const Bicomplex& a, const Bicomplex& b) { return a / b; })
        .def("__neg__", [](const Bicomplex& a) { return -a; })
        .def("__eq__", [](const Bicomplex& a, const Bicomplex& b) { return a == b; })
        .def("__pow__", [](const Bicomplex& a, int n) { return pow(a, n); })
        .def("__repr__", [](const Bicomplex& w) { return to_string(w); })
        .def("conjugate", [](const Bicomplex& w, int k) { return conjugate(w, conj_from_int(k)); },
             py::arg("kind"))
        .def("modulus_sq",
             [](const Bicomplex& w, const std::string& axis) {
                 return modulus_sq(w, axis_from_string(axis));
             },
             py::arg("axis"))
        .def("euclid_norm", [](const Bicomplex& w) { return euclid_norm(w); })
        .def("inverse", [](const Bicomplex& w) { return inverse(w); })
        .def("is_null_cone",
             [](const Bicomplex& w, double tol) { return is_null_cone(w, tol); },
             py::arg("tol") = 1e-10)
        .def("to_idempotent",
             [](const Bicomplex& w) {
                 IdempotentPair p = to_idempotent(w);
                 return py::make_tuple(p.p1, p.p2);
             })
        .def("pi_map", [](const Bicomplex& w) { return pi_map(w); });

    m.def("one", &Bicomplex::one);
    m.def("i1", &Bicomplex::i1);
    m.def("i2", &Bicomplex::i2);
    m.def("j", &Bicomplex::j);
    m.def("from_idempotent",
          [](Complex p1, Complex p2) { return from_idempotent({p1, p2}); });
    m.def("parse_bicomplex", [](const std::string& s) { return parse_bicomplex(s); });
    m.def("compose_conjugations",
          [](int a, int b) { return static_cast<int>(compose(conj_from_int(a), conj_from_int(b))); });

    py::class_<Expr>(m, "Expr")
        .def("__repr__", [](const Expr& e) { return to_string(e); })
        .def("__add__", [](const Expr& a, const Expr& b) { return a + b; })
        .def("__sub__", [](const Expr& a, const Expr& b) { return a - b; })
        .def("__mul__", [](const Expr& a, const Expr& b) { return a * b; })
        .def("__truediv__", [](const Expr& a, const Expr& b) { return a / b; })
        .def("__pow__", [](const Expr& a, int n) { return pow(a, n); })
        .def("diff", [](const Expr& e, const std::string& v) {
            return differentiate(e, var_from_string(v));
        })
        .def("conjugate",
             [](const Expr& e, int k) { return conjugate(e, conj_from_int(k)); })
        .def("pi_transport", [](const Expr& e) { return pi_transport(e); })
        .def("__call__", [](const Expr& e, Complex z1, Complex z2) {
            return evaluate(e, z1, z2);
        });

    m.def("parse_expr", [](const std::string& src) { return parse_expr(src); });
    m.def("expr_to_string", [](const Expr& e) { return to_string(e); });
    m.def("constant", [](const Bicomplex& c) { return Expr::constant(c); });
    m.def("variable", [](const std::string& v) { return Expr::variable(var_from_string(v)); });
    m.def("wirtinger_apply", [](const Expr& e, const std::string& op) {
        return wirtinger_apply(e, op_from_string(op));
    });
    m.def("laplacian_c", [](const Expr& e) { return laplacian_c(e); });
    m.def("gradient_c", [](const Expr& e) { return gradient_c(e); });
    m.def("t_derivative", [](const Expr& e) { return t_derivative(e); });
    m.def("catalog_names", [] {
        std::vector<std::string> names;
        for (const auto& entry : function_catalog()) names.push_back(entry.name);
        return names;
    });
    m.def("expr_lookup", [](const std::string& name) { return expr_lookup(name); });

    py::class_<GridDomain>(m, "GridDomain")
        .def_static("defaults", &GridDomain::defaults)
        .def_static("cube", &GridDomain::cube, py::arg("lo"), py::arg("hi"), py::arg("count"))
        .def_static("planar", &GridDomain::planar, py::arg("lo"), py::arg("hi"),
                    py::arg("count"))
        .def("describe", &GridDomain::describe)
        .def("refined", &GridDomain::refined, py::arg("n"))
        .def("restrict_plane", [](const GridDomain& g, const std::string& plane) {
            return restrict_plane(g, plane_from_string(plane));
        });
    m.def("parse_grid_spec", &parse_grid_spec);

    m.def("laplacian_factorization_residual",
          [](const Expr& e, const GridDomain& grid) {
              return report_dict(laplacian_factorization_residual(e, grid));
          },
          py::arg("expr"), py::arg("grid") = GridDomain::defaults());
    m.def("real_expansion_residual",
          [](const Expr& e, const GridDomain& grid) {
              RealExpansionResult res = real_expansion_residual(e, grid);
              py::dict d = report_dict(res.report);
              d["step"] = res.step;
              return d;
          },
          py::arg("expr"), py::arg("grid") = GridDomain::defaults());
    m.def("check_t_holomorphic",
          [](const Expr& e, const GridDomain& grid) {
              HolomorphyCheck h = check_t_holomorphic(e, grid);
              py::dict d = report_dict(h.report);
              d["holomorphic"] = h.holomorphic;
              d["min_abs_det_jacobian"] = h.min_abs_det_jacobian;
              d["derivative"] = to_string(h.derivative);
              return d;
          },
          py::arg("expr"), py::arg("grid") = GridDomain::defaults());
    m.def("dagger_derivative_criterion",
          [](const Expr& e, const GridDomain& grid) {
              DaggerCriterion c = dagger_derivative_criterion(e, grid);
              py::dict d = report_dict(c.report);
              d["residuals"] = c.residuals;
              d["derivative_exists"] = c.derivative_exists;
              d["agrees_with_cr"] = c.agrees_with_cr;
              return d;
          },
          py::arg("expr"), py::arg("grid") = GridDomain::defaults());

    py::class_<GeneratingPair>(m, "GeneratingPair")
        .def(py::init([](const Expr& F, const Expr& G, const std::string& cls,
                         const GridDomain& grid) {
                 PairClass c = cls == "r1"   ? PairClass::r1
                               : cls == "r2" ? PairClass::r2
                               : cls == "r3" ? PairClass::r3
                                             : throw ConfigError("class must be r1, r2 or r3");
                 return GeneratingPair{F, G, c, grid};
             }),
             py::arg("F"), py::arg("G"), py::arg("cls") = "r1",
             py::arg("grid") = GridDomain::defaults());
    m.def("validate_pair", [](const GeneratingPair& p) {
        PairValidation v = validate_pair(p);
        py::dict d = report_dict(v.report);
        d["nondegenerate"] = v.nondegenerate;
        d["min_quantity"] = v.min_quantity;
        return d;
    });
    m.def("decompose", [](const Expr& w, const GeneratingPair& p) {
        Decomposition d = decompose(w, p);
        py::dict out = report_dict(d.report);
        out["phi"] = to_string(d.phi);
        out["psi"] = to_string(d.psi);
        out["reconstruction_residual"] = d.reconstruction_residual;
        out["subalgebra_residual"] = d.subalgebra_residual;
        return out;
    });
    m.def("fg_derivative", [](const Expr& w, const GeneratingPair& p) {
        return fg_derivative(w, p);
    });
    m.def("vekua_residual", [](const Expr& w, const GeneratingPair& p, int k) {
        return report_dict(vekua_residual(w, p, k));
    });
    m.def("pi_correspondence", [](const Expr& w, const GeneratingPair& p) {
        return report_dict(pi_correspondence(w, p).report);
    });

    py::class_<SchrodingerInstance>(m, "SchrodingerInstance")
        .def_property_readonly("nu", [](const SchrodingerInstance& inst) { return inst.nu; })
        .def_property_readonly("f0", [](const SchrodingerInstance& inst) { return inst.f0; })
        .def_readonly("min_abs_f0", &SchrodingerInstance::min_abs_f0);
    m.def("nu_from_f0",
          [](const Expr& f0, const GridDomain& grid) { return nu_from_f0(f0, grid); },
          py::arg("f0"), py::arg("grid") = GridDomain::defaults());
    m.def("f0_lookup", [](const std::string& name) { return f0_lookup(name); });
    m.def("factorization_residual", [](const SchrodingerInstance& inst, const Expr& phi) {
        return report_dict(factorization_residual(inst, phi));
    });
    m.def("darboux_potential",
          [](const SchrodingerInstance& inst) { return darboux_potential(inst).eta; });
    m.def("split_check", [](const SchrodingerInstance& inst, const Expr& W) {
        SplitCheckResult sc = split_check(main_vekua(inst), W);
        py::dict d = report_dict(sc.report);
        d["is_vekua_solution"] = sc.is_vekua_solution;
        d["vekua"] = report_dict(sc.vekua);
        d["scalar_eq"] = report_dict(sc.scalar_eq);
        d["vector_eq"] = report_dict(sc.vector_eq);
        return d;
    });

    m.def("run_suite",
          [](const std::string& suite, unsigned seed, py::object tol, const std::string& grid,
             const std::string& plane, const std::string& f0, const std::string& pair,
             const std::string& w, int refine) {
              SuiteConfig cfg;
              cfg.suite = suite;
              cfg.seed = seed;
              if (!tol.is_none()) cfg.tolerance_override = tol.cast<double>();
              if (!grid.empty()) cfg.grid = parse_grid_spec(grid);
              if (!plane.empty()) cfg.plane = plane_from_string(plane);
              if (!f0.empty()) cfg.f0 = f0;
              if (!pair.empty()) cfg.pair = pair;
              if (!w.empty()) cfg.w = w;
              cfg.refine = refine;
              SuiteResult result = run_suite(cfg);
              py::list reports;
              for (const auto& rep : result.reports) reports.append(report_dict(rep));
              return py::make_tuple(reports, result.all_pass);
          },
          py::arg("suite") = "all", py::arg("seed") = 42, py::arg("tol") = py::none(),
          py::arg("grid") = "", py::arg("plane") = "", py::arg("f0") = "", py::arg("pair") = "",
          py::arg("w") = "", py::arg("refine") = 0);
}
