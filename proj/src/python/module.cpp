#include "ratlin/io.hpp"
#include "ratlin/linearize.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace ratlin;

namespace {

// Exact scalars and points cross the boundary as strings ("3/4", "inf").
Rat rat_arg(const std::string& s) { return parse_rat_or_throw(s); }

Point point_arg(const std::string& s) {
    if (s == "inf") return Point::infinity();
    return Point::at(rat_arg(s));
}

py::dict verdict_dict(const Verdict& v) {
    py::dict d;
    d["holds"] = v.holds;
    d["witness"] = v.witness;
    return d;
}

py::dict structure_dict(const LocalStructure& ls) {
    py::dict d;
    d["pole_mults"] = ls.pole_mults;
    d["zero_mults"] = ls.zero_mults;
    return d;
}

py::list sm_list(const SmithMcMillan& sm) {
    py::list out;
    for (const auto& [eps, psi] : sm.fractions)
        out.append(py::make_tuple(poly_to_string(eps), poly_to_string(psi)));
    return out;
}

py::list eig_list(const std::vector<Eigenvalue>& evs) {
    py::list out;
    for (const auto& ev : evs) {
        py::dict d;
        d["symbolic"] = ev.symbolic;
        if (ev.symbolic) {
            d["factor"] = poly_to_string(ev.factor);
        } else {
            d["point"] = rat_to_string(ev.point);
        }
        d["zero_mults"] = ev.zero_mults;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact local pole/zero structure of rational matrices and pencil linearizations";

    py::class_<Region>(m, "Region")
        .def_static("parse", &io::parse_region, py::arg("text"),
                    "all | only:{a,b,...} | except:{a,b,...}")
        .def("__str__", &Region::to_string)
        .def("__repr__", [](const Region& r) { return "Region(" + r.to_string() + ")"; })
        .def("__eq__", [](const Region& a, const Region& b) { return a == b; });

    py::class_<Poly>(m, "Poly")
        .def_static("parse", &io::parse_poly, py::arg("text"))
        .def("__str__", &poly_to_string)
        .def("__repr__", [](const Poly& p) { return "Poly(" + poly_to_string(p) + ")"; })
        .def("__eq__", [](const Poly& a, const Poly& b) { return a == b; })
        .def_property_readonly("degree",
                               [](const Poly& p) -> py::object {
                                   auto d = p.degree();
                                   return d ? py::cast(*d) : py::none();
                               })
        .def("eval", [](const Poly& p, const std::string& x) { return rat_to_string(p.eval(rat_arg(x))); });

    py::class_<RatFun>(m, "RatFun")
        .def_static("parse", &io::parse_ratfun, py::arg("text"))
        .def("__str__", &ratfun_to_string)
        .def("__repr__", [](const RatFun& f) { return "RatFun(" + ratfun_to_string(f) + ")"; })
        .def("__eq__", [](const RatFun& a, const RatFun& b) { return a == b; })
        .def("valuation_at",
             [](const RatFun& f, const std::string& a) -> py::object {
                 auto v = f.valuation_at(rat_arg(a));
                 return v ? py::cast(*v) : py::none();
             })
        .def("valuation_at_infinity",
             [](const RatFun& f) -> py::object {
                 auto v = f.valuation_at_infinity();
                 return v ? py::cast(*v) : py::none();
             })
        .def("is_proper", &RatFun::is_proper)
        .def("is_biproper", &RatFun::is_biproper);

    py::class_<PolyMatrix>(m, "PolyMatrix")
        .def_static("parse", &io::parse_polymatrix_text, py::arg("text"))
        .def("__str__", [](const PolyMatrix& p) { return io::to_text(p); })
        .def("__eq__", [](const PolyMatrix& a, const PolyMatrix& b) { return a == b; })
        .def_property_readonly("rows", &PolyMatrix::rows)
        .def_property_readonly("cols", &PolyMatrix::cols)
        .def("smith_form",
             [](const PolyMatrix& p) {
                 std::vector<std::string> out;
                 for (const auto& d : smith_form(p).invariants) out.push_back(poly_to_string(d));
                 return out;
             })
        .def("smith_via_minors",
             [](const PolyMatrix& p) {
                 std::vector<std::string> out;
                 for (const auto& d : smith_via_minors(p).invariants) out.push_back(poly_to_string(d));
                 return out;
             })
        .def("local_elementary_divisors",
             [](const PolyMatrix& p, const std::string& a) {
                 return local_elementary_divisors(p, rat_arg(a));
             })
        .def("normal_rank", [](const PolyMatrix& p) { return normal_rank(p); })
        .def("rank_at", [](const PolyMatrix& p, const std::string& a) { return rank_at(p, rat_arg(a)); })
        .def("is_unimodular", [](const PolyMatrix& p) { return is_unimodular(p); })
        .def("is_minimal_basis", [](const PolyMatrix& p) { return is_minimal_basis(p); });

    py::class_<RatMatrix>(m, "RatMatrix")
        .def_static("parse", &io::parse_ratmatrix_text, py::arg("text"))
        .def("__str__", [](const RatMatrix& g) { return io::to_text(g); })
        .def("__eq__", [](const RatMatrix& a, const RatMatrix& b) { return a == b; })
        .def_property_readonly("rows", &RatMatrix::rows)
        .def_property_readonly("cols", &RatMatrix::cols)
        .def("normal_rank", [](const RatMatrix& g) { return normal_rank(g); })
        .def(
            "smith_mcmillan",
            [](const RatMatrix& g, const std::string& region) {
                return sm_list(smith_mcmillan(g, io::parse_region(region)));
            },
            py::arg("region") = "all")
        .def("invariant_orders",
             [](const RatMatrix& g, const std::string& point) {
                 return invariant_orders(g, point_arg(point)).orders;
             })
        .def("local_structure",
             [](const RatMatrix& g, const std::string& point) {
                 return structure_dict(local_structure(g, point_arg(point)));
             })
        .def(
            "eigenvalues",
            [](const RatMatrix& g, const std::string& region) {
                return eig_list(eigenvalues(g, io::parse_region(region)));
            },
            py::arg("region") = "all")
        .def("poly_sp_split",
             [](const RatMatrix& g) {
                 auto [q, sp] = poly_sp_split(g);
                 return py::make_tuple(q, sp);
             })
        .def("g_reversal", [](const RatMatrix& g, int grade) { return g_reversal(g, grade); })
        .def("is_defined_at",
             [](const RatMatrix& g, const std::string& pt) { return is_defined_at(g, point_arg(pt)); })
        .def("is_regular_at",
             [](const RatMatrix& g, const std::string& pt) { return is_regular_at(g, point_arg(pt)); })
        .def("are_equivalent_in", [](const RatMatrix& g, const RatMatrix& h, const std::string& region) {
            return are_equivalent_in(g, h, io::parse_region(region));
        });

    py::class_<SystemMatrix>(m, "SystemMatrix")
        .def_static("parse", &io::parse_psm_text, py::arg("text"))
        .def(py::init([](const PolyMatrix& p, std::vector<std::size_t> srows,
                         std::vector<std::size_t> scols) {
                 return make_psm(p, std::move(srows), std::move(scols));
             }),
             py::arg("matrix"), py::arg("state_rows"), py::arg("state_cols"))
        .def("__str__", [](const SystemMatrix& s) { return io::to_text(s); })
        .def("__eq__", [](const SystemMatrix& a, const SystemMatrix& b) { return a == b; })
        .def_property_readonly("state_dim", &SystemMatrix::state_dim)
        .def("transfer_function", [](const SystemMatrix& s) { return transfer_function(s); })
        .def("is_minimal_at",
             [](const SystemMatrix& s, const std::string& a) { return is_minimal_at(s, rat_arg(a)); })
        .def("is_minimal_in",
             [](const SystemMatrix& s, const std::string& region) {
                 return is_minimal_in(s, io::parse_region(region));
             })
        .def("is_minimal_at_infinity", [](const SystemMatrix& s) { return is_minimal_at_infinity(s); })
        .def("is_strongly_minimal", [](const SystemMatrix& s) { return is_strongly_minimal(s); })
        .def("minimality_defect_points",
             [](const SystemMatrix& s) {
                 const DefectPoints d = minimality_defect_points(s);
                 py::dict out;
                 std::vector<std::string> pts;
                 for (const auto& a : d.points) pts.push_back(rat_to_string(a));
                 std::vector<std::string> fac;
                 for (const auto& f : d.factors) fac.push_back(poly_to_string(f));
                 out["points"] = pts;
                 out["factors"] = fac;
                 return out;
             })
        .def("structure_at",
             [](const SystemMatrix& s, const std::string& a) {
                 const auto rep = structure_at(s, rat_arg(a));
                 py::dict out;
                 out["pole_eds"] = rep.pole_eds;
                 out["zero_eds"] = rep.zero_eds;
                 return out;
             })
        .def("structure_at_infinity",
             [](const SystemMatrix& s) { return structure_at_infinity(s).orders; });

    m.def("parse_poly", &io::parse_poly, py::arg("text"));
    m.def("parse_ratfun", &io::parse_ratfun, py::arg("text"));
    m.def("parse_polymatrix", &io::parse_polymatrix_text, py::arg("text"));
    m.def("parse_ratmatrix", &io::parse_ratmatrix_text, py::arg("text"));
    m.def("parse_psm", &io::parse_psm_text, py::arg("text"));

    m.def(
        "is_linearization_at",
        [](const SystemMatrix& pencil, const RatMatrix& target, const std::string& at) {
            return verdict_dict(is_linearization_at(LinearizationClaim(pencil, target), rat_arg(at)));
        },
        py::arg("pencil"), py::arg("target"), py::arg("at"));
    m.def(
        "is_linearization_in",
        [](const SystemMatrix& pencil, const RatMatrix& target, const std::string& region) {
            return verdict_dict(
                is_linearization_in(LinearizationClaim(pencil, target), io::parse_region(region)));
        },
        py::arg("pencil"), py::arg("target"), py::arg("region") = "all");
    m.def(
        "is_linearization_at_infinity",
        [](const SystemMatrix& pencil, const RatMatrix& target, int grade) {
            return verdict_dict(is_linearization_at_infinity(LinearizationClaim(pencil, target), grade));
        },
        py::arg("pencil"), py::arg("target"), py::arg("grade"));
    m.def(
        "is_g_strong",
        [](const SystemMatrix& pencil, const RatMatrix& target, int grade) {
            return verdict_dict(is_g_strong(LinearizationClaim(pencil, target), grade));
        },
        py::arg("pencil"), py::arg("target"), py::arg("grade"));
    m.def(
        "recover_infinite_orders",
        [](const SystemMatrix& pencil, int grade) { return recover_infinite_orders(pencil, grade).orders; },
        py::arg("pencil"), py::arg("grade"));
    m.def(
        "classify_vs_strong",
        [](const SystemMatrix& pencil, const RatMatrix& target) {
            const auto rep = classify_vs_strong(pencil, target);
            py::dict out;
            out["verdict"] = to_string(rep.verdict);
            out["grade"] = rep.grade;
            out["detail"] = rep.detail;
            return out;
        },
        py::arg("pencil"), py::arg("target"));

    auto build_family = [](const std::string& family, const std::string& params_text) {
        std::istringstream is(params_text);
        const io::ParamFile pf = io::parse_param_file(is);
        py::dict out;
        if (family == "saad") {
            const SaadBuild built = saad_build(io::parse_saad_params(pf));
            out["g"] = built.G;
            out["psm"] = built.psm;
        } else if (family == "subai") {
            const SuBaiBuild built = subai_build(io::parse_subai_params(pf));
            out["g"] = built.G;
            out["psm"] = built.psm_full_state;
            out["dual"] = built.dual_basis;
        } else if (family == "nleigs") {
            const NleigsBasic b = io::parse_nleigs_params(pf);
            const NleigsBuild built = nleigs_build(b);
            out["g"] = built.Q;
            out["psm"] = built.psm_view;
            out["dual"] = built.dual_basis;
            const auto cert = nleigs_minimality(b);
            out["criterion_holds"] = cert.verdict.holds;
            out["region"] = cert.certified_region.to_string();
        } else if (family == "nleigs-lowrank") {
            const NleigsLowRank lr = io::parse_nleigs_lowrank_params(pf);
            const NleigsLowRankBuild built = nleigs_lowrank_build(lr);
            out["g"] = built.Q;
            out["psm"] = built.psm_view;
            out["dual"] = built.dual_basis;
            const auto cert = nleigs_lowrank_minimality(lr);
            out["criterion_holds"] = cert.verdict.holds;
            out["region"] = cert.certified_region.to_string();
        } else {
            throw std::invalid_argument("unknown family: " + family);
        }
        return out;
    };
    m.def("build", build_family, py::arg("family"), py::arg("params_text"),
          "Construct a pencil family instance from a keyed parameter text");
}
