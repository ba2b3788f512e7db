#include "ratlin/io.hpp"
#include "ratlin/linearize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace ratlin;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

std::string first_token(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    is >> tok;
    return tok;
}

std::string join_ints(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return os.str();
}

std::string join_rats(const std::vector<Rat>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << rat_to_string(v[i]);
    return os.str();
}

void print_orders_and_structure(const InvariantOrders& orders) {
    std::cout << "point: " << orders.point.to_string() << "\n";
    std::cout << "orders: " << join_ints(orders.orders) << "\n";
    const LocalStructure ls = local_structure(orders);
    std::cout << "pole-mults: " << join_ints(ls.pole_mults) << "\n";
    std::cout << "zero-mults: " << join_ints(ls.zero_mults) << "\n";
}

void print_verdict(const Verdict& v) {
    std::cout << "holds: " << (v.holds ? "true" : "false") << "\n";
    if (!v.holds) std::cout << "witness: " << v.witness << "\n";
}

// ---- subcommand payloads -------------------------------------------------

struct SmArgs {
    std::string file;
    std::string region = "all";
};

void run_sm(const SmArgs& a) {
    const RatMatrix g = io::parse_ratmatrix_text(slurp(a.file));
    const Region region = io::parse_region(a.region);
    const SmithMcMillan sm = smith_mcmillan(g, region);
    std::cout << "rank: " << sm.rank() << "\n";
    std::cout << "region: " << region.to_string() << "\n";
    for (const auto& [eps, psi] : sm.fractions)
        std::cout << poly_to_string(eps) << " / " << poly_to_string(psi) << "\n";
}

struct StructureArgs {
    std::string file;
    std::string at;
    bool at_inf = false;
    int grade = 1;
    bool grade_given = false;
};

void run_structure(const StructureArgs& a) {
    const std::string text = slurp(a.file);
    const std::string kind = first_token(text);
    if (!a.at_inf == a.at.empty())
        throw std::runtime_error("exactly one of --at and --at-inf is required");
    if (kind == "ratmatrix") {
        const RatMatrix g = io::parse_ratmatrix_text(text);
        const Point pt = a.at_inf ? Point::infinity() : Point::at(parse_rat_or_throw(a.at));
        print_orders_and_structure(invariant_orders(g, pt));
        return;
    }
    if (kind == "polymatrix") {
        // A system matrix file carries the state index lines; fall back to a
        // plain polynomial matrix otherwise.
        if (text.find("staterows:") != std::string::npos) {
            const SystemMatrix psm = io::parse_psm_text(text);
            if (a.at_inf) {
                const InvariantOrders orders = a.grade_given && psm.matrix().is_pencil()
                                                   ? recover_infinite_orders(psm, a.grade)
                                                   : structure_at_infinity(psm);
                print_orders_and_structure(orders);
            } else {
                const auto rep = structure_at(psm, parse_rat_or_throw(a.at));
                std::cout << "point: " << rat_to_string(rep.point) << "\n";
                std::cout << "pole-eds: " << join_ints(rep.pole_eds) << "\n";
                std::cout << "zero-eds: " << join_ints(rep.zero_eds) << "\n";
            }
            return;
        }
        const RatMatrix g = RatMatrix::from_poly(io::parse_polymatrix_text(text));
        const Point pt = a.at_inf ? Point::infinity() : Point::at(parse_rat_or_throw(a.at));
        print_orders_and_structure(invariant_orders(g, pt));
        return;
    }
    throw std::runtime_error("unrecognized matrix header: " + kind);
}

struct MinimalArgs {
    std::string file;
    std::string at;
    std::string region;
    bool at_inf = false;
    bool strong = false;
};

void run_minimal(const MinimalArgs& a) {
    const SystemMatrix psm = io::parse_psm_text(slurp(a.file));
    bool result = false;
    if (!a.at.empty()) {
        result = is_minimal_at(psm, parse_rat_or_throw(a.at));
    } else if (a.at_inf) {
        result = is_minimal_at_infinity(psm);
    } else if (a.strong) {
        result = is_strongly_minimal(psm);
    } else if (!a.region.empty()) {
        result = is_minimal_in(psm, io::parse_region(a.region));
    } else {
        throw std::runtime_error("one of --at, --region, --inf, --strong is required");
    }
    std::cout << "minimal: " << (result ? "true" : "false") << "\n";
    if (psm.state_dim() > 0) {
        const DefectPoints defects = minimality_defect_points(psm);
        std::cout << "defect-points: " << join_rats(defects.points) << "\n";
        std::ostringstream fs;
        for (std::size_t i = 0; i < defects.factors.size(); ++i)
            fs << (i ? " " : "") << poly_to_string(defects.factors[i]);
        std::cout << "defect-factors: " << fs.str() << "\n";
    }
}

struct CheckLinArgs {
    std::string file;
    std::string target;
    std::string region;
    bool at_inf = false;
    int grade = 1;
    int gstrong = 0;
    bool gstrong_given = false;
};

void run_check_lin(const CheckLinArgs& a) {
    const SystemMatrix psm = io::parse_psm_text(slurp(a.file));
    const RatMatrix target = io::parse_ratmatrix_text(slurp(a.target));
    LinearizationClaim claim(psm, target);
    if (a.gstrong_given) {
        print_verdict(is_g_strong(claim, a.gstrong));
    } else if (a.at_inf) {
        print_verdict(is_linearization_at_infinity(claim, a.grade));
    } else if (!a.region.empty()) {
        print_verdict(is_linearization_in(claim, io::parse_region(a.region)));
    } else {
        throw std::runtime_error("one of --region, --inf, --g-strong is required");
    }
}

struct BuildArgs {
    std::string family;
    std::string params;
    std::string prefix;
};

void emit_common(const std::string& prefix, const RatMatrix& g, const PolyMatrix& pencil,
                 const SystemMatrix& psm, const RatMatrix& dual) {
    write_file(prefix + ".g.rm", io::to_text(g));
    write_file(prefix + ".pencil.pm", io::to_text(pencil));
    write_file(prefix + ".psm", io::to_text(psm));
    write_file(prefix + ".dual.rm", io::to_text(dual));
}

void run_build(const BuildArgs& a) {
    std::istringstream is(slurp(a.params));
    const io::ParamFile pf = io::parse_param_file(is);
    std::ostringstream cert;
    if (a.family == "saad") {
        const SaadParams p = io::parse_saad_params(pf);
        const SaadBuild built = saad_build(p);
        const SaadFullRankView view = saad_fullrank_view(p);
        emit_common(a.prefix, built.G, built.psm.matrix(), built.psm, view.dual_basis);
        cert << "family: saad\n";
        const DefectPoints defects = built.psm.state_dim() ? minimality_defect_points(built.psm)
                                                           : DefectPoints{};
        cert << "minimal-region: " << Region::except(defects.points, defects.factors).to_string() << "\n";
        for (std::size_t k = 0; k < p.sigma.size(); ++k)
            cert << "shift " << rat_to_string(p.sigma[k]) << " minimal: "
                 << (is_minimal_at(built.psm, p.sigma[k]) ? "true" : "false") << "\n";
        cert << "infinity-minimal: " << (is_minimal_at_infinity(built.psm) ? "true" : "false") << "\n";
        if (view.view.k1()) {
            const auto reg = linearization_region(view.view, view.dual_basis,
                                                  RatMatrix::identity(built.G.rows()));
            cert << "empty-state-region: " << reg.region.to_string() << "\n";
            const auto gv = linearization_at_infinity_grade(view.view, view.dual_basis,
                                                            RatMatrix::identity(built.G.rows()), 0, 0);
            cert << "infinity-grade: " << gv.grade << " holds: " << (gv.verdict.holds ? "true" : "false")
                 << "\n";
        }
    } else if (a.family == "subai") {
        const SuBaiParams p = io::parse_subai_params(pf);
        const SuBaiBuild built = subai_build(p);
        emit_common(a.prefix, built.G, built.pencil, built.psm_full_state, built.dual_basis);
        cert << "family: subai\n";
        const auto reg = linearization_region(built.fullrank_view, built.dual_basis,
                                              RatMatrix::identity(built.G.rows()));
        cert << "empty-state-region: " << reg.region.to_string() << "\n";
        const std::size_t q = p.D.size() - 1;
        const auto gv = linearization_at_infinity_grade(built.fullrank_view, built.dual_basis,
                                                        RatMatrix::identity(built.G.rows()),
                                                        static_cast<int>(q) - 1, 0);
        cert << "infinity-grade: " << gv.grade << " holds: " << (gv.verdict.holds ? "true" : "false") << "\n";
        cert << "state-view-infinity-grade-1: "
             << (is_minimal_at_infinity(built.psm_full_state) ? "true" : "false") << "\n";
    } else if (a.family == "nleigs") {
        const NleigsBasic b = io::parse_nleigs_params(pf);
        const NleigsBuild built = nleigs_build(b);
        emit_common(a.prefix, built.Q, built.pencil, built.psm_view, built.dual_basis);
        cert << "family: nleigs\n";
        const auto mc = nleigs_minimality(b);
        cert << "criterion-holds: " << (mc.verdict.holds ? "true" : "false") << "\n";
        for (const auto& rep : mc.per_pole)
            cert << "pole " << rat_to_string(rep.pole) << " ok: " << (rep.ok ? "true" : "false") << "\n";
        cert << "state-view-region: " << mc.certified_region.to_string() << "\n";
        if (!mc.caveat.empty()) cert << "caveat: " << mc.caveat << "\n";
        const auto reg = linearization_region(built.fullrank_view, built.dual_basis,
                                              RatMatrix::identity(built.Q.rows()));
        cert << "empty-state-region: " << reg.region.to_string() << "\n";
        const int t = static_cast<int>(b.params.infinite_pole_count()) - 1;
        const auto gv = linearization_at_infinity_grade(built.fullrank_view, built.dual_basis,
                                                        RatMatrix::identity(built.Q.rows()), t, 0);
        cert << "infinity-grade: " << gv.grade << " holds: " << (gv.verdict.holds ? "true" : "false") << "\n";
        const SmithForm pole_structure = nleigs_pole_structure(b);
        if (!pole_structure.invariants.empty())
            cert << "state-pole-polynomial: " << poly_to_string(pole_structure.invariants.back()) << "\n";
    } else if (a.family == "nleigs-lowrank") {
        const NleigsLowRank lr = io::parse_nleigs_lowrank_params(pf);
        const NleigsLowRankBuild built = nleigs_lowrank_build(lr);
        emit_common(a.prefix, built.Q, built.pencil, built.psm_view, built.dual_basis);
        cert << "family: nleigs-lowrank\n";
        const auto mc = nleigs_lowrank_minimality(lr);
        cert << "criterion-holds: " << (mc.verdict.holds ? "true" : "false") << "\n";
        for (const auto& rep : mc.per_pole)
            cert << "pole " << rat_to_string(rep.pole) << " ok: " << (rep.ok ? "true" : "false") << "\n";
        cert << "state-view-region: " << mc.certified_region.to_string() << "\n";
        if (mc.simplified_criterion)
            cert << "simplified-criterion: " << (*mc.simplified_criterion ? "true" : "false") << "\n";
        cert << "square-test-sufficient: " << (mc.square_test_sufficient ? "true" : "false") << "\n";
        if (!mc.caveat.empty()) cert << "caveat: " << mc.caveat << "\n";
        const auto reg = linearization_region(built.fullrank_view, built.dual_basis,
                                              RatMatrix::identity(built.Q.rows()));
        cert << "empty-state-region: " << reg.region.to_string() << "\n";
        bool tail_finite = true;
        for (std::size_t i = lr.split; i + 1 < lr.params.order(); ++i)
            tail_finite = tail_finite && !lr.params.xi[i].is_infinity();
        if (tail_finite) {
            const int t = static_cast<int>(lr.params.infinite_pole_count()) - 1;
            const auto gv = linearization_at_infinity_grade(built.fullrank_view, built.dual_basis,
                                                            RatMatrix::identity(built.Q.rows()), t, 0);
            cert << "infinity-grade: " << gv.grade << " holds: " << (gv.verdict.holds ? "true" : "false")
                 << "\n";
        }
    } else {
        throw std::runtime_error("unknown family: " + a.family);
    }
    write_file(a.prefix + ".cert.txt", cert.str());
    std::cout << "written: " << a.prefix << ".{g.rm,pencil.pm,psm,dual.rm,cert.txt}\n";
}

struct EigArgs {
    std::string file;
    std::string region = "all";
};

void run_eig(const EigArgs& a) {
    const RatMatrix g = io::parse_ratmatrix_text(slurp(a.file));
    const Region region = io::parse_region(a.region);
    for (const auto& ev : eigenvalues(g, region)) {
        if (ev.symbolic) {
            std::cout << "factor " << poly_to_string(ev.factor) << " mults " << join_ints(ev.zero_mults)
                      << "\n";
        } else {
            std::cout << "eigenvalue " << rat_to_string(ev.point) << " mults " << join_ints(ev.zero_mults)
                      << "\n";
        }
    }
}

void run_smith(const std::string& file) {
    const PolyMatrix p = io::parse_polymatrix_text(slurp(file));
    const SmithForm s = smith_form(p);
    std::cout << "rank: " << s.rank() << "\n";
    for (const auto& d : s.invariants) std::cout << poly_to_string(d) << "\n";
}

void run_oracle_smith(const std::string& file) {
    const PolyMatrix p = io::parse_polymatrix_text(slurp(file));
    const SmithForm via_elim = smith_form(p);
    const SmithForm via_minors = smith_via_minors(p);
    auto fmt = [](const SmithForm& s) {
        std::ostringstream os;
        for (std::size_t i = 0; i < s.invariants.size(); ++i)
            os << (i ? " ; " : "") << poly_to_string(s.invariants[i]);
        return os.str();
    };
    std::cout << "elimination: " << fmt(via_elim) << "\n";
    std::cout << "minors: " << fmt(via_minors) << "\n";
    std::cout << "agree: " << (via_elim == via_minors ? "true" : "false") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact local pole/zero structure of rational matrices and their pencil linearizations"};
    app.require_subcommand(1);

    std::string smith_file;
    auto* smith = app.add_subcommand("smith", "Smith normal form of a polynomial matrix");
    smith->add_option("file", smith_file, "polymatrix file")->required();

    SmArgs sm_args;
    auto* sm = app.add_subcommand("sm", "Smith-McMillan form in a region");
    sm->add_option("file", sm_args.file, "ratmatrix file")->required();
    sm->add_option("--region", sm_args.region, "all | only:{..} | except:{..}");

    StructureArgs st_args;
    auto* st = app.add_subcommand("structure", "invariant orders / local structure at a point");
    st->add_option("file", st_args.file, "ratmatrix, polymatrix or system matrix file")->required();
    st->add_option("--at", st_args.at, "finite point");
    st->add_flag("--at-inf", st_args.at_inf, "query at infinity");
    st->add_option("--grade", st_args.grade, "grade for pencil-based recovery at infinity")
        ->each([&](const std::string&) { st_args.grade_given = true; });

    MinimalArgs mn_args;
    auto* mn = app.add_subcommand("minimal", "minimality of a system matrix");
    mn->add_option("file", mn_args.file, "system matrix file")->required();
    mn->add_option("--at", mn_args.at, "finite point");
    mn->add_option("--region", mn_args.region, "region");
    mn->add_flag("--inf", mn_args.at_inf, "at infinity");
    mn->add_flag("--strong", mn_args.strong, "everywhere including infinity");

    CheckLinArgs cl_args;
    auto* cl = app.add_subcommand("check-lin", "verify a linearization claim");
    cl->add_option("file", cl_args.file, "pencil system matrix file")->required();
    cl->add_option("--target", cl_args.target, "target ratmatrix file")->required();
    cl->add_option("--region", cl_args.region, "region");
    cl->add_flag("--inf", cl_args.at_inf, "at infinity");
    cl->add_option("--grade", cl_args.grade, "grade at infinity");
    cl->add_option("--g-strong", cl_args.gstrong, "strong of the given grade")
        ->each([&](const std::string&) { cl_args.gstrong_given = true; });

    BuildArgs bd_args;
    auto* bd = app.add_subcommand("build", "construct a pencil family instance");
    bd->add_option("family", bd_args.family, "saad | subai | nleigs | nleigs-lowrank")->required();
    bd->add_option("params", bd_args.params, "parameter file")->required();
    bd->add_option("-o,--output", bd_args.prefix, "output prefix")->required();

    EigArgs eig_args;
    auto* eg = app.add_subcommand("eig", "eigenvalues (zeros that are not poles)");
    eg->add_option("file", eig_args.file, "ratmatrix file")->required();
    eg->add_option("--region", eig_args.region, "region filter");

    std::string oracle_kind, oracle_file;
    auto* orc = app.add_subcommand("oracle", "independent cross-checks");
    orc->add_option("kind", oracle_kind, "smith")->required();
    orc->add_option("file", oracle_file, "polymatrix file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (smith->parsed()) run_smith(smith_file);
        if (sm->parsed()) run_sm(sm_args);
        if (st->parsed()) run_structure(st_args);
        if (mn->parsed()) run_minimal(mn_args);
        if (cl->parsed()) run_check_lin(cl_args);
        if (bd->parsed()) run_build(bd_args);
        if (eg->parsed()) run_eig(eig_args);
        if (orc->parsed()) {
            if (oracle_kind != "smith") throw std::runtime_error("unknown oracle: " + oracle_kind);
            run_oracle_smith(oracle_file);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
