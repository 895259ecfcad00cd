// Command-line frontend: every command prints one JSON (or text) report.
// Exit status: 0 success, 1 verdict-level rejection, 2 usage or I/O error.

#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "nilforge/homogeneity.hpp"
#include "nilforge/io.hpp"
#include "nilforge/milnor.hpp"
#include "nilforge/nilpoly.hpp"

#ifndef NILFORGE_VERSION
#define NILFORGE_VERSION "0.0.0"
#endif

using namespace nilforge;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised after a report is complete but the verdict is a rejection.
constexpr int kRejected = 1;
constexpr int kUsage = 2;

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    EVP_DigestUpdate(ctx, data.data(), data.size());
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream out;
    for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return out.str();
}

// Every byte of input that influences a report, in read order.
struct Inputs {
    std::string bytes;

    std::string text(const std::string& path) {
        std::string t = read_text(path);
        bytes += t;
        return t;
    }
    Json json(const std::string& path) { return parse_json(text(path)); }
    void literal(const std::string& s) { bytes += s + '\n'; }
};

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Json triple_json(const std::optional<std::array<std::size_t, 3>>& t) {
    if (!t) return nullptr;
    return Json::array({(*t)[0] + 1, (*t)[1] + 1, (*t)[2] + 1});
}

Vec parse_vec_list(const std::string& s) {
    Vec v;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            v.push_back(parse_rational(item));
        } catch (const std::exception&) {
            throw UsageError("bad rational in list: " + item);
        }
    }
    return v;
}

Rational parse_rational_arg(const std::string& s) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw UsageError("bad rational: " + s);
    }
}

struct LoadedAlgebra {
    NilAlgebra algebra;
    Pointing pointing;
};

LoadedAlgebra load_algebra(Inputs& in, const std::string& path) {
    Json j = in.json(path);
    Pointing p;
    NilAlgebra a = algebra_from_json(j, &p);
    if (p.omega.empty()) p = default_pointing(a);
    return {std::move(a), std::move(p)};
}

// A nil-polynomial document, or an algebra document (default pointing).
MPoly load_nil_poly(Inputs& in, const std::string& path) {
    Json j = in.json(path);
    if (j.contains("products")) {
        Pointing p;
        NilAlgebra a = algebra_from_json(j, &p);
        return nil_polynomial(a, p.omega.empty() ? std::nullopt : std::optional<Pointing>(p)).p;
    }
    MPoly p = poly_from_json(j);
    check_nil_polynomial(p);
    return p;
}

Json spectrum_json(const std::vector<Rational>& v) { return vec_json(v); }

// ---------------------------------------------------------------- commands

Json cmd_milnor(Inputs& in, const std::string& poly, unsigned trunc_max, std::optional<unsigned> start, int&) {
    in.literal(poly);
    auto t0 = std::chrono::steady_clock::now();
    MilnorOptions opts;
    opts.trunc_max = trunc_max;
    opts.start = start;
    MilnorResult r = milnor_algebra(parse_poly(poly), opts);
    Invariants inv = invariants(r.algebra);
    Pointing p = default_pointing(r.algebra);
    Json j;
    j["input"] = parse_poly(poly).to_string();
    j["dim"] = r.algebra.dim();
    j["nil_index"] = inv.nil_index;
    j["hilbert"] = inv.hilbert;
    j["basis"] = r.algebra.labels();
    j["truncation"] = r.truncation;
    Json res = Json::array();
    for (std::size_t i = 0; i < r.residue.size(); ++i)
        if (r.residue[i] != 0) res.push_back(Json::array({r.algebra.labels()[i], to_string(r.residue[i])}));
    j["residue"] = res;
    j["in_jacobi"] = r.in_jacobi;
    j["associative"] = r.report.associative;
    j["admissible"] = r.report.admissible;
    j["algebra"] = algebra_json(r.algebra, &p);
    j["timings_ms"] = {{"total", elapsed_ms(t0)}};
    return j;
}

Json cmd_verify(Inputs& in, const std::string& path, int& status) {
    LoadedAlgebra la{NilAlgebra(algebra_from_json(in.json(path))), {}};
    AlgebraReport r = verify_algebra(la.algebra);
    Json j;
    j["dim"] = la.algebra.dim();
    j["associative"] = r.associative;
    j["failing_triple"] = triple_json(r.failing_triple);
    j["nilpotent"] = r.nilpotent;
    j["nil_index"] = r.nil_index;
    j["admissible"] = r.admissible;
    if (!r.associative || !r.nilpotent) status = kRejected;
    return j;
}

Json cmd_invariants(Inputs& in, const std::string& path, int& status) {
    NilAlgebra a = algebra_from_json(in.json(path));
    AlgebraReport rep = verify_algebra(a);
    Json j;
    if (!rep.associative || !rep.nilpotent) {
        j["associative"] = rep.associative;
        j["nilpotent"] = rep.nilpotent;
        status = kRejected;
        return j;
    }
    Invariants inv = invariants(a);
    std::vector<std::size_t> pd, sd;
    for (const auto& s : inv.powers) pd.push_back(s.dim());
    for (const auto& s : inv.socles) sd.push_back(s.dim());
    bool identity = inv.admissible;
    if (inv.admissible)
        for (std::size_t k = 1; k <= inv.nil_index; ++k)
            identity = identity && inv.socles[k].dim() + inv.powers[k - 1].dim() == a.dim() + 1;
    j["dim"] = a.dim();
    j["nil_index"] = inv.nil_index;
    j["hilbert"] = inv.hilbert;
    j["hilbert_symmetric"] = inv.hilbert_symmetric;
    j["power_dims"] = pd;
    j["socle_dims"] = sd;
    j["annihilator_dim"] = inv.annihilator.dim();
    j["admissible"] = inv.admissible;
    j["socle_power_identity"] = identity;
    return j;
}

Json cmd_nilpoly(Inputs& in, const std::string& path, const std::string& milnor, const std::string& pointing,
                 int&) {
    NilAlgebra a;
    std::optional<Pointing> p;
    if (!milnor.empty()) {
        in.literal(milnor);
        a = milnor_algebra(parse_poly(milnor)).algebra;
    } else {
        LoadedAlgebra la = load_algebra(in, path);
        a = la.algebra;
        p = la.pointing;
    }
    if (!pointing.empty()) {
        in.literal(pointing);
        p = Pointing{parse_vec_list(pointing)};
        if (p->omega.size() != a.dim()) throw UsageError("pointing length differs from dim");
    }
    NilPolynomial np = nil_polynomial(a, p);
    Json j = poly_json(np.p);
    j["degree"] = np.p.degree();
    j["pointing"] = vec_json(np.pointing->omega);
    Json wb = Json::array();
    for (const auto& v : np.w_basis) wb.push_back(vec_json(v));
    j["w_basis"] = wb;
    j["quadratic_nondegenerate"] = np.p.nvars() == 0 || determinant(gram_matrix(np.p)) != 0;
    j["reconstruction_isomorphism"] = np.p.nvars() == 0 || reconstruction_isomorphism_holds(a, np);
    return j;
}

Json cmd_reconstruct(Inputs& in, const std::string& path, int& status) {
    MPoly p = load_nil_poly(in, path);
    MPoly q = p.homogeneous_part(2), c = p.homogeneous_part(3);
    Reconstruction r = reconstruct_algebra(q, c);
    Json j;
    j["accepted"] = r.accepted;
    j["associative"] = r.report.associative;
    j["nilpotent"] = r.report.nilpotent;
    j["failing_triple"] = triple_json(r.failing_triple);
    if (r.accepted) {
        Pointing pt{unit_vec(r.algebra.dim(), r.algebra.dim() - 1)};
        Json alg = algebra_json(r.algebra, &pt);
        for (auto& [k, v] : alg.items()) j[k] = v;
    } else {
        status = kRejected;
    }
    j["vars"] = p.vars();
    j["q"] = q.to_string();
    j["c"] = c.to_string();
    return j;
}

Json cmd_regenerate(Inputs& in, const std::string& path, int& status) {
    Json doc = in.json(path);
    MPoly q, c;
    if (doc.contains("q") && doc.contains("c")) {
        VarList vars = doc.at("vars").get<VarList>();
        q = parse_poly(doc.at("q").get<std::string>(), vars);
        c = parse_poly(doc.at("c").get<std::string>(), vars);
    } else {
        MPoly p = poly_from_json(doc);
        q = p.homogeneous_part(2);
        c = p.homogeneous_part(3);
    }
    Reconstruction r = reconstruct_algebra(q, c);
    if (!r.accepted) {
        status = kRejected;
        Json j;
        j["accepted"] = false;
        j["failing_triple"] = triple_json(r.failing_triple);
        return j;
    }
    return poly_json(regenerate_from_2_3(q, c));
}

Json cmd_homogeneity(Inputs& in, const std::string& path, bool no_cross, const std::string& checkpoint,
                     std::optional<std::size_t> ell, bool with_aff, int&) {
    MPoly p = load_nil_poly(in, path);
    auto t0 = std::chrono::steady_clock::now();
    std::ofstream ck;
    HomogeneityOptions opts;
    opts.cross_check = !no_cross;
    if (!checkpoint.empty()) {
        ck.open(checkpoint);
        if (!ck) throw FormatError("cannot write " + checkpoint);
        opts.on_verdict = [&](std::size_t l, bool ok) { ck << "ell " << l << ' ' << (ok ? "solvable" : "unsolvable") << std::endl; };
    }
    HomogeneityReport rep = homogeneity_report(std::vector<MPoly>{p}, opts);
    double t_solve = elapsed_ms(t0);
    if (ell && (*ell < 1 || *ell > rep.r)) throw UsageError("--ell out of range");
    Json j;
    j["r"] = rep.r;
    j["unknowns"] = rep.unknowns;
    j["equations"] = rep.equations;
    j["per_ell"] = rep.per_ell;
    if (ell) j["selected"] = {{"ell", *ell}, {"solvable", bool(rep.per_ell[*ell - 1])}};
    j["orbit_dim"] = rep.orbit_dim;
    j["aff_dim"] = rep.aff_dim;
    j["verdict"] = to_string(rep.verdict);
    j["cross_check"] = rep.cross_check ? Json(*rep.cross_check) : Json(nullptr);
    j["scope"] = rep.scope;
    Json timings = {{"solve", t_solve}};
    if (with_aff) {
        auto t1 = std::chrono::steady_clock::now();
        auto basis = aff_lie_algebra(p, &rep);
        bool all = true;
        for (const auto& b : basis) all = all && graph_tangent(p, b);
        j["aff_tangency_verified"] = all;
        timings["aff"] = elapsed_ms(t1);
    }
    j["timings_ms"] = timings;
    return j;
}

Json cmd_grading(Inputs& in, const std::string& path, const std::string& witness, int&) {
    MPoly p = load_nil_poly(in, path);
    std::optional<Grading> w;
    if (!witness.empty()) w = grading_from_json(in.json(witness));
    GradingReport r = grading_necessary_test(p, w);
    Json j;
    j["system_solvable"] = r.system_solvable;
    j["solution_space_dim"] = r.solution_space_dim;
    j["verdict"] = to_string(r.verdict);
    j["eigenvalues"] = spectrum_json(r.eigenvalues);
    j["witness"] = r.witness ? grading_json(*r.witness) : Json(nullptr);
    return j;
}

Json cmd_derivations(Inputs& in, const std::string& path, bool with_basis, int& status) {
    NilAlgebra a = algebra_from_json(in.json(path));
    AlgebraReport rep = verify_algebra(a);
    Json j;
    if (!rep.associative || !rep.nilpotent) {
        j["associative"] = rep.associative;
        j["nilpotent"] = rep.nilpotent;
        status = kRejected;
        return j;
    }
    DerivationResult d = derivation_algebra(a);
    j["dim"] = d.dim();
    if (rep.admissible) {
        DerivationBounds b = derivation_bounds(a, d.dim());
        j["ty_bound"] = b.ty_bound;
        j["ty_holds"] = b.ty_holds;
        j["quartic_bound"] = b.quartic_bound;
        j["quartic_holds"] = b.quartic_holds;
    }
    if (with_basis) {
        Json basis = Json::array();
        for (const auto& m : d.basis) basis.push_back(matrix_json(m));
        j["basis"] = basis;
    }
    return j;
}

Json cmd_smash(Inputs& in, const std::string& a_path, const std::string& b_path, int&) {
    LoadedAlgebra a = load_algebra(in, a_path), b = load_algebra(in, b_path);
    PointedAlgebra s = smash_product({a.algebra, a.pointing}, {b.algebra, b.pointing});
    return algebra_json(s.algebra, &s.pointing);
}

Json cmd_witness(Inputs& in, const std::string& mode, const std::string& path, const std::string& target,
                 const std::string& witness, const std::string& point, unsigned seed, const std::string& grading,
                 int& status) {
    Json j;
    j["mode"] = mode;
    if (mode == "equivalence") {
        MPoly p = poly_from_json(in.json(path));
        if (target.empty() || witness.empty()) throw UsageError("equivalence mode needs --target and --witness");
        MPoly pt = poly_from_json(in.json(target));
        Json w = in.json(witness);
        EquivalenceWitness ew{matrix_from_json(w.at("alpha")), rational_from_json(w.at("epsilon"))};
        if (ew.epsilon == 0) throw UsageError("epsilon must be nonzero");
        bool ok = equivalence_witness_check(p, pt, ew);
        j["holds"] = ok;
        if (!ok) status = kRejected;
        return j;
    }
    WitnessMode m;
    if (mode == "graded") m = WitnessMode::graded;
    else if (mode == "socle3") m = WitnessMode::socle3;
    else if (mode == "socle4") m = WitnessMode::socle4;
    else throw UsageError("unknown witness mode " + mode);
    LoadedAlgebra la = load_algebra(in, path);
    std::optional<Grading> g;
    if (m == WitnessMode::graded) {
        if (!grading.empty()) {
            g = grading_from_json(in.json(grading));
        } else {
            g = grading_index3(la.algebra);
        }
        la.pointing = graded_pointing(la.algebra, *g);
    }
    Vec a;
    if (!point.empty()) {
        in.literal(point);
        a = parse_vec_list(point);
    } else {
        in.literal("seed " + std::to_string(seed));
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
        if (m == WitnessMode::graded) {
            Vec coeffs;
            for (std::size_t i = 0; i + 1 < la.algebra.dim(); ++i) coeffs.push_back(make_rational(num(rng), den(rng)));
            a = point_on_hypersurface(la.algebra, la.pointing, coeffs);
        } else {
            // The socle modes only cover points whose exp lies in N_[3] or N_[4].
            auto chain = socle_chain(la.algebra);
            Subspace s = chain[std::min<std::size_t>(m == WitnessMode::socle3 ? 3 : 4, chain.size() - 1)];
            Vec w = zero_vec(la.algebra.dim());
            for (const auto& b : s.basis()) w = w + make_rational(num(rng), den(rng)) * b;
            w = w - dot(la.pointing.omega, w) * unit_annihilator(la.algebra, la.pointing);
            a = log1(la.algebra, w);
        }
    }
    TransitivityWitness w = transitivity_witness(la.algebra, la.pointing, a, m, g);
    j["point"] = vec_json(a);
    j["pointing"] = vec_json(la.pointing.omega);
    j["linear"] = matrix_json(w.map.linear);
    j["translation"] = vec_json(w.map.translation);
    if (m == WitnessMode::graded) j["min_weight_trace"] = w.min_weight_trace;
    j["verified"] = w.verified;
    if (!w.verified) status = kRejected;
    return j;
}

Json cmd_family(Inputs& in, const std::string& kind, const std::string& cubic, const std::string& t_arg,
                const std::string& eps_arg, int& status) {
    Json j;
    j["kind"] = kind;
    if (kind == "degree3") {
        if (cubic.empty()) throw UsageError("degree3 needs --cubic");
        in.literal(cubic);
        FamilyResult f = family_degree3(parse_poly(cubic));
        j["poly"] = poly_json(f.poly.p);
        j["accepted"] = f.reconstruction.accepted;
        j["reduced"] = f.reduced;
        j["grading"] = f.grading ? grading_json(*f.grading) : Json(nullptr);
        if (!f.reconstruction.accepted) status = kRejected;
        return j;
    }
    Rational t = parse_rational_arg(t_arg.empty() ? "1" : t_arg);
    in.literal(kind + " t=" + to_string(t));
    if (kind == "degree4") {
        Rational eps = parse_rational_arg(eps_arg.empty() ? "1" : eps_arg);
        in.literal("eps=" + to_string(eps));
        if (eps == 0) throw UsageError("--eps must be nonzero");
        Degree4Family f = family_degree4(t, eps);
        j["poly"] = poly_json(f.p);
        j["theta_symmetric"] = f.theta_symmetric;
        j["accepted"] = f.reconstruction.accepted;
        j["regenerated_matches"] = f.regenerated_matches;
        j["g2"] = to_string(f.invariants.g2);
        j["g3"] = to_string(f.invariants.g3);
        j["phi"] = f.invariants.phi ? Json(to_string(*f.invariants.phi)) : Json(nullptr);
        j["phi_closed_form"] = f.phi_closed_form ? Json(to_string(*f.phi_closed_form)) : Json(nullptr);
        j["grading_valid"] = f.reconstruction.accepted && verify_grading(f.reconstruction.algebra, f.grading).valid;
        if (!f.theta_symmetric || !f.regenerated_matches) status = kRejected;
        return j;
    }
    if (kind == "hesse") {
        MPoly p = hesse_family(t);
        j["poly"] = poly_json(p);
        Reconstruction r = reconstruct_algebra(p.homogeneous_part(2), p.homogeneous_part(3));
        j["accepted"] = r.accepted;
        if (t != 0) {
            EquivalenceWitness w = hesse_family_witness(t);
            MPoly target = apply_witness(p, w);
            j["equivalent_to"] = poly_json(target);
            j["witness"] = {{"alpha", matrix_json(w.alpha)}, {"epsilon", to_string(w.epsilon)}};
            j["equivalence_holds"] = equivalence_witness_check(p, target, w);
        }
        if (!r.accepted) status = kRejected;
        return j;
    }
    throw UsageError("unknown family kind " + kind);
}

Json cmd_leading(Inputs& in, const std::string& path, int&) {
    MPoly p = load_nil_poly(in, path);
    LeadingFormAnalysis r = leading_form_analysis(p);
    Json j;
    j["degree"] = r.degree;
    j["leading"] = r.leading.to_string();
    j["essential_variables"] = r.essential_variables;
    j["binary_form"] = r.binary_form ? Json(r.binary_form->to_string()) : Json(nullptr);
    if (r.profile) {
        Json lin = Json::array(), quad = Json::array();
        for (const auto& l : r.profile->linear)
            lin.push_back({{"a", to_string(l.a)}, {"b", to_string(l.b)}, {"multiplicity", l.multiplicity}});
        for (const auto& q : r.profile->quadratic)
            quad.push_back({{"coeffs", vec_json({q.coeffs[0], q.coeffs[1], q.coeffs[2]})},
                            {"multiplicity", q.multiplicity},
                            {"discriminant_sign", q.discriminant_sign}});
        j["profile"] = {{"signature", r.profile->signature()}, {"linear", lin}, {"quadratic", quad}};
    } else {
        j["profile"] = nullptr;
    }
    return j;
}

Json cmd_jacobi(Inputs& in, const std::string& path, unsigned max_degree, int&) {
    MPoly p = load_nil_poly(in, path);
    Json j;
    j["max_degree"] = max_degree;
    for (unsigned d = 0; d <= max_degree; ++d) {
        if (auto l = jacobi_membership(p, d)) {
            j["found"] = true;
            j["degree"] = d;
            Json lam = Json::array();
            for (const auto& x : *l) lam.push_back(x.to_string());
            j["lambda"] = lam;
            return j;
        }
    }
    j["found"] = false;
    return j;
}

// ---------------------------------------------------------------- output

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string text_report(const std::string& command, const Json& j) {
    std::ostringstream out;
    out << command << '\n';
    for (const auto& [k, v] : j.items()) {
        if (k == "meta") continue;
        if (v.is_object() || (v.is_array() && v.dump().size() > 200)) {
            out << "  " << k << ": <" << (v.is_object() ? "object" : "array of " + std::to_string(v.size())) << ">\n";
        } else {
            out << "  " << k << ": " << scalar_text(v) << '\n';
        }
    }
    if (j.contains("meta")) out << "  version " << j["meta"]["version"].get<std::string>() << ", input sha256 "
                                << j["meta"]["input_sha256"].get<std::string>() << '\n';
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with commutative nilpotent algebras and nil-polynomials", "nilforge"};
    app.set_version_flag("--version", NILFORGE_VERSION);
    app.require_subcommand(1);

    std::string format = "json", output;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("-o,--output", output, "write the report to a file");
    };

    std::string input, poly, pointing, checkpoint, witness, target, point, grading_path, mode, kind, cubic, t_arg,
        eps_arg, b_input;
    unsigned trunc_max = 30, max_degree = 3, seed = 1;
    std::optional<unsigned> start;
    std::optional<std::size_t> ell;
    bool no_cross = false, with_aff = false, with_basis = false;

    auto* milnor = app.add_subcommand("milnor", "Milnor algebra maximal ideal of a germ");
    milnor->add_option("--poly", poly, "germ F in the polynomial grammar")->required();
    milnor->add_option("--trunc-max", trunc_max, "largest truncation degree tried");
    milnor->add_option("--start", start, "first truncation degree tried");
    auto* verify = app.add_subcommand("verify", "check associativity and nilpotency of an algebra");
    auto* inv = app.add_subcommand("invariants", "nil-index, Hilbert function, socles and powers");
    auto* nilp = app.add_subcommand("nilpoly", "nil-polynomial of an admissible algebra");
    nilp->add_option("--poly", poly, "use the Milnor algebra of this germ instead of --input");
    nilp->add_option("--pointing", pointing, "comma-separated pointing coefficients");
    auto* recon = app.add_subcommand("reconstruct", "algebra from the quadratic and cubic parts");
    auto* regen = app.add_subcommand("regenerate", "nil-polynomial from its quadratic and cubic parts");
    auto* homog = app.add_subcommand("homogeneity", "local affine homogeneity of the graph");
    homog->add_flag("--no-cross-check", no_cross, "skip the alternative formulation");
    homog->add_option("--checkpoint", checkpoint, "write per-ell verdicts to this file");
    homog->add_option("--ell", ell, "report one ell separately (1-based)");
    homog->add_flag("--aff", with_aff, "verify tangency of every aff(S) basis field");
    auto* grad = app.add_subcommand("grading", "gradability necessary test");
    grad->add_option("--witness", witness, "grading JSON for the reconstructed algebra");
    auto* der = app.add_subcommand("derivations", "derivation algebra dimension and bounds");
    der->add_flag("--basis", with_basis, "include the basis matrices");
    auto* smash = app.add_subcommand("smash", "smash product of two pointed admissible algebras");
    smash->add_option("--b", b_input, "second algebra")->required();
    auto* wit = app.add_subcommand("witness", "transitivity or equivalence witnesses");
    wit->add_option("--mode", mode, "graded, socle3, socle4 or equivalence")->required();
    wit->add_option("--target", target, "equivalence: target polynomial");
    wit->add_option("--witness", witness, "equivalence: {alpha, epsilon}");
    wit->add_option("--point", point, "comma-separated point on the hypersurface");
    wit->add_option("--seed", seed, "seed for a random point when --point is absent");
    wit->add_option("--grading", grading_path, "graded mode: grading JSON (default: index-3 grading)");
    auto* fam = app.add_subcommand("family", "parametric nil-polynomial families");
    fam->add_option("--kind", kind, "degree3, degree4 or hesse")->required()->check(CLI::IsMember({"degree3", "degree4", "hesse"}));
    fam->add_option("--cubic", cubic, "degree3: cubic form");
    fam->add_option("--t", t_arg, "family parameter");
    fam->add_option("--eps", eps_arg, "degree4: nonzero epsilon");
    auto* lead = app.add_subcommand("analyze-leading", "leading form and binary factor profile");
    auto* jac = app.add_subcommand("jacobi", "degree-bounded Jacobi ideal membership");
    jac->add_option("--max-degree", max_degree, "largest coefficient degree tried");

    for (auto* sub : {verify, inv, nilp, recon, regen, homog, grad, der, smash, wit, lead, jac})
        sub->add_option("-i,--input", input, "input JSON file or - for stdin");
    for (auto* sub : {milnor, verify, inv, nilp, recon, regen, homog, grad, der, smash, wit, fam, lead, jac}) common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    Inputs in;
    int status = 0;
    Json report;
    std::string command = app.get_subcommands().front()->get_name();
    try {
        auto need_input = [&] {
            if (input.empty()) throw UsageError(command + " requires --input");
        };
        if (command == "milnor") {
            report = cmd_milnor(in, poly, trunc_max, start, status);
        } else if (command == "nilpoly") {
            if (poly.empty()) need_input();
            report = cmd_nilpoly(in, input, poly, pointing, status);
        } else if (command == "family") {
            report = cmd_family(in, kind, cubic, t_arg, eps_arg, status);
        } else {
            need_input();
            if (command == "verify") report = cmd_verify(in, input, status);
            else if (command == "invariants") report = cmd_invariants(in, input, status);
            else if (command == "reconstruct") report = cmd_reconstruct(in, input, status);
            else if (command == "regenerate") report = cmd_regenerate(in, input, status);
            else if (command == "homogeneity") report = cmd_homogeneity(in, input, no_cross, checkpoint, ell, with_aff, status);
            else if (command == "grading") report = cmd_grading(in, input, witness, status);
            else if (command == "derivations") report = cmd_derivations(in, input, with_basis, status);
            else if (command == "smash") report = cmd_smash(in, input, b_input, status);
            else if (command == "witness") report = cmd_witness(in, mode, input, target, witness, point, seed, grading_path, status);
            else if (command == "analyze-leading") report = cmd_leading(in, input, status);
            else if (command == "jacobi") report = cmd_jacobi(in, input, max_degree, status);
        }
    } catch (const UsageError& e) {
        std::cerr << "nilforge: " << e.what() << '\n';
        return kUsage;
    } catch (const FormatError& e) {
        std::cerr << "nilforge: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "nilforge: parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        report = {{"rejected", e.what()}};
        status = kRejected;
    } catch (const std::invalid_argument& e) {
        std::cerr << "nilforge: " << e.what() << '\n';
        return kUsage;
    }

    report["meta"] = {{"version", NILFORGE_VERSION}, {"input_sha256", sha256_hex(in.bytes)}};
    std::string text = format == "json" ? report.dump(2) + "\n" : text_report(command, report);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out || !(out << text)) {
            std::cerr << "nilforge: cannot write " << output << '\n';
            return kUsage;
        }
    }
    if (status == kRejected && report.contains("rejected")) std::cerr << "nilforge: rejected: " << report["rejected"].get<std::string>() << '\n';
    return status;
}
