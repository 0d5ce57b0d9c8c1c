// Batch front end: parses specs, dispatches to the library, emits
// machine-readable reports (jsonl or tsv). Exit codes: 0 success,
// 1 negative verdict (per subcommand, see --help), 2 input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bohrgap/almostinv.hpp"
#include "bohrgap/duality.hpp"
#include "bohrgap/markov.hpp"
#include "bohrgap/zconj.hpp"

using json = nlohmann::json;
using namespace bohrgap;

namespace {

struct Options {
    std::string group = "z:1";
    std::string measure = "lazy-uniform";
    std::string radii = "2..8";
    std::string format = "jsonl";
    double tol = 1e-12;
    double theta = 0.999;
    int samples = 10000;
    int count = 10;
    unsigned seed = 0;
    std::size_t cap = 2000000;
};

std::vector<int> parse_radii(const std::string& text) {
    std::vector<int> out;
    std::size_t dots = text.find("..");
    if (dots != std::string::npos) {
        int a = std::stoi(text.substr(0, dots));
        int b = std::stoi(text.substr(dots + 2));
        if (a < 1 || b < a) throw ParseError("bad radius range '" + text + "'");
        for (int r = a; r <= b; ++r) out.push_back(r);
        return out;
    }
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) throw ParseError("radius schedule must be increasing");
    if (out.empty()) throw ParseError("empty radius schedule");
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GenMeasure load_measure(const GroupSpec& spec, const std::string& arg) {
    if (arg == "lazy-uniform") return lazy_uniform(spec);
    return validate_measure(spec, parse_measure(spec, slurp(arg)));
}

class Reporter {
public:
    Reporter(std::string format, std::vector<std::string> columns)
        : tsv_(format == "tsv"), cols_(std::move(columns)) {
        if (tsv_) {
            for (std::size_t i = 0; i < cols_.size(); ++i)
                std::cout << (i ? "\t" : "") << cols_[i];
            std::cout << "\n";
        }
    }

    void row(const json& j) {
        if (!tsv_) {
            std::cout << j.dump() << "\n";
            return;
        }
        for (std::size_t i = 0; i < cols_.size(); ++i) {
            if (i) std::cout << "\t";
            if (j.contains(cols_[i])) {
                const json& v = j[cols_[i]];
                std::cout << (v.is_string() ? v.get<std::string>() : v.dump());
            }
        }
        std::cout << "\n";
    }

private:
    bool tsv_;
    std::vector<std::string> cols_;
};

int run_amenable(const Options& o) {
    GroupSpec spec = parse_group_spec(o.group);
    GenMeasure mu = load_measure(spec, o.measure);
    SpectralReport rep = kesten_verdict(spec, mu, parse_radii(o.radii), o.theta);
    Reporter out(o.format, {"radius", "estimate", "verdict", "plateau", "margin", "inconclusive"});
    for (std::size_t i = 0; i < rep.radii.size(); ++i)
        out.row({{"radius", rep.radii[i]}, {"estimate", rep.estimates[i]}});
    out.row({{"verdict", verdict_name(rep.verdict)},
             {"plateau", rep.plateau_value},
             {"margin", rep.margin},
             {"inconclusive", rep.verdict == Verdict::Inconclusive}});
    return rep.verdict == Verdict::NoGap ? 1 : 0;
}

int run_spectral(const Options& o) {
    GroupSpec spec = parse_group_spec(o.group);
    GenMeasure mu = load_measure(spec, o.measure);
    Reporter out(o.format, {"radius", "estimate"});
    for (int r : parse_radii(o.radii))
        out.row({{"radius", r},
                 {"estimate", spectral_radius_truncated(spec, mu, r, o.tol, 100000, o.cap)}});
    return 0;
}

int run_orthogonalize(const Options& o, const std::string& family) {
    std::vector<VecF> seq = family == "basis" ? basis_family(4 * o.count) : window_family(4 * o.count);
    OrthoResult res = orthogonalize(seq);
    GroupSpec z = parse_group_spec("z:1");
    GenMeasure mu = lazy_uniform(z);
    RegularRep reg(z, 4 * o.count + 2, o.cap);
    Reporter out(o.format, {"step", "index", "input_defect", "output_defect", "bound"});
    for (std::size_t s = 0; s < res.steps.size(); ++s) {
        const OrthoStep& st = res.steps[s];
        double din = invariance_defect(reg, mu, seq[static_cast<std::size_t>(st.m)]).max_defect;
        double dout = invariance_defect(reg, mu, res.vectors[s + 1]).max_defect;
        out.row({{"step", st.k},
                 {"index", st.m},
                 {"input_defect", din},
                 {"output_defect", dout},
                 {"bound", ortho_defect_bound(st.k, din)}});
    }
    return 0;
}

int run_witness(const Options& o) {
    // exact demo family: orthonormal basis vectors with defects 4^-n
    std::vector<VecQ> vecs;
    std::vector<Rational> eps;
    for (int n = 1; n <= o.count + 2; ++n) {
        VecQ v;
        v.set(GroupElem::zvec({n}), Rational(1));
        vecs.push_back(std::move(v));
        Rational e(1);
        for (int i = 0; i < n; ++i) e /= 4;
        eps.push_back(e);
    }
    WitnessBundleQ w = scale_and_witness(vecs, eps, o.count);
    Reporter out(o.format, {"n", "eps", "pairing", "exact_half"});
    for (std::size_t n = 0; n < w.scaled.size(); ++n) {
        Rational pairing = w.combined.inner(w.scaled[n]);
        out.row({{"n", n + 1},
                 {"eps", w.epsilons[n].get_str()},
                 {"pairing", pairing.get_str()},
                 {"exact_half", pairing == Rational(1, 2)}});
    }
    return 0;
}

int run_sparsify(const Options& o) {
    GroupSpec z = parse_group_spec("z:1");
    RegularRep reg(z, 2 * o.count + 4, o.cap);
    // basis vectors two apart: every shifted pairing is exactly zero
    std::vector<VecF> seq = basis_family(2 * o.count + 2);
    SparsifyResult res = sparsify_weak_null(seq, standard_generators(z), reg, o.count);
    Reporter out(o.format, {"n", "index", "combined_norm"});
    for (std::size_t n = 0; n < res.indices.size(); ++n)
        out.row({{"n", n + 1}, {"index", res.indices[n]}, {"combined_norm", norm(res.combined)}});
    return 0;
}

int run_duality(const Options& o, const std::string& abelian, const std::string& action,
                const std::string& action2, const std::string& xi) {
    FiniteAbelian a = parse_abelian(abelian, o.cap);
    auto looks_inline = [](const std::string& s) {
        return s.find_first_not_of("0123456789+- ,/\n\t") == std::string::npos;
    };
    std::string atext = looks_inline(action) ? action : slurp(action);
    std::vector<IntMat> mats = parse_action_mats(atext);
    AutoAction act(a, ZPow{static_cast<int>(mats.size())}, std::move(mats));
    Reporter out(o.format, {"fixed_elements", "fixed_characters", "transport_ok"});
    auto [fe, fc] = fixed_counts(act);
    json row{{"fixed_elements", fe}, {"fixed_characters", fc}};
    if (!xi.empty()) {
        std::string a2 = action2.empty() ? atext : action2;
        std::string a2text = looks_inline(a2) ? a2 : slurp(a2);
        std::vector<IntMat> mats2 = parse_action_mats(a2text);
        AutoAction act2(a, ZPow{static_cast<int>(mats2.size())}, std::move(mats2));
        DualTransport t = dual_conjugacy_transport(parse_int_matrix(xi), act, act2);
        bool ok = true;
        for (const Character& chi : enumerate_dual(a))
            for (std::size_t g = 0; g < act.generator_mats().size(); ++g)
                if (t.apply(act.dual_apply(g, chi)) != act2.dual_apply(g, t.apply(chi))) ok = false;
        row["transport_ok"] = ok;
    }
    out.row(row);
    return 0;
}

int run_ergodic(const Options& o, const std::string& matrix) {
    ErgodicityVerdict v = toral_ergodicity(parse_int_matrix(matrix));
    json row{{"ergodic", v.ergodic}, {"charpoly", v.charpoly.to_string()}};
    if (!v.ergodic) {
        row["cyclotomic_index"] = v.cyclotomic_index;
        if (v.witness) {
            std::string w;
            for (std::size_t i = 0; i < v.witness->size(); ++i)
                w += (i ? "," : "") + std::to_string((*v.witness)[i]);
            row["witness"] = w;
            row["orbit_size"] = v.orbit_size;
        }
    }
    Reporter out(o.format, {"ergodic", "charpoly", "cyclotomic_index", "witness", "orbit_size"});
    out.row(row);
    return v.ergodic ? 0 : 1;
}

int run_zconj(const Options& o, const std::string& zs, const std::string& ws, bool trace_xi) {
    UnitAlgebraic z = parse_unit_algebraic(zs);
    UnitAlgebraic w = parse_unit_algebraic(ws);
    ConjugacyVerdict v = decide_conjugacy(z, w);
    Reporter out(o.format, {"conjugate", "certificate", "xi_sample", "xi_image"});
    json row{{"conjugate", v.conjugate}, {"certificate", v.certificate.to_string()}};
    if (v.conjugate && trace_xi && z.is_algebraic()) {
        XiMap xi = build_xi(z, w);
        NumberFieldElem gen = NumberFieldElem::generator(z.minpoly());
        NumberFieldElem sample = gen + gen * gen;
        row["xi_sample"] = sample.to_string();
        row["xi_image"] = xi.apply(sample).to_string();
    }
    out.row(row);
    return v.conjugate ? 0 : 1;
}

int run_audit(const Options& o, const std::string& which) {
    RepSpec rep{MatrixRep({}, 0)};
    GroupSpec spec;
    if (which == "sign") {
        spec = parse_group_spec("perm:2:(0 1)");
        MatrixRep m(spec, 1);
        Eigen::MatrixXd s(1, 1);
        s << -1;
        m.set_image(parse_elem(spec, "[1 0]"), s);
        rep = m;
    } else if (which == "rot90") {
        spec = parse_group_spec("z:1");
        MatrixRep m(spec, 2);
        Eigen::MatrixXd r(2, 2);
        r << 0, -1, 1, 0;
        m.set_image(GroupElem::zvec({1}), r);
        rep = m;
    } else {
        throw ParseError("unknown audit rep '" + which + "' (sign | rot90)");
    }
    GenMeasure mu = lazy_uniform(spec);
    GapAudit audit = gap_bound_audit(rep, mu, o.samples, o.seed);
    Reporter out(o.format, {"epsilon", "bound", "samples", "max_observed", "passed"});
    out.row({{"epsilon", audit.epsilon},
             {"bound", audit.bound},
             {"samples", audit.samples},
             {"max_observed", audit.max_observed},
             {"passed", audit.passed}});
    return audit.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "bohrgap: spectral-gap and duality computations on finitely generated groups.\n"
        "Exit codes: 0 success (Inconclusive verdicts included, flagged in the report);\n"
        "1 negative verdict (amenable: NoGap; ergodic: NotErgodic; zconj: NotConjugate;\n"
        "audit: bound violated); 2 input error."};
    app.require_subcommand(1);

    Options o;
    if (const char* cap = std::getenv("BOHRGAP_CAP")) o.cap = std::stoull(cap);
    app.add_option("--format", o.format, "Output format: jsonl | tsv")
        ->check(CLI::IsMember({"jsonl", "tsv"}));
    app.add_option("--seed", o.seed, "Seed for randomized audits (default 0)");
    app.add_option("--cap", o.cap, "Ball/order cap (also via BOHRGAP_CAP)");

    auto* amen = app.add_subcommand("amenable", "Kesten-style gap verdict on l^2(G)");
    amen->add_option("--group", o.group, "Group spec: free:k | z:d | perm:n:(cycles)");
    amen->add_option("--measure", o.measure, "Measure file or 'lazy-uniform'");
    amen->add_option("--radii", o.radii, "Truncation radii a..b or comma list");
    amen->add_option("--theta", o.theta, "Gap threshold for the plateau");

    auto* spec_cmd = app.add_subcommand("spectral", "Raw truncated spectral radius sweep");
    spec_cmd->add_option("--group", o.group, "Group spec");
    spec_cmd->add_option("--measure", o.measure, "Measure file or 'lazy-uniform'");
    spec_cmd->add_option("--radii", o.radii, "Truncation radii");
    spec_cmd->add_option("--tol", o.tol, "Power-iteration tolerance")->check(CLI::PositiveNumber);

    std::string family = "window";
    auto* ortho = app.add_subcommand("orthogonalize", "Orthogonalization pipeline with defect table");
    ortho->add_option("--family", family, "Seed family: window | basis");
    ortho->add_option("--count", o.count, "Vectors to produce");

    auto* wit = app.add_subcommand("witness", "Exact witness construction, eps_n = 4^-n family");
    wit->add_option("--count", o.count, "Terms in the witness sum");

    auto* spar = app.add_subcommand("sparsify", "Weak-null sparsification on the shifted-basis family");
    spar->add_option("--count", o.count, "Terms to select");

    std::string abelian, action, action2, xi_str;
    auto* dual = app.add_subcommand("duality", "Fixed-point counts and conjugacy transport");
    dual->add_option("--abelian", abelian, "Invariant factors, e.g. 2,4,8")->required();
    dual->add_option("--action", action, "Generator matrices (inline or file)")->required();
    dual->add_option("--action2", action2, "Second action for transport");
    dual->add_option("--xi", xi_str, "Intertwining isomorphism matrix");

    std::string matrix;
    auto* erg = app.add_subcommand("ergodic", "Toral automorphism ergodicity");
    erg->add_option("--matrix", matrix, "Integer matrix, rows split by '/'")->required();

    std::string zs, ws;
    bool trace_xi = false;
    auto* zc = app.add_subcommand("zconj", "Additive conjugacy of unit complex numbers");
    zc->add_option("z", zs, "alg:<coeffs>:<rect> or trans:<label>")->required();
    zc->add_option("w", ws, "alg:<coeffs>:<rect> or trans:<label>")->required();
    zc->add_flag("--xi", trace_xi, "Trace the intertwining map on a sample");

    std::string audit_rep = "sign";
    auto* aud = app.add_subcommand("audit", "Gap bound audit on random unit vectors");
    aud->add_option("--rep", audit_rep, "Built-in rep: sign | rot90");
    aud->add_option("--samples", o.samples, "Random unit vectors")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (amen->parsed()) return run_amenable(o);
        if (spec_cmd->parsed()) return run_spectral(o);
        if (ortho->parsed()) return run_orthogonalize(o, family);
        if (wit->parsed()) return run_witness(o);
        if (spar->parsed()) return run_sparsify(o);
        if (dual->parsed()) return run_duality(o, abelian, action, action2, xi_str);
        if (erg->parsed()) return run_ergodic(o, matrix);
        if (zc->parsed()) return run_zconj(o, zs, ws, trace_xi);
        if (aud->parsed()) return run_audit(o, audit_rep);
    } catch (const ParseError& e) {
        std::cerr << "ParseError: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
