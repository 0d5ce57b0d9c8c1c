// Acceptance gate: one pass/fail line per criterion, nonzero exit if any
// criterion fails.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>
#include <random>
#include <vector>

#include "bohrgap/almostinv.hpp"
#include "bohrgap/duality.hpp"
#include "bohrgap/markov.hpp"
#include "bohrgap/zconj.hpp"

using namespace bohrgap;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool ok) {
    std::printf("criterion %d (%s): %s\n", idx, name, ok ? "PASS" : "FAIL");
    if (!ok) ++g_failures;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

// ---- random orthogonal rep corpus (criteria 3 and 4) ----

struct CorpusRep {
    RepSpec rep;
    GenMeasure mu;
};

Eigen::MatrixXd random_orthogonal(int d, std::mt19937& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::VectorXd diag = qr.matrixQR().diagonal();
    for (int i = 0; i < d; ++i)
        if (diag(i) < 0) q.col(i) *= -1;
    return q;
}

// Block-rotation orthogonal image of the cyclic generator of Z/n: angles
// 2*pi*k_i/n per 2x2 block, a +/-1 on a leftover odd coordinate.
Eigen::MatrixXd random_cyclic_image(int n, int d, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    int i = 0;
    for (; i + 1 < d; i += 2) {
        double th = 2 * M_PI * pick(rng) / n;
        m(i, i) = std::cos(th);
        m(i, i + 1) = -std::sin(th);
        m(i + 1, i) = std::sin(th);
        m(i + 1, i + 1) = std::cos(th);
    }
    if (i < d) m(i, i) = (n % 2 == 0 && pick(rng) % 2) ? -1.0 : 1.0;
    return m;
}

GroupSpec cyclic_group(int n) {
    Perm cyc(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cyc[static_cast<std::size_t>(i)] = (i + 1) % n;
    return PermGroup{n, {cyc}};
}

std::vector<CorpusRep> build_corpus(std::mt19937& rng) {
    std::vector<CorpusRep> corpus;
    std::uniform_int_distribution<int> dim(1, 8), ncyc(2, 12);
    for (int t = 0; t < 25; ++t) {  // reps of Z
        int d = dim(rng);
        GroupSpec z = ZPow{1};
        MatrixRep m(z, d);
        m.set_image(GroupElem::zvec({1}), random_orthogonal(d, rng));
        corpus.push_back({RepSpec{std::move(m)}, lazy_uniform(z)});
    }
    for (int t = 0; t < 25; ++t) {  // reps of Z/n
        int d = dim(rng), n = ncyc(rng);
        GroupSpec g = cyclic_group(n);
        MatrixRep m(g, d);
        m.set_image(standard_generators(g)[0], random_cyclic_image(n, d, rng));
        corpus.push_back({RepSpec{std::move(m)}, lazy_uniform(g)});
    }
    return corpus;
}

// ---- numeric oracle for criterion 8 ----

bool has_root_of_unity_eigenvalue(const IntMat& m) {
    int d = static_cast<int>(m.size());
    Eigen::MatrixXd em(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            em(i, j) = static_cast<double>(
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    Eigen::EigenSolver<Eigen::MatrixXd> es(em);
    for (int i = 0; i < d; ++i) {
        std::complex<double> lam = es.eigenvalues()(i);
        if (std::abs(std::abs(lam) - 1.0) > 1e-8) continue;
        std::complex<double> p = 1.0;
        for (int k = 1; k <= 420; ++k) {
            p *= lam;
            if (std::abs(p - 1.0) < 1e-6) return true;
        }
    }
    return false;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    std::size_t d = a.size();
    IntMat c(d, std::vector<long long>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < d; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

IntMat random_unimodular(int d, std::mt19937& rng) {
    std::uniform_int_distribution<int> coin(0, 1), off(-2, 2), pos(0, d - 1);
    IntMat m(static_cast<std::size_t>(d), std::vector<long long>(static_cast<std::size_t>(d), 0));
    for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    int steps = 3 + static_cast<int>(rng() % 4);
    for (int s = 0; s < steps; ++s) {
        IntMat e(static_cast<std::size_t>(d),
                 std::vector<long long>(static_cast<std::size_t>(d), 0));
        for (int i = 0; i < d; ++i)
            e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
        int i = pos(rng), j = pos(rng);
        if (i == j) {
            if (coin(rng)) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = -1;
        } else {
            e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = off(rng);
        }
        m = mat_mul(m, e);
    }
    return m;
}

// ---- criteria ----

bool criterion1() {
    double t0 = now_seconds();
    GroupSpec f2 = FreeGroup{2};
    SpectralReport rf =
        kesten_verdict(f2, lazy_uniform(f2), {2, 3, 4, 5, 6, 7, 8}, 0.95);
    double kesten = 0.2 + 2 * std::sqrt(3.0) / 5;
    bool ok = rf.verdict == Verdict::Gap && std::abs(rf.plateau_value - kesten) <= 5e-3;
    double t1 = now_seconds();
    ok = ok && (t1 - t0) < 30.0;

    GroupSpec z2 = ZPow{2};
    SpectralReport rz = kesten_verdict(z2, lazy_uniform(z2), {20, 40, 60}, 0.95);
    ok = ok && rz.verdict == Verdict::NoGap && rz.estimates.back() >= 0.999;
    ok = ok && (now_seconds() - t1) < 30.0;
    return ok;
}

bool criterion2() {
    GroupSpec z = ZPow{1};
    GenMeasure mu = lazy_uniform(z);
    for (int r : {5, 10, 20, 40}) {
        double expect = 1.0 / 3 + (2.0 / 3) * std::cos(M_PI / (2 * r + 2));
        if (std::abs(spectral_radius_truncated(z, mu, r) - expect) > 1e-9) return false;
    }
    return true;
}

bool criterion3(const std::vector<CorpusRep>& corpus) {
    for (const CorpusRep& c : corpus) {
        bool has_inv = !invariant_subspace(c.rep, c.mu, 1e-8).empty();

        bool solve_fails = false;
        Eigen::VectorXd b = Eigen::VectorXd::Ones(finite_dim(c.rep));
        try {
            solve_D(c.rep, c.mu, b);
        } catch (const SingularOperator&) {
            solve_fails = true;
        }

        Eigen::MatrixXd pm = averaging_matrix(c.rep, c.mu);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pm);
        bool top_is_one = es.eigenvalues().maxCoeff() >= 1.0 - 1e-8;

        if (has_inv != solve_fails || has_inv != top_is_one) return false;
    }
    return true;
}

bool criterion4(const std::vector<CorpusRep>& corpus) {
    for (const CorpusRep& c : corpus) {
        if (!invariant_subspace(c.rep, c.mu, 1e-8).empty()) continue;
        GapAudit a = gap_bound_audit(c.rep, c.mu, 10000);
        if (!a.passed || a.max_observed > a.bound + 1e-9) return false;
    }
    GroupSpec z2p = parse_group_spec("perm:2:(0 1)");
    MatrixRep sign(z2p, 1);
    Eigen::MatrixXd s(1, 1);
    s << -1;
    sign.set_image(parse_elem(z2p, "[1 0]"), s);
    GapAudit as = gap_bound_audit(RepSpec{sign}, lazy_uniform(z2p), 10000);
    if (std::abs(as.bound - 0.5) > 1e-12 || std::abs(as.max_observed) > 1e-12) return false;

    MatrixRep rot(ZPow{1}, 2);
    Eigen::MatrixXd r(2, 2);
    r << 0, -1, 1, 0;
    rot.set_image(GroupElem::zvec({1}), r);
    GapAudit ar = gap_bound_audit(RepSpec{rot}, lazy_uniform(ZPow{1}), 10000);
    return std::abs(ar.bound - 8.0 / 9) <= 1e-12 &&
           std::abs(ar.max_observed - 1.0 / 9) <= 1e-12;
}

bool criterion5() {
    std::vector<VecF> seq = window_family(40);
    OrthoResult res = orthogonalize(seq);
    if (res.vectors.empty()) return false;
    for (std::size_t i = 0; i < res.vectors.size(); ++i) {
        if (std::abs(norm(res.vectors[i]) - 1.0) > 1e-10) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(res.vectors[i].inner(res.vectors[j])) > 1e-10) return false;
    }
    GroupSpec z = ZPow{1};
    GenMeasure mu = lazy_uniform(z);
    RegularRep reg(z, 64);
    for (std::size_t s = 0; s < res.steps.size(); ++s) {
        const OrthoStep& st = res.steps[s];
        double din =
            invariance_defect(reg, mu, seq[static_cast<std::size_t>(st.m)]).max_defect;
        double dout = invariance_defect(reg, mu, res.vectors[s + 1]).max_defect;
        if (dout > ortho_defect_bound(st.k, din) + 1e-12) return false;
    }
    return true;
}

bool criterion6() {
    int n_terms = 10;
    std::vector<VecQ> vecs;
    std::vector<Rational> eps;
    Rational e(1);
    for (int n = 0; n < n_terms + 2; ++n) {
        VecQ v;
        v.set(GroupElem::zvec({n}), Rational(1));
        vecs.push_back(std::move(v));
        e /= 4;
        eps.push_back(e);
    }
    WitnessBundleQ w = scale_and_witness(vecs, eps, n_terms);
    if (static_cast<int>(w.scaled.size()) != n_terms) return false;
    for (const VecQ& wn : w.scaled)
        if (w.combined.inner(wn) != Rational(1, 2)) return false;
    return true;
}

bool criterion7() {
    for (long n = 2; n <= 100; ++n) {
        FiniteAbelian a({n});
        for (long u = 1; u < n; ++u) {
            if (std::gcd(u, n) != 1) continue;
            auto act = AutoAction(a, GroupSpec{ZPow{1}}, {IntMat{{u}}});
            auto [fe, fc] = fixed_counts(act);
            if (fe != fc) return false;
        }
    }
    std::mt19937 rng(12345);
    std::vector<long> primes{2, 3, 5, 7, 11, 13};
    int done = 0;
    while (done < 200) {
        long p = primes[rng() % primes.size()];
        std::uniform_int_distribution<long long> ent(0, p - 1);
        IntMat m{{ent(rng), ent(rng)}, {ent(rng), ent(rng)}};
        if ((m[0][0] * m[1][1] - m[0][1] * m[1][0]) % p == 0) continue;
        auto act = AutoAction(FiniteAbelian({p, p}), GroupSpec{ZPow{1}}, {m});
        auto [fe, fc] = fixed_counts(act);
        if (fe != fc) return false;
        ++done;
    }
    return true;
}

bool criterion8() {
    ErgodicityVerdict cat = toral_ergodicity({{2, 1}, {1, 1}});
    if (!cat.ergodic) return false;
    ErgodicityVerdict rot = toral_ergodicity({{0, -1}, {1, 0}});
    if (rot.ergodic || rot.cyclotomic_index != 4) return false;

    std::mt19937 rng(777);
    for (int t = 0; t < 100; ++t) {
        IntMat m = random_unimodular(t % 2 == 0 ? 2 : 3, rng);
        if (toral_ergodicity(m).ergodic != !has_root_of_unity_eigenvalue(m))
            return false;
    }
    return true;
}

bool criterion9() {
    for (int n = 1; n <= 30; ++n)
        for (int a = 0; a < n; ++a)
            for (int m = 1; m <= 30; ++m)
                for (int b = 0; b < m; ++b) {
                    int on = n / std::gcd(n, a == 0 ? n : a);
                    int om = m / std::gcd(m, b == 0 ? m : b);
                    ConjugacyVerdict v =
                        decide_conjugacy(UnitAlgebraic::root_of_unity(n, a),
                                         UnitAlgebraic::root_of_unity(m, b));
                    if (v.conjugate != (on == om)) return false;
                }

    UnitAlgebraic z5 = UnitAlgebraic::root_of_unity(5, 1);
    UnitAlgebraic z5sq = UnitAlgebraic::root_of_unity(5, 2);
    XiMap xi = build_xi(z5, z5sq);
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> c(-5, 5);
    auto rand_elem = [&]() {
        std::vector<Int> coeffs;
        for (int i = 0; i < xi.modulus().degree(); ++i) coeffs.push_back(Int(c(rng)));
        return NumberFieldElem::from_poly(xi.modulus(), IntPoly(coeffs));
    };
    for (int t = 0; t < 1000; ++t) {
        NumberFieldElem a = rand_elem(), b = rand_elem();
        if (!(xi.apply(a + b) == xi.apply(a) + xi.apply(b))) return false;
        if (!(xi.apply(a * b) == xi.apply(a) * xi.apply(b))) return false;
    }

    ZRotationRep rz(IntPoly::cyclotomic(5), z5.root());
    ZRotationRep rw(IntPoly::cyclotomic(5), z5sq.root());
    for (int n = -3; n <= 3; ++n) {
        NumberFieldElem x = rand_elem();
        if (!(xi.apply(rz.apply(n, x)) == rw.apply(n, xi.apply(x)))) return false;
    }
    return true;
}

}  // namespace

int main() {
    std::mt19937 corpus_rng(2024);
    std::vector<CorpusRep> corpus = build_corpus(corpus_rng);

    report(1, "kesten dichotomy F2 / Z^2", criterion1());
    report(2, "truncated path closed form", criterion2());
    report(3, "finite-dimensional dichotomy", criterion3(corpus));
    report(4, "gap bound audit", criterion4(corpus));
    report(5, "orthogonalization suite", criterion5());
    report(6, "witness exactness", criterion6());
    report(7, "finite duality counts", criterion7());
    report(8, "toral ergodicity", criterion8());
    report(9, "rotation conjugacy", criterion9());

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
