#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bohrgap/markov.hpp"

using namespace bohrgap;

namespace {

RepSpec sign_rep() {
    GroupSpec z2 = parse_group_spec("perm:2:(0 1)");
    MatrixRep m(z2, 1);
    Eigen::MatrixXd s(1, 1);
    s << -1;
    m.set_image(parse_elem(z2, "[1 0]"), s);
    return m;
}

RepSpec rot90_rep() {
    MatrixRep m(ZPow{1}, 2);
    Eigen::MatrixXd r(2, 2);
    r << 0, -1, 1, 0;
    m.set_image(GroupElem::zvec({1}), r);
    return m;
}

RepSpec trivial_rep(int dim) {
    MatrixRep m(ZPow{1}, dim);
    m.set_image(GroupElem::zvec({1}), Eigen::MatrixXd::Identity(dim, dim));
    return m;
}

double path_eigenvalue(int r) { return 1.0 / 3 + (2.0 / 3) * std::cos(M_PI / (2 * r + 2)); }

}  // namespace

TEST_CASE("averaging operator") {
    GroupSpec z = ZPow{1};
    GenMeasure mu = lazy_uniform(z);
    RegularRep reg(z, 4);

    SUBCASE("regular: delta spreads with exact weights") {
        VecQ v;
        v.set(identity_of(z), Rational(1));
        VecQ pv = apply_P(reg, mu, v);
        CHECK(pv.get(GroupElem::zvec({-1})) == Rational(1, 3));
        CHECK(pv.get(GroupElem::zvec({0})) == Rational(1, 3));
        CHECK(pv.get(GroupElem::zvec({1})) == Rational(1, 3));
        VecQ dv = apply_D(reg, mu, v);
        CHECK(dv.get(GroupElem::zvec({0})) == Rational(2, 3));
        CHECK(dv.get(GroupElem::zvec({1})) == Rational(-1, 3));
    }

    SUBCASE("trivial rep leaves vectors unchanged") {
        RepSpec triv = trivial_rep(3);
        Eigen::VectorXd v(3);
        v << 1, -2, 0.5;
        CHECK((apply_P(triv, mu, v) - v).norm() == doctest::Approx(0.0));
        CHECK(apply_D(triv, mu, v).norm() == doctest::Approx(0.0));
    }

    SUBCASE("sign rep with lazy-1/2 measure averages to zero") {
        GroupSpec z2 = parse_group_spec("perm:2:(0 1)");
        Eigen::VectorXd v(1);
        v << 1;
        CHECK(apply_P(sign_rep(), lazy_uniform(z2), v).norm() == doctest::Approx(0.0));
    }

    SUBCASE("rotation by 90 degrees: P = I/3, D = 2/3 I") {
        Eigen::VectorXd v(2);
        v << 0.6, -0.8;
        CHECK((apply_P(rot90_rep(), mu, v) - v / 3).norm() == doctest::Approx(0.0));
        CHECK((apply_D(rot90_rep(), mu, v) - 2 * v / 3).norm() == doctest::Approx(0.0));
    }

    SUBCASE("self-adjointness and contraction on random pairs") {
        std::mt19937 rng(31);
        std::normal_distribution<double> g;
        RepSpec rep = rot90_rep();
        Eigen::MatrixXd pm = averaging_matrix(rep, mu);
        CHECK((pm - pm.transpose()).norm() == doctest::Approx(0.0));
        for (int t = 0; t < 1000; ++t) {
            Eigen::VectorXd v(2), w(2);
            v << g(rng), g(rng);
            w << g(rng), g(rng);
            CHECK(std::abs((pm * v).dot(w) - v.dot(pm * w)) <= 1e-9);
            CHECK((pm * v).norm() <= v.norm() + 1e-9);
        }
    }
}

TEST_CASE("truncated spectral radius") {
    GroupSpec z = ZPow{1};
    GenMeasure mu = lazy_uniform(z);

    SUBCASE("path-graph closed form to 1e-9") {
        for (int r : {5, 10, 20, 40})
            CHECK(std::abs(spectral_radius_truncated(z, mu, r) - path_eigenvalue(r)) <= 1e-9);
        CHECK(spectral_radius_truncated(z, mu, 40) == doctest::Approx(0.999510).epsilon(1e-6));
    }

    SUBCASE("monotone in the radius") {
        double prev = 0;
        for (int r = 2; r <= 24; r += 2) {
            double est = spectral_radius_truncated(z, mu, r);
            CHECK(est >= prev - 1e-12);
            CHECK(est <= 1.0 + 1e-12);
            prev = est;
        }
    }

    SUBCASE("cap") {
        CHECK_THROWS_AS(spectral_radius_truncated(FreeGroup{2}, lazy_uniform(FreeGroup{2}), 10,
                                                  1e-12, 100000, 1000),
                        BallTooLarge);
    }
}

TEST_CASE("kesten verdicts") {
    SUBCASE("free group has a gap at the Kesten value") {
        GroupSpec f2 = FreeGroup{2};
        SpectralReport rep = kesten_verdict(f2, lazy_uniform(f2), {2, 3, 4, 5, 6, 7, 8}, 0.95);
        CHECK(rep.verdict == Verdict::Gap);
        double kesten = 0.2 + 2 * std::sqrt(3.0) / 5;
        CHECK(std::abs(rep.plateau_value - kesten) <= 5e-3);
        // raw estimates are monotone and below the limit
        for (std::size_t i = 1; i < rep.estimates.size(); ++i)
            CHECK(rep.estimates[i] >= rep.estimates[i - 1] - 1e-12);
        CHECK(rep.estimates.back() <= kesten + 1e-9);
    }

    SUBCASE("Z^2 is amenable: estimates reach 1 - 1e-3") {
        GroupSpec z2 = ZPow{2};
        SpectralReport rep = kesten_verdict(z2, lazy_uniform(z2), {20, 40, 60}, 0.95);
        CHECK(rep.verdict == Verdict::NoGap);
        CHECK(rep.estimates.back() >= 0.999);
    }

    SUBCASE("finite groups get an exact verdict") {
        GroupSpec s3 = parse_group_spec("perm:3:(0 1 2),(0 1)");
        SpectralReport rep = kesten_verdict(s3, lazy_uniform(s3), {1}, 0.9999);
        CHECK(rep.finite_exact);
        CHECK(rep.verdict == Verdict::Gap);
    }
}

TEST_CASE("invariant subspaces and the solve dichotomy") {
    GroupSpec z = ZPow{1};
    GenMeasure mu = lazy_uniform(z);
    GroupSpec z2p = parse_group_spec("perm:2:(0 1)");
    GenMeasure mu2 = lazy_uniform(z2p);

    CHECK(invariant_subspace(trivial_rep(3), mu).size() == 3);
    CHECK(invariant_subspace(sign_rep(), mu2).empty());
    CHECK(invariant_subspace(rot90_rep(), mu).empty());

    SUBCASE("direct sum trivial + rotation has a 1-dim kernel") {
        RepSpec sum = std::make_shared<DirectSumRep>(
            std::vector<RepSpec>{trivial_rep(1), rot90_rep()});
        auto basis = invariant_subspace(sum, mu);
        REQUIRE(basis.size() == 1);
        CHECK(std::abs(basis[0](0)) == doctest::Approx(1.0));
    }

    SUBCASE("solve_D") {
        Eigen::VectorXd b(1);
        b << 2;
        CHECK((solve_D(sign_rep(), mu2, b) - b).norm() <= 1e-9);  // D = I

        Eigen::VectorXd b2(2);
        b2 << 1, 1;
        CHECK((solve_D(rot90_rep(), mu, b2) - 1.5 * b2).norm() <= 1e-9);  // D = (2/3)I

        CHECK_THROWS_AS(solve_D(trivial_rep(2), mu, b2), SingularOperator);
    }
}

TEST_CASE("gap bound audit") {
    GroupSpec z = ZPow{1};
    GenMeasure mu = lazy_uniform(z);
    GroupSpec z2p = parse_group_spec("perm:2:(0 1)");

    SUBCASE("sign rep: eps = 2, bound = 1/2, observed 0") {
        GapAudit a = gap_bound_audit(sign_rep(), lazy_uniform(z2p), 2000);
        CHECK(a.epsilon == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(a.bound == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(a.max_observed == doctest::Approx(0.0));
        CHECK(a.passed);
    }

    SUBCASE("rotation-90: eps = sqrt(2), bound = 8/9, observed 1/9") {
        GapAudit a = gap_bound_audit(rot90_rep(), mu, 2000);
        CHECK(a.epsilon == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(a.bound == doctest::Approx(8.0 / 9).epsilon(1e-12));
        CHECK(a.max_observed == doctest::Approx(1.0 / 9).epsilon(1e-12));
        CHECK(a.passed);
    }

    SUBCASE("reps with invariant vectors are rejected") {
        CHECK_THROWS_AS(gap_bound_audit(trivial_rep(2), mu, 100), HasInvariantVector);
    }

    SUBCASE("deterministic under a fixed seed") {
        GapAudit a = gap_bound_audit(rot90_rep(), mu, 500, 42);
        GapAudit b = gap_bound_audit(rot90_rep(), mu, 500, 42);
        CHECK(a.max_observed == b.max_observed);
        CHECK(a.epsilon == b.epsilon);
    }
}
