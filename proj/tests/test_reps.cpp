#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bohrgap/reps.hpp"

using namespace bohrgap;

namespace {

VecF delta(long long n, double c = 1.0) {
    VecF v;
    v.set(GroupElem::zvec({n}), c);
    return v;
}

VecF random_vec(std::mt19937& rng, int span) {
    std::normal_distribution<double> g;
    VecF v;
    for (long long i = -span; i <= span; ++i) v.set(GroupElem::zvec({i}), g(rng));
    return v;
}

}  // namespace

TEST_CASE("sparse vector arithmetic") {
    VecF a = delta(0, 1.0) + delta(1, 2.0);
    VecF b = delta(0, 3.0) + delta(1, 4.0);
    CHECK(a.inner(b) == doctest::Approx(11.0));
    CHECK(delta(0).inner(delta(1)) == 0.0);
    CHECK((a - a).is_zero());
    CHECK(a.norm_sq() == doctest::Approx(5.0));
    CHECK(a.scaled(0.0).is_zero());
    CHECK(norm(a) == doctest::Approx(std::sqrt(5.0)));

    VecQ q;
    q.set(GroupElem::zvec({2}), Rational(1, 3));
    q.add(GroupElem::zvec({2}), Rational(-1, 3));
    CHECK(q.is_zero());
}

TEST_CASE("regular representation action") {
    GroupSpec z = ZPow{1};
    RegularRep rep(z, 5);
    CHECK(rep.dim() == 11);
    VecF moved = apply_g(rep, GroupElem::zvec({1}), delta(0));
    CHECK(moved.get(GroupElem::zvec({1})) == 1.0);
    CHECK(moved.support_size() == 1);

    // Dirichlet truncation drops coefficients leaving the ball
    VecF edge = apply_g(rep, GroupElem::zvec({1}), delta(5));
    CHECK(edge.is_zero());

    SUBCASE("action preserves inner products inside the ball") {
        std::mt19937 rng(17);
        GenMeasure mu = lazy_uniform(z);
        RegularRep big(z, 64);
        for (int t = 0; t < 1000; ++t) {
            VecF v = random_vec(rng, 20), w = random_vec(rng, 20);
            for (const GroupElem& h : mu.generators()) {
                double lhs = apply_g(big, h, v).inner(apply_g(big, h, w));
                CHECK(lhs == doctest::Approx(v.inner(w)).epsilon(1e-9));
            }
        }
    }

    SUBCASE("homomorphism property on short words") {
        GroupSpec f2 = FreeGroup{2};
        RegularRep reg(f2, 8);
        std::mt19937 rng(23);
        auto gens = symmetric_closure(standard_generators(f2));
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        VecF v;
        v.set(identity_of(f2), 0.5);
        v.set(gens[0], 0.5);
        for (int t = 0; t < 100; ++t) {
            GroupElem g = gens[pick(rng)] * gens[pick(rng)];
            GroupElem h = gens[pick(rng)] * gens[pick(rng)];
            VecF lhs = apply_g(reg, g, apply_g(reg, h, v));
            VecF rhs = apply_g(reg, g * h, v);
            CHECK(norm(lhs - rhs) == doctest::Approx(0.0));
        }
    }
}

TEST_CASE("matrix representation") {
    GroupSpec z = ZPow{1};
    MatrixRep m(z, 2);
    Eigen::MatrixXd rot(2, 2);
    rot << 0, -1, 1, 0;  // rotation by 90 degrees
    m.set_image(GroupElem::zvec({1}), rot);
    RepSpec rep = m;

    Eigen::VectorXd e0(2);
    e0 << 1, 0;
    Eigen::VectorXd out = apply_g(rep, GroupElem::zvec({1}), e0);
    CHECK(out(0) == doctest::Approx(0.0));
    CHECK(out(1) == doctest::Approx(1.0));

    // integer powers of the single Z generator
    CHECK((rep_matrix(rep, GroupElem::zvec({4})) - Eigen::MatrixXd::Identity(2, 2)).norm() ==
          doctest::Approx(0.0));
    CHECK((rep_matrix(rep, GroupElem::zvec({-1})) - rot.transpose()).norm() ==
          doctest::Approx(0.0));

    SUBCASE("non-orthogonal images are rejected") {
        MatrixRep bad(z, 2);
        Eigen::MatrixXd shear(2, 2);
        shear << 1, 1, 0, 1;
        CHECK_THROWS_AS(bad.set_image(GroupElem::zvec({1}), shear), NotOrthogonal);
    }

    SUBCASE("unknown generator") {
        MatrixRep empty(FreeGroup{2}, 2);
        CHECK_THROWS_AS(empty.image(GroupElem::word({1})), UnknownGenerator);
    }
}

TEST_CASE("algebraic rotation closes exactly") {
    IntPoly phi5 = IntPoly::cyclotomic(5);
    ZRotationRep rep(phi5, std::polar(1.0, 2 * M_PI / 5));
    NumberFieldElem one = NumberFieldElem::one(phi5);
    NumberFieldElem x = one;
    for (int i = 0; i < 5; ++i) x = rep.apply(1, x);
    CHECK(x == one);  // order-5 rotation returns exactly
    CHECK(rep.apply(5, one) == one);
    CHECK(rep.apply(-5, one) == one);
    CHECK(rep.apply(2, one) == rep.apply(1, rep.apply(1, one)));

    // float view is the realified rotation
    Eigen::MatrixXd r = rep.rotation2();
    CHECK((r.transpose() * r - Eigen::MatrixXd::Identity(2, 2)).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("invariance defect") {
    GroupSpec z = ZPow{1};
    GenMeasure mu = lazy_uniform(z);
    RegularRep reg(z, 6);

    DefectReport r = invariance_defect(reg, mu, delta(0));
    CHECK(r.max_defect == doctest::Approx(std::sqrt(2.0)));
    CHECK(r.norm == doctest::Approx(1.0));
    CHECK(r.defects.size() == 2);

    CHECK_THROWS_AS(invariance_defect(reg, mu, VecF()), ZeroVector);

    SUBCASE("sign representation has defect 2") {
        GroupSpec z2 = parse_group_spec("perm:2:(0 1)");
        MatrixRep m(z2, 1);
        Eigen::MatrixXd s(1, 1);
        s << -1;
        m.set_image(parse_elem(z2, "[1 0]"), s);
        Eigen::VectorXd v(1);
        v << 1;
        DefectReport d = invariance_defect(RepSpec{m}, lazy_uniform(z2), v);
        CHECK(d.max_defect == doctest::Approx(2.0));
    }

    SUBCASE("invariant vector has zero defect") {
        MatrixRep triv(z, 1);
        Eigen::MatrixXd one(1, 1);
        one << 1;
        triv.set_image(GroupElem::zvec({1}), one);
        Eigen::VectorXd v(1);
        v << 3;
        CHECK(invariance_defect(RepSpec{triv}, mu, v).max_defect == 0.0);
    }
}

TEST_CASE("direct sums") {
    GroupSpec z = ZPow{1};
    MatrixRep a(z, 1), b(z, 2);
    Eigen::MatrixXd one(1, 1), rot(2, 2);
    one << 1;
    rot << 0, -1, 1, 0;
    a.set_image(GroupElem::zvec({1}), one);
    b.set_image(GroupElem::zvec({1}), rot);
    RepSpec sum = std::make_shared<DirectSumRep>(std::vector<RepSpec>{a, b});
    CHECK(finite_dim(sum) == 3);
    Eigen::MatrixXd m = rep_matrix(sum, GroupElem::zvec({1}));
    CHECK(m(0, 0) == 1.0);
    CHECK(m(2, 1) == 1.0);
    CHECK(m(0, 1) == 0.0);
}

TEST_CASE("realification") {
    Eigen::MatrixXcd u(1, 1);
    u(0, 0) = std::complex<double>(0, 1);
    Eigen::MatrixXd r = realify(u);
    CHECK(r(0, 0) == 0.0);
    CHECK(r(0, 1) == -1.0);
    CHECK(r(1, 0) == 1.0);
    CHECK(r(1, 1) == 0.0);

    u(0, 0) = 1.0;
    CHECK((realify(u) - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);

    Eigen::MatrixXcd bad(1, 1);
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(realify(bad), NotUnitary);

    SUBCASE("norms agree between a complex rep and its realification") {
        std::complex<double> z = std::polar(1.0, 0.7);
        Eigen::MatrixXcd uz(1, 1);
        uz(0, 0) = z;
        Eigen::MatrixXd rz = realify(uz);
        std::complex<double> v(0.3, -0.4);
        Eigen::VectorXd vr(2);
        vr << v.real(), v.imag();
        CHECK((rz * vr).norm() == doctest::Approx(std::abs(z * v)));
        // defect of v equals defect of its realification
        CHECK((rz * vr - vr).norm() == doctest::Approx(std::abs(z * v - v)));
    }

    SUBCASE("exact realification of a rational unitary is exactly orthogonal") {
        // (3/5 + 4/5 i) has unit modulus
        auto m = realify_exact({{Rational(3, 5)}}, {{Rational(4, 5)}});
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Rational dot(0);
                for (int k = 0; k < 2; ++k)
                    dot += m[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                           m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                CHECK(dot == (i == j ? Rational(1) : Rational(0)));
            }
    }
}

TEST_CASE("sigma evaluation") {
    VecQ v, w;
    v.set(GroupElem::zvec({0}), Rational(3));
    w.set(GroupElem::zvec({0}), Rational(1, 2));
    CHECK(sigma_eval(v, w).rational() == Rational(1, 2));
    w.set(GroupElem::zvec({0}), Rational(2, 3));
    CHECK(sigma_eval(v, w).rational() == Rational(0));

    SUBCASE("additivity in the second argument, exact mode") {
        VecQ w1, w2;
        w1.set(GroupElem::zvec({0}), Rational(5, 7));
        w2.set(GroupElem::zvec({0}), Rational(2, 7));
        w2.set(GroupElem::zvec({1}), Rational(4, 3));
        CHECK(sigma_eval(v, w1 + w2) == sigma_eval(v, w1) + sigma_eval(v, w2));
    }
}

TEST_CASE("vector text round trip") {
    GroupSpec z = ZPow{1};
    VecF v = delta(0, 0.5) + delta(-2, 1.25);
    VecF back = vec_from_text(z, vec_to_text(v));
    CHECK(norm(back - v) == doctest::Approx(0.0));
    CHECK_THROWS_AS(vec_from_text(z, "no-tab-here"), ParseError);
}
