#include <doctest.h>

#include <cmath>

#include "cuspflow/group.hpp"
#include "cuspflow/quadrature.hpp"
#include "cuspflow/rng.hpp"

using namespace cuspflow;

namespace {
constexpr double kPi = 3.14159265358979323846;

GroupPoint single(FactorKind kind, Mat2 m) {
    GroupPoint g;
    g.factors.push_back({kind, m});
    return g;
}
} // namespace

TEST_CASE("iwasawa decomposition on pinned real matrices") {
    // upper triangular: n_2 a_{log 4}, k = id
    auto c = iwasawa_decompose(single(FactorKind::Real, Mat2{2.0, 1.0, 0.0, 0.5}));
    CHECK(c.factors[0].x.real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c.factors[0].t == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(c.factors[0].k.theta == doctest::Approx(0.0));

    // rotation by pi/2 fixes i
    auto r = iwasawa_decompose(single(FactorKind::Real, Mat2{0.0, 1.0, -1.0, 0.0}));
    CHECK(r.factors[0].x.real() == doctest::Approx(0.0));
    CHECK(r.factors[0].t == doctest::Approx(0.0));
    CHECK(r.factors[0].k.theta == doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("compose on pinned coordinates") {
    IwasawaCoords c;
    c.factors.push_back({FactorKind::Real, 0.0, 0.0, {}});
    auto id = compose(c);
    CHECK(id.factors[0].m.a.real() == doctest::Approx(1.0));
    CHECK(std::abs(id.factors[0].m.b) == doctest::Approx(0.0));

    c.factors[0].t = 1.7;
    auto d = compose(c);
    CHECK(d.factors[0].m.a.real() == doctest::Approx(std::exp(0.85)).epsilon(1e-14));
    CHECK(d.factors[0].m.d.real() == doctest::Approx(std::exp(-0.85)).epsilon(1e-14));
}

TEST_CASE("round trip compose(iwasawa(g)) = g") {
    RngStream rng(41, 0);
    for (auto kind : {FactorKind::Real, FactorKind::Complex}) {
        double worst = 0.0;
        for (int i = 0; i < 20000; ++i) {
            GroupPoint g = random_group_point(kind, rng);
            GroupPoint back = compose(iwasawa_decompose(g));
            worst = std::max(worst, g.max_abs_diff(back));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("decompose of compose is the identity on coordinates") {
    RngStream rng(57, 0);
    for (int i = 0; i < 10000; ++i) {
        IwasawaCoords c;
        FactorCoords fc;
        fc.kind = FactorKind::Complex;
        fc.x = cplx(rng.normal(), rng.normal());
        fc.t = rng.uniform(-3.0, 3.0);
        fc.k.theta = rng.uniform(0.05, kPi / 2 - 0.05);
        fc.k.alpha = rng.uniform(0.0, 2 * kPi);
        fc.k.beta = rng.uniform(0.0, 2 * kPi);
        c.factors.push_back(fc);
        auto c2 = iwasawa_decompose(compose(c));
        CHECK(std::abs(c2.factors[0].x - fc.x) < 1e-10);
        CHECK(c2.factors[0].t == doctest::Approx(fc.t).epsilon(1e-10));
        CHECK(c2.factors[0].k.theta == doctest::Approx(fc.k.theta).epsilon(1e-9));
        CHECK(c2.factors[0].k.alpha == doctest::Approx(fc.k.alpha).epsilon(1e-9));
        CHECK(c2.factors[0].k.beta == doctest::Approx(fc.k.beta).epsilon(1e-9));
    }
}

TEST_CASE("left N-invariance of (t, k)") {
    RngStream rng(11, 0);
    for (auto kind : {FactorKind::Real, FactorKind::Complex}) {
        for (int i = 0; i < 200; ++i) {
            GroupPoint g = random_group_point(kind, rng);
            cplx x = kind == FactorKind::Real ? cplx(rng.normal(), 0.0)
                                              : cplx(rng.normal(), rng.normal());
            GroupPoint ng = single(kind, make_n(x)).mul(g);
            auto c1 = iwasawa_decompose(g), c2 = iwasawa_decompose(ng);
            CHECK(c1.factors[0].t == doctest::Approx(c2.factors[0].t).epsilon(1e-11));
            CHECK(c1.factors[0].k.theta ==
                  doctest::Approx(c2.factors[0].k.theta).epsilon(1e-9));
        }
    }
}

TEST_CASE("height cocycle through the bottom row") {
    RngStream rng(13, 0);
    for (int i = 0; i < 500; ++i) {
        GroupPoint g = random_group_point(FactorKind::Real, rng);
        GroupPoint h = random_group_point(FactorKind::Real, rng);
        const Mat2& gm = g.factors[0].m;
        const Mat2& hm = h.factors[0].m;
        // row of g times h
        cplx c = gm.c * hm.a + gm.d * hm.c;
        cplx d = gm.c * hm.b + gm.d * hm.d;
        double lhs = std::exp(-iwasawa_decompose(g.mul(h)).factors[0].t);
        CHECK(lhs == doctest::Approx(std::norm(c) + std::norm(d)).epsilon(1e-10));
    }
}

TEST_CASE("unipotent one-parameter law") {
    auto kinds = std::vector<FactorKind>{FactorKind::Real};
    FlowDirection y = FlowDirection::standard(1);
    CHECK(unipotent(0.0, y, kinds).factors[0].m.c.real() == doctest::Approx(0.0));
    CHECK(unipotent(3.0, y, kinds).factors[0].m.c.real() == doctest::Approx(3.0));
    RngStream rng(3, 0);
    for (int i = 0; i < 100; ++i) {
        double s = rng.uniform(-5, 5), t = rng.uniform(-5, 5);
        GroupPoint u = unipotent(s, y, kinds).mul(unipotent(t, y, kinds));
        CHECK(u.max_abs_diff(unipotent(s + t, y, kinds)) < 1e-12);
    }
}

TEST_CASE("flow direction invariants") {
    CHECK_THROWS_AS(FlowDirection({0.5}), ValidationError);
    CHECK_THROWS_AS(FlowDirection({1.0, 1.2}), ValidationError);
    CHECK_THROWS_AS(FlowDirection({}), ValidationError);
    CHECK_NOTHROW(FlowDirection({1.0, 0.3}));
}

TEST_CASE("haar density values") {
    IwasawaCoords c;
    c.factors.push_back({FactorKind::Real, 0.0, 0.0, {}});
    CHECK(haar_density(c) == doctest::Approx(1.0));
    c.factors[0].t = std::log(4.0);
    CHECK(haar_density(c) == doctest::Approx(0.25).epsilon(1e-14));
    c.factors[0].kind = FactorKind::Complex;
    CHECK(haar_density(c) == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("compact measure is a probability measure") {
    // SO(2): constant density 1/2pi over [0, 2pi)
    CHECK(compact_density(FactorKind::Real, {}) * 2 * kPi == doctest::Approx(1.0));
    // SU(2): quadrature over the box [0, pi/2] x [0, 2pi)^2
    double total = integrate_gl(
        [&](double th) {
            CompactParam k;
            k.theta = th;
            return compact_density(FactorKind::Complex, k) * (2 * kPi) * (2 * kPi);
        },
        0.0, kPi / 2, 64);
    CHECK(std::abs(total - 1.0) < 1e-6);
}

TEST_CASE("cusp coordinates, n = 1") {
    IwasawaCoords c;
    c.factors.push_back({FactorKind::Real, 0.0, 2.0, {}});
    auto cc = cusp_coords(compose(c), {{1.0}}, 1.0);
    CHECK(cc.tn == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cc.haar_density == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));

    IwasawaCoords d;
    d.factors.push_back({FactorKind::Complex, 0.0, 2.0, {}});
    auto dd = cusp_coords(compose(d), {{0.5}}, 0.5);
    CHECK(dd.tn == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("cusp coordinates, n = 2 against the linear-algebra identity") {
    // two real factors; unit-log column (L, -L), eta = (1/2, 1/2)
    double L = 0.8813735870195430; // log of a fundamental unit, any value works
    std::vector<std::vector<double>> D = {{L, -L}, {0.5, 0.5}};
    RngStream rng(5, 0);
    for (int i = 0; i < 50; ++i) {
        IwasawaCoords c;
        for (int j = 0; j < 2; ++j) {
            FactorCoords fc;
            fc.kind = FactorKind::Real;
            fc.x = cplx(rng.normal(), 0.0);
            fc.t = rng.uniform(-2, 2);
            fc.k.theta = rng.uniform(0.0, 2 * kPi);
            c.factors.push_back(fc);
        }
        auto cc = cusp_coords(compose(c), D, L);
        // t_n must equal sum mu_j ttilde_j with ttilde the Iwasawa t-vector
        CHECK(cc.tn == doctest::Approx(c.factors[0].t + c.factors[1].t).epsilon(1e-9));
        // and D tvec reproduces the Iwasawa ts
        CHECK(L * cc.tvec[0] + 0.5 * cc.tvec[1] ==
              doctest::Approx(c.factors[0].t).epsilon(1e-9));
    }
    CHECK_THROWS_AS(
        cusp_coords(random_group_point(FactorKind::Real, rng, 2), {{0.0, 0.0}, {0.5, 0.5}}, 1.0),
        SingularD);
    CHECK_THROWS_AS(
        cusp_coords(random_group_point(FactorKind::Real, rng, 2), {{L, -L}, {0.5, 0.4}}, 1.0),
        ValidationError);
}

TEST_CASE("determinant renormalization") {
    GroupPoint g = single(FactorKind::Real, Mat2{2.0 * (1 + 3e-9), 1.0, 0.0, 0.5});
    g.renormalize();
    CHECK(std::abs(g.factors[0].m.det() - cplx(1.0)) < 1e-14);
}
