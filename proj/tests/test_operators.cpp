#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "degfront/operators.hpp"

using namespace degfront;

namespace {
const Model& model_a() {
    static Model m(1.0, 0.0);
    return m;
}

const FrontProfile& small_profile() {
    static FrontProfile p = [] {
        Orbit o = shoot_orbit(model_a(), 1.0);
        GridSpec g;
        g.h = 0.1;
        g.Xm = 30.0;
        g.Xp = 30.0;
        return reconstruct_profile(o, model_a(), 1.0, g);
    }();
    return p;
}

// deterministic linear congruential draw in [lo, hi]
struct Lcg {
    unsigned long long s = 0x2545F4914F6CDD1DULL;
    double uniform(double lo, double hi) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        double t = static_cast<double>((s >> 11) & ((1ULL << 53) - 1)) / (1ULL << 53);
        return lo + (hi - lo) * t;
    }
};
} // namespace

TEST_CASE("assembled stencil is pinned to second-order central differences") {
    OperatorMatrix M = assemble(small_profile(), model_a(), 0.05, 0.7);
    double h = M.h;
    for (long i = 1; i + 1 < M.n(); ++i) {
        CHECK(M.diag[i] ==
              doctest::Approx(-2.0 * M.b2[i] / (h * h) + M.b0[i]).epsilon(1e-14));
        CHECK(M.sub[i - 1] ==
              doctest::Approx(M.b2[i] / (h * h) - M.b1[i] / (2.0 * h)).epsilon(1e-14));
        CHECK(M.sup[i] ==
              doctest::Approx(M.b2[i] / (h * h) + M.b1[i] / (2.0 * h)).epsilon(1e-14));
    }
    CHECK(M.n() == static_cast<long>(small_profile().phi.size()) - 2);
    CHECK_THROWS_AS(assemble(small_profile(), model_a(), -0.1, 0.0), std::invalid_argument);
}

TEST_CASE("conjugated coefficients at the asymptotic ends") {
    // left end: phi ~ 1, derivatives vanish, so b2 = D(1)+eps, b1 = c-2a(D(1)+eps)
    OperatorMatrix M = assemble(small_profile(), model_a(), 0.2, 0.4);
    double De = 1.0 + 0.2, c = 1.0, a = 0.4;
    CHECK(M.b2.front() == doctest::Approx(De).epsilon(1e-6));
    CHECK(M.b1.front() == doctest::Approx(c - 2.0 * a * De).epsilon(1e-5));
    CHECK(M.b0.front() == doctest::Approx(a * a * De - a * c - 1.0).epsilon(1e-5));
    // right end: phi ~ 0
    CHECK(M.b2.back() == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(M.b0.back() == doctest::Approx(a * a * 0.2 - a * c + 1.0).epsilon(1e-5));
}

TEST_CASE("dispersion points satisfy the characteristic polynomial") {
    Lcg rng;
    for (int t = 0; t < 100; ++t) {
        double c = rng.uniform(0.75, 2.0);
        double a = rng.uniform(0.0, 1.5);
        double eps = rng.uniform(1e-4, 0.5);
        double k = rng.uniform(-20.0, 20.0);
        for (Side side : {Side::Plus, Side::Minus}) {
            cplx lam = dispersion_point(model_a(), c, eps, a, side, k);
            // z = a + ik must be a root of b2 z^2 + (c - 2a b2) z + ... in the
            // unconjugated frame; equivalently the conjugated polynomial at ik
            double u = side == Side::Plus ? 0.0 : 1.0;
            double b2 = model_a().D(u) + eps;
            double b1 = c - 2.0 * a * b2;
            double b0 = a * a * b2 - a * c + model_a().fp(u);
            cplx ik{0.0, k};
            cplx val = b2 * ik * ik + b1 * ik + b0 - lam;
            CHECK(std::abs(val) < 1e-12 * std::max(1.0, std::abs(lam)));

            // regularization identity: lambda^eps - lambda^0 = eps (a^2 - k^2)
            cplx lam0 = dispersion_point(model_a(), c, 0.0, a, side, k);
            cplx diff = lam - lam0;
            cplx expected{eps * (a * a - k * k), k * (-2.0 * a * eps)};
            CHECK(std::abs(diff - expected) < 1e-12 * std::max(1.0, std::abs(lam)));
        }
    }
}

TEST_CASE("asymptotic matrix roots") {
    cplx lam{0.7, 0.3};
    auto [z1, z2] = asymptotic_matrix_roots(model_a(), 1.0, 0.1, 0.5, lam, Side::Minus);
    double b2 = 1.1, b1 = 1.0 - 2.0 * 0.5 * 1.1, b0 = 0.25 * 1.1 - 0.5 - 1.0;
    for (cplx z : {z1, z2}) {
        cplx val = z * z + (b1 / b2) * z + (b0 - lam) / b2;
        CHECK(std::abs(val) < 1e-12);
    }
    CHECK(z1.real() <= z2.real());
    CHECK_THROWS_AS(asymptotic_matrix_roots(model_a(), 1.0, 0.0, 0.5, lam, Side::Plus),
                    std::invalid_argument);
}

TEST_CASE("morse indices balance in the region of consistent splitting") {
    double c = 1.0, eps = 0.1, a = 0.0;
    double bound = consistent_splitting_bound(model_a(), c, eps, a);
    cplx lam{bound + 1.0, 0.0};
    MorseIndexReport rep = morse_index_report(model_a(), c, eps, a, lam);
    CHECK_FALSE(rep.on_border);
    CHECK(rep.dimU_plus == 1);
    CHECK(rep.dimS_minus == 1);
    CHECK(rep.predicted_index == 0);
}

TEST_CASE("weight plan interval") {
    WeightPlan plan = weight_plan(model_a(), 1.0, std::sqrt(0.5));
    CHECK(plan.speed_ok);
    CHECK_FALSE(plan.empty);
    CHECK(plan.a_lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(plan.a_upper == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    CHECK(plan.recommended_a == doctest::Approx(1.309017).epsilon(1e-5));

    // model B at c = 0.73: below the threshold 0.74162 -> empty
    Model b(1.0, 0.1);
    WeightPlan pb = weight_plan(b, 0.73, 0.72125);
    CHECK(pb.empty);
    CHECK_FALSE(pb.speed_ok);
}

TEST_CASE("S curves and their rightmost point") {
    double a = 1.309017;
    double mx = s_curves_max_re(model_a(), 1.0, a);
    CHECK(mx == doctest::Approx(1.0 - a).epsilon(1e-10));
    CHECK(mx <= -0.25); // weighted essential spectrum strictly stable

    std::vector<double> kg = {-2.0, 0.0, 2.0};
    SCurves sc = s_curves(model_a(), 1.0, a, kg);
    CHECK(sc.s_plus[1].real() == doctest::Approx(1.0 - a).epsilon(1e-12));
    CHECK(sc.s_minus[1].real() == doctest::Approx(a * a - a - 1.0).epsilon(1e-12));
    CHECK(sc.s_minus[0].real() == doctest::Approx(-4.0 + a * a - a - 1.0).epsilon(1e-12));
    // vertex dominates
    for (const cplx& z : sc.s_minus) CHECK(z.real() <= sc.s_minus[1].real() + 1e-12);
}

TEST_CASE("matrix market export round trip") {
    OperatorMatrix M = assemble(small_profile(), model_a(), 0.0, 0.0);
    std::string path = "test_operator.mtx";
    export_matrix_market(M, path);
    std::ifstream is(path);
    REQUIRE(is.good());
    std::string header;
    std::getline(is, header);
    CHECK(header == "%%MatrixMarket matrix coordinate real general");
    long rows, cols, nnz;
    is >> rows >> cols >> nnz;
    CHECK(rows == M.n());
    CHECK(cols == M.n());
    CHECK(nnz == 3 * M.n() - 2);
    long i, j;
    double v;
    is >> i >> j >> v; // first record: (1,1) diagonal
    CHECK(i == 1);
    CHECK(j == 1);
    CHECK(v == doctest::Approx(M.diag[0]).epsilon(1e-15));
    std::remove(path.c_str());
}

TEST_CASE("apply performs the tridiagonal product") {
    OperatorMatrix M = assemble(small_profile(), model_a(), 0.0, 0.0);
    std::vector<double> x(M.n(), 1.0);
    std::vector<double> y = M.apply(x);
    CHECK(y.size() == x.size());
    CHECK(y[1] == doctest::Approx(M.sub[0] + M.diag[1] + M.sup[1]).epsilon(1e-13));
    CHECK_THROWS_AS(M.apply(std::vector<double>(3, 0.0)), std::invalid_argument);
}
