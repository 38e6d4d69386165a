#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "latticeprop/bargmann.hpp"
#include "latticeprop/wigner.hpp"

using namespace latticeprop;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// rotation(0.3) * boost(0.7) * rotation(-0.1) and its 16th power, entries
// frozen from a 50-digit evaluation.
const Mat2 kM16{1.992360921398678475, 0.025399506095161443107, 0.27601512669783929421,
                0.50543585606265368563};
const Mat2 kM16p16{63810.883607882469201, 1086.5766184012000528, 11807.772240581071353,
                   201.06366667577791623};

Mat2 reconstruct_wigner(const WignerDecomposition& d) {
    const Mat2& C = d.conjugator;
    const Mat2 cinv{C.a22, -C.a12, -C.a21, C.a11};
    Mat2 r = C * d.w() * cinv;
    if (d.sign < 0) r = -r;
    return r;
}

double rel_diff(const Mat2& a, const Mat2& b) {
    return max_abs_diff(a, b) / std::max(1.0, norm_inf(b));
}

Mat2 random_word(std::mt19937& gen, double rap_max) {
    std::uniform_real_distribution<double> ang(-2.0 * M_PI, 2.0 * M_PI);
    std::uniform_real_distribution<double> rap(0.0, rap_max);
    return rotation(ang(gen)) * boost(rap(gen)) * rotation(ang(gen));
}

Mat2 random_elliptic(std::mt19937& gen, double t_max = 0.999) {
    for (;;) {
        const Mat2 m = random_word(gen, 1.5);
        if (std::fabs(half_trace(m)) <= t_max) return m;
    }
}

Mat2 random_hyperbolic(std::mt19937& gen) {
    for (;;) {
        const Mat2 m = random_word(gen, 1.5);
        const double t = std::fabs(half_trace(m));
        if (t > 1.0001 && t < 3.0) return m;
    }
}

}  // namespace

TEST_CASE("symmetric elliptic core matches the frozen reference") {
    const Mat2 K = rotation(0.5) * squeeze45(0.2) * rotation(0.5);
    const WignerDecomposition d = wigner_decompose(K);
    REQUIRE(std::holds_alternative<Elliptic>(d.w_class));
    const double phi = std::get<Elliptic>(d.w_class).phi.value;
    CHECK_THAT(phi, WithinAbs(0.92386544188178765, 1e-13));
    CHECK_THAT(d.eta.value, WithinAbs(0.43764597140183087, 1e-12));
    CHECK_THAT(std::exp(2.0 * d.eta.value), WithinRel(2.3995757305847936, 1e-12));
    CHECK_THAT(d.delta.value, WithinAbs(0.0, 1e-13));
    CHECK(d.sign == 1);
    CHECK_THAT(std::cos(0.5 * phi), WithinAbs(half_trace(K), 1e-14));
    CHECK(rel_diff(reconstruct_wigner(d), K) <= 1e-13);
}

TEST_CASE("pure boost reduces to the X form by a quarter turn") {
    const WignerDecomposition d = wigner_decompose(boost(1.0));
    REQUIRE(std::holds_alternative<Hyperbolic>(d.w_class));
    CHECK_THAT(std::get<Hyperbolic>(d.w_class).chi.value, WithinAbs(2.0, 1e-13));
    CHECK_THAT(d.delta.value, WithinAbs(-M_PI / 2.0, 1e-13));
    CHECK_THAT(d.eta.value, WithinAbs(0.0, 1e-13));
    CHECK(d.sign == 1);
    CHECK(rel_diff(reconstruct_wigner(d), boost(1.0)) <= 1e-13);
}

TEST_CASE("pure rotations classify elliptic with phi in (0, 4*pi)") {
    const double cases[][2] = {
        {0.3, 0.3},
        {M_PI, M_PI},
        {5.0, 5.0},
        {-0.9, 11.666370614359172},  // 4*pi - 0.9
    };
    for (const auto& c : cases) {
        const WignerDecomposition d = wigner_decompose(rotation(c[0]));
        REQUIRE(std::holds_alternative<Elliptic>(d.w_class));
        CHECK_THAT(std::get<Elliptic>(d.w_class).phi.value, WithinAbs(c[1], 1e-12));
        CHECK_THAT(d.eta.value, WithinAbs(0.0, 1e-14));
        CHECK_THAT(d.delta.value, WithinAbs(0.0, 1e-14));
        CHECK(d.sign == 1);
    }
}

TEST_CASE("shears are their own parabolic normal form") {
    for (double g : {0.8, -1.3}) {
        for (auto o : {ShearOrientation::Upper, ShearOrientation::Lower}) {
            const WignerDecomposition d = wigner_decompose(shear(g, o));
            REQUIRE(std::holds_alternative<Parabolic>(d.w_class));
            const auto& p = std::get<Parabolic>(d.w_class);
            CHECK(p.gamma.value == g);
            CHECK(p.orientation == o);
            CHECK(d.sign == 1);
            CHECK(rel_diff(reconstruct_wigner(d), shear(g, o)) <= 1e-14);
        }
    }
    // negative half-trace parabolic: -E(0.8) = sign * E(0.8)
    const Mat2 m = -shear(0.8, ShearOrientation::Upper);
    const WignerDecomposition d = wigner_decompose(m);
    REQUIRE(std::holds_alternative<Parabolic>(d.w_class));
    CHECK(std::get<Parabolic>(d.w_class).gamma.value == 0.8);
    CHECK(d.sign == -1);
    CHECK(rel_diff(reconstruct_wigner(d), m) <= 1e-14);
}

TEST_CASE("identity and near-identity collapse to the Identity class") {
    const WignerDecomposition dp = wigner_decompose(Mat2::identity());
    CHECK(std::holds_alternative<Identity>(dp.w_class));
    CHECK(dp.sign == 1);
    const WignerDecomposition dn = wigner_decompose(-Mat2::identity());
    CHECK(std::holds_alternative<Identity>(dn.w_class));
    CHECK(dn.sign == -1);
    CHECK(std::holds_alternative<Identity>(classify(rotation(1e-13))));
    // a 1e-5 rotation is far outside eps_identity and must stay elliptic,
    // not get absorbed by the parabolic trace band
    CHECK(std::holds_alternative<Elliptic>(classify(rotation(1e-5))));

    CHECK(max_abs_diff(closed_power(-Mat2::identity(), 3), -Mat2::identity()) == 0.0);
    CHECK(max_abs_diff(closed_power(-Mat2::identity(), 2), Mat2::identity()) == 0.0);
}

TEST_CASE("classification and cyclic parameters are conjugation invariant") {
    std::mt19937 gen(555);
    std::uniform_real_distribution<double> ang(-2.0 * M_PI, 2.0 * M_PI);
    std::uniform_real_distribution<double> rap(0.0, 1.0);
    int done = 0;
    while (done < 500) {
        const Mat2 m = random_word(gen, 1.5);
        if (std::fabs(std::fabs(half_trace(m)) - 1.0) < 1e-3) continue;
        const Mat2 p = rotation(ang(gen)) * boost(rap(gen)) * rotation(ang(gen));
        const Mat2 mc = p * m * inverse(p);
        const WignerDecomposition dm = wigner_decompose(m);
        const WignerDecomposition dc = wigner_decompose(mc);
        REQUIRE(dm.w_class.index() == dc.w_class.index());
        CHECK(dm.sign == dc.sign);
        if (const auto* e = std::get_if<Elliptic>(&dm.w_class)) {
            CHECK_THAT(std::get<Elliptic>(dc.w_class).phi.value,
                       WithinAbs(e->phi.value, 1e-8));
        } else if (const auto* h = std::get_if<Hyperbolic>(&dm.w_class)) {
            CHECK_THAT(std::get<Hyperbolic>(dc.w_class).chi.value,
                       WithinAbs(h->chi.value, 1e-8));
        }
        ++done;
    }
}

TEST_CASE("rotation conjugation preserves the shear parameter") {
    // inside the principal band the orientation survives
    const Mat2 m1 = rotation(0.8) * shear(1.3, ShearOrientation::Upper) * rotation(-0.8);
    const WignerDecomposition d1 = wigner_decompose(m1);
    REQUIRE(std::holds_alternative<Parabolic>(d1.w_class));
    CHECK_THAT(std::get<Parabolic>(d1.w_class).gamma.value, WithinAbs(1.3, 1e-12));
    CHECK(std::get<Parabolic>(d1.w_class).orientation == ShearOrientation::Upper);
    CHECK_THAT(d1.delta.value, WithinAbs(0.8, 1e-12));

    // a conjugation angle past pi/2 re-equalizes through the half-turn branch,
    // which swaps the shear orientation but keeps gamma
    const Mat2 m2 = rotation(2.0) * shear(1.3, ShearOrientation::Upper) * rotation(-2.0);
    const WignerDecomposition d2 = wigner_decompose(m2);
    REQUIRE(std::holds_alternative<Parabolic>(d2.w_class));
    CHECK_THAT(std::get<Parabolic>(d2.w_class).gamma.value, WithinAbs(1.3, 1e-12));
    CHECK(std::get<Parabolic>(d2.w_class).orientation == ShearOrientation::Lower);
    CHECK(rel_diff(reconstruct_wigner(d2), m2) <= 1e-12);

    // boost conjugation rescales gamma: B(s) E(g) B(-s) = E(g e^{2s})
    const Mat2 m3 = boost(0.5) * shear(1.3, ShearOrientation::Upper) * boost(-0.5);
    const WignerDecomposition d3 = wigner_decompose(m3);
    REQUIRE(std::holds_alternative<Parabolic>(d3.w_class));
    CHECK_THAT(std::get<Parabolic>(d3.w_class).gamma.value,
               WithinRel(1.3 * std::exp(1.0), 1e-12));
}

TEST_CASE("wigner reconstruction over random words") {
    std::mt19937 gen(13);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    std::uniform_real_distribution<double> rap(0.0, 4.0);
    for (int i = 0; i < 2000; ++i) {
        const Mat2 m = rotation(ang(gen)) * boost(rap(gen)) * rotation(ang(gen));
        const WignerDecomposition d = wigner_decompose(m);
        REQUIRE(rel_diff(reconstruct_wigner(d), m) <= 1e-10);
        if (const auto* e = std::get_if<Elliptic>(&d.w_class)) {
            CHECK(e->phi.value > 0.0);
            CHECK(e->phi.value < 4.0 * M_PI);
            CHECK_THAT(std::cos(0.5 * e->phi.value), WithinAbs(half_trace(m), 1e-12));
        }
    }
}

TEST_CASE("closed power matches the frozen 16th power") {
    CHECK(rel_diff(closed_power(kM16, 16), kM16p16) <= 1e-11);
    CHECK(rel_diff(naive_power(kM16, 16), kM16p16) <= 1e-11);
    CHECK(rel_diff(chebyshev_power(kM16, 16), kM16p16) <= 1e-11);
}

TEST_CASE("closed power agrees with the naive product") {
    std::mt19937 gen(20240601);
    for (int i = 0; i < 200; ++i) {
        const Mat2 m = random_elliptic(gen);
        for (std::uint64_t n : {1ull, 2ull, 3ull, 10ull, 1000ull}) {
            const Mat2 ref = naive_power(m, n);
            CHECK(rel_diff(closed_power(m, n), ref) <= 1e-8);
            CHECK(rel_diff(chebyshev_power(m, n), ref) <= 1e-8);
        }
    }
    for (int i = 0; i < 200; ++i) {
        const Mat2 m = random_hyperbolic(gen);
        for (std::uint64_t n : {1ull, 5ull, 64ull}) {
            const Mat2 ref = naive_power(m, n);
            CHECK(rel_diff(closed_power(m, n), ref) <= 1e-8);
        }
    }
}

TEST_CASE("shear powers are exact") {
    for (std::uint64_t n : {0ull, 1ull, 7ull, 1000000000ull}) {
        const Mat2 p = closed_power(shear(0.3, ShearOrientation::Lower), n);
        const Mat2 expect = shear(static_cast<double>(n) * 0.3, ShearOrientation::Lower);
        CHECK(max_abs_diff(p, expect) == 0.0);
    }
}

TEST_CASE("power shortcuts and the semigroup property at large N") {
    std::mt19937 gen(42);
    const Mat2 m = random_elliptic(gen);
    CHECK(max_abs_diff(closed_power(m, 0), Mat2::identity()) == 0.0);
    CHECK(max_abs_diff(closed_power(m, 1), m) == 0.0);

    // M^(a+b) = M^a * M^b stays consistent up to accumulated phase rounding
    const Mat2 lhs = closed_power(m, 1000000000ull);
    const Mat2 rhs = closed_power(m, 700000000ull) * closed_power(m, 300000000ull);
    CHECK(max_abs_diff(lhs, rhs) <= 1e-5);
}

TEST_CASE("hyperbolic overflow guards fire consistently") {
    // the closed-form cap is deliberately conservative (N*chi/2 > 300), while
    // the naive product only dies at the double limit near e^709
    CHECK_THROWS_AS(closed_power(boost(2.0), 200), std::overflow_error);
    CHECK_THROWS_AS(naive_power(boost(2.0), 400), std::overflow_error);
    CHECK_THROWS_AS(chebyshev_power(boost(2.0), 2000), std::overflow_error);
    // chi = 4, N*chi/2 = 298: just under the cap, still finite
    CHECK_NOTHROW(closed_power(boost(2.0), 149));
    // elliptic never overflows
    CHECK_NOTHROW(closed_power(rotation(0.7), 1000000000ull));
}

TEST_CASE("the parabolic gate needs both a unit trace and a one-sided shear") {
    const double lambda = 0.8;
    const double theta_star = std::asin(std::tanh(lambda));
    const auto core = [&](double theta) {
        return rotation(theta) * squeeze45(lambda) * rotation(theta);
    };
    CHECK(std::holds_alternative<Parabolic>(classify(core(theta_star))));
    CHECK(std::holds_alternative<Elliptic>(classify(core(theta_star + 3e-5))));
    CHECK(std::holds_alternative<Hyperbolic>(classify(core(theta_star - 3e-5))));
    // widening eps_parab pulls the neighborhood into the parabolic band
    CHECK(std::holds_alternative<Parabolic>(
        classify(core(theta_star + 3e-5), eps_det_default, 1e-3)));

    // closed powers stay continuous across the boundary
    const Mat2 p0 = closed_power(core(theta_star), 32);
    const Mat2 pe = closed_power(core(theta_star + 1e-7), 32);
    const Mat2 ph = closed_power(core(theta_star - 1e-7), 32);
    CHECK(max_abs_diff(p0, pe) <= 1e-2);
    CHECK(max_abs_diff(p0, ph) <= 1e-2);
}

TEST_CASE("params_from_bargmann agrees with the matrix decomposition") {
    std::mt19937 gen(987);
    std::uniform_real_distribution<double> rl(0.01, 2.0);
    std::uniform_real_distribution<double> rt(-M_PI, M_PI);
    int done = 0;
    while (done < 2000) {
        const double lambda = rl(gen);
        const double theta = rt(gen);
        if (std::fabs(std::fabs(std::cosh(lambda) * std::sin(theta)) - std::sinh(lambda)) < 1e-6)
            continue;
        const Mat2 K = rotation(theta) * squeeze45(lambda) * rotation(theta);
        const WignerDecomposition d = wigner_decompose(K);
        // for lambda > 0 the hyperbolic side always has
        // cosh(lambda)sin(theta) + sinh(lambda) > 0, so this never throws
        const BargmannWignerParams p = params_from_bargmann(lambda, theta);
        REQUIRE(p.w_class.index() == d.w_class.index());
        if (const auto* e = std::get_if<Elliptic>(&p.w_class)) {
            CHECK_THAT(std::get<Elliptic>(d.w_class).phi.value,
                       WithinRel(e->phi.value, 1e-10));
            CHECK_THAT(d.eta.value, WithinAbs(p.eta.value, 1e-10));
        } else if (const auto* h = std::get_if<Hyperbolic>(&p.w_class)) {
            CHECK_THAT(std::get<Hyperbolic>(d.w_class).chi.value,
                       WithinRel(h->chi.value, 1e-10));
            CHECK_THAT(d.eta.value, WithinAbs(p.eta.value, 1e-10));
        }
        ++done;
    }

    // the degenerate squeeze: K collapses to rotation(2*theta)
    const BargmannWignerParams flat = params_from_bargmann(0.0, 0.3);
    REQUIRE(std::holds_alternative<Elliptic>(flat.w_class));
    CHECK_THAT(std::get<Elliptic>(flat.w_class).phi.value, WithinAbs(0.6, 1e-14));
    CHECK(flat.eta.value == 0.0);

    // boundary lands on the parabolic gate
    CHECK(std::holds_alternative<Parabolic>(
        params_from_bargmann(0.8, std::asin(std::tanh(0.8))).w_class));

    // negative lambda violates the positive-axis convention on the
    // hyperbolic side and is diagnosed rather than silently mislabeled
    CHECK_THROWS_AS(params_from_bargmann(-0.5, 0.1), std::domain_error);
    CHECK(std::holds_alternative<Hyperbolic>(
        classify(rotation(0.1) * squeeze45(-0.5) * rotation(0.1))));
}

TEST_CASE("chebyshev two-step identity") {
    std::mt19937 gen(8);
    for (int i = 0; i < 100; ++i) {
        const Mat2 m = random_elliptic(gen);
        CHECK(rel_diff(chebyshev_power(m, 2), m * m) <= 1e-13);
    }
}
