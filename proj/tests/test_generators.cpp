#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rispaces/generators.hpp"
#include "rispaces/rng.hpp"

using namespace rispaces;

TEST_CASE("phi limits") {
    auto sq = QuasiConcaveFn::sqrt();
    CHECK(sq.phi0() == 0.0);
    CHECK(std::isinf(sq.phi_inf()));

    auto br = QuasiConcaveFn::bounded_ratio();
    CHECK(br.phi0() == 0.0);
    CHECK(br.phi_inf() == 1.0);
    CHECK(br.eval(1.0) == doctest::Approx(0.5));

    auto mo = QuasiConcaveFn::min_with_one();
    CHECK(mo.eval(2.0) == 1.0);
    CHECK(mo.eval(0.25) == doctest::Approx(0.25));
}

TEST_CASE("invalid generators are rejected") {
    // increasing ratio phi(t)/t: t^2 is not quasi-concave
    std::vector<Piece> bad{Piece::power(Rat(0), XRat::inf(), Rat(1), Rat(2))};
    CHECK_THROWS_AS(QuasiConcaveFn(std::move(bad), 0.0, INFINITY), Error);
    // stored limit contradicting pieces
    std::vector<Piece> ps{Piece::power(Rat(0), XRat::inf(), Rat(1), Rat(1, 2))};
    CHECK_THROWS_AS(QuasiConcaveFn(std::move(ps), 0.0, 5.0), Error);
}

TEST_CASE("phi derivative closed forms") {
    auto sq = QuasiConcaveFn::sqrt();
    auto d = sq.derivative();
    // (1/2) t^(-1/2)
    CHECK(d.eval(0.25) == doctest::Approx(1.0));
    CHECK(d.eval(4.0) == doctest::Approx(0.25));

    auto mo = QuasiConcaveFn::min_with_one();
    auto dm = mo.derivative();
    CHECK(dm.eval(0.5) == doctest::Approx(1.0));
    CHECK(dm.eval(2.0) == 0.0);
}

TEST_CASE("phi derivative of t/(1+t) matches a finite-difference oracle") {
    auto br = QuasiConcaveFn::bounded_ratio();
    auto d = br.derivative();
    for (int i = 1; i <= 10; ++i) {
        double t = 0.3 * i;
        double h = 1e-6 * std::max(1.0, t);
        double fd = (br.eval(t + h) - br.eval(t - h)) / (2 * h);
        CHECK(d.eval(t) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("derivative integrates back to phi") {
    for (auto phi : {QuasiConcaveFn::sqrt(), QuasiConcaveFn::bounded_ratio(),
                     QuasiConcaveFn::min_with_one()}) {
        auto d = phi.derivative();
        for (double t : {0.5, 1.0, 3.0, 7.0}) {
            double acc = 0;
            for (const auto& p : d.pieces()) {
                double lo = p.lo.to_double();
                double hi = p.hi.is_inf() ? t : std::min(t, p.hi.to_double());
                if (hi > lo) acc += p.integral(lo, hi);
                if (p.hi.is_inf() || p.hi.to_double() >= t) break;
            }
            CHECK(acc == doctest::Approx(phi.integral_to(t)).epsilon(1e-8));
        }
    }
}

TEST_CASE("quasi-concavity inequality on random pairs") {
    Rng rng(4242);
    for (auto phi : {QuasiConcaveFn::sqrt(), QuasiConcaveFn::bounded_ratio(),
                     QuasiConcaveFn::min_with_one()}) {
        for (int i = 0; i < 1000; ++i) {
            double s = std::exp((rng.uniform() - 0.5) * 12);
            double t = std::exp((rng.uniform() - 0.5) * 12);
            double bound = std::max(1.0, t / s) * phi.eval(s);
            CHECK(phi.eval(t) <= bound * (1 + 1e-12));
        }
    }
}

TEST_CASE("Orlicz evaluation and the degenerate cap") {
    auto sq = OrliczFn::power(Rat(2));
    CHECK(sq.eval(3.0) == doctest::Approx(9.0));

    auto cap = OrliczFn::indicator_cap();
    CHECK(cap.eval(0.5) == 0.0);
    CHECK(cap.eval(1.0) == 0.0);
    CHECK(std::isinf(cap.eval(2.0)));
    CHECK(cap.largest_zero() == doctest::Approx(1.0));

    auto pc = OrliczFn::power_capped(Rat(2));
    CHECK(pc.eval(0.5) == doctest::Approx(0.25));
    CHECK(pc.eval(1.0) == doctest::Approx(1.0));
    CHECK(std::isinf(pc.eval(1.5)));
}

TEST_CASE("convexity midpoint property on random pairs") {
    Rng rng(17);
    auto F = OrliczFn::power(Rat(3, 2));
    for (int i = 0; i < 1000; ++i) {
        double x = rng.uniform() * 50;
        double y = rng.uniform() * 50;
        CHECK(F.eval(0.5 * (x + y)) <= 0.5 * (F.eval(x) + F.eval(y)) + 1e-9);
    }
}

TEST_CASE("non-convex Orlicz data is rejected") {
    std::vector<Piece> bad{Piece::power(Rat(0), XRat::inf(), Rat(1), Rat(1, 2))};
    CHECK_THROWS_AS(OrliczFn(std::move(bad), XRat::inf(), INFINITY, true), Error);
}

TEST_CASE("delta2 probe") {
    auto sq = OrliczFn::power(Rat(2));
    std::vector<double> grid;
    for (double x = 1.0; x < 1e6; x *= 2) grid.push_back(x);
    CHECK(sq.delta2_probe(false, grid) == doctest::Approx(4.0));

    auto cap = OrliczFn::indicator_cap();
    std::vector<double> grid0;
    for (double x = 1e-6; x < 1; x *= 2) grid0.push_back(x);
    // F(2x)/F(x) hits inf/0 as soon as 2x crosses the cap
    CHECK(std::isinf(cap.delta2_probe(true, grid0)));
}

TEST_CASE("inverse upper") {
    auto sq = OrliczFn::power(Rat(2));
    CHECK(sq.inverse_upper(9.0) == doctest::Approx(3.0));
    auto pc = OrliczFn::power_capped(Rat(2));
    CHECK(pc.inverse_upper(1.0) == doctest::Approx(1.0));
    CHECK(pc.inverse_upper(0.25) == doctest::Approx(0.5));
    auto cap = OrliczFn::indicator_cap();
    CHECK(cap.inverse_upper(0.5) == doctest::Approx(1.0));
}
