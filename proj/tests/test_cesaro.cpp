#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rispaces/cesaro.hpp"
#include "rispaces/rng.hpp"

using namespace rispaces;

namespace {

PiecewiseFn chi(Domain d, const Rat& a, const XRat& b, const Rat& h = Rat(1)) {
    return PiecewiseFn::indicator(d, a, b, h);
}

// adaptive Simpson on one smooth piece (oracle)
double simpson(const std::function<double(double)>& g, double a, double b, double fa,
               double fm, double fb, double whole, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = g(lm), frm = g(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 1e-14)
        return left + right + (left + right - whole) / 15;
    return simpson(g, a, m, fa, flm, fm, left, depth - 1) +
           simpson(g, m, b, fm, frm, fb, right, depth - 1);
}

double integrate_oracle(const PiecewiseFn& f, double a, double b) {
    // split at breakpoints, adaptive Simpson per analytic span
    std::vector<double> cuts{a, b};
    for (const auto& p : f.pieces()) {
        double lo = p.lo.to_double();
        if (lo > a && lo < b) cuts.push_back(lo);
        if (!p.hi.is_inf()) {
            double hi = p.hi.to_double();
            if (hi > a && hi < b) cuts.push_back(hi);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    double acc = 0;
    auto g = [&](double t) { return std::fabs(f.eval(t)); };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double u = cuts[i], v = cuts[i + 1];
        if (!(v > u)) continue;
        double m = 0.5 * (u + v);
        double fu = g(u + 1e-12 * (v - u)), fv = g(v - 1e-12 * (v - u)), fm = g(m);
        double whole = (v - u) / 6 * (fu + 4 * fm + fv);
        acc += simpson(g, u, v, fu, fm, fv, whole, 40);
    }
    return acc;
}

} // namespace

TEST_CASE("averaging the unit indicator gives min(1, 1/x)") {
    auto cf = cesaro_apply(chi(Domain::HalfLine, Rat(0), XRat(Rat(1))));
    CHECK(cf.eval(0.5) == doctest::Approx(1.0));
    CHECK(cf.eval(1.0) == doctest::Approx(1.0));
    CHECK(cf.eval(2.0) == doctest::Approx(0.5));
    CHECK(cf.eval(100.0) == doctest::Approx(0.01));
}

TEST_CASE("averaging chi_(b,inf) gives (1 - b/x)+") {
    auto cf = cesaro_apply(chi(Domain::HalfLine, Rat(3), XRat::inf()));
    CHECK(cf.eval(1.0) == 0.0);
    CHECK(cf.eval(3.0) == doctest::Approx(0.0));
    CHECK(cf.eval(6.0) == doctest::Approx(0.5));
    CHECK(cf.eval(300.0) == doctest::Approx(0.99));
}

TEST_CASE("discrete average of e_1 is 1/n") {
    SeqFn cd = cesaro_apply(SeqFn::unit(1));
    for (long n : {1L, 2L, 7L, 1000L}) CHECK(cd.value(n) == doctest::Approx(1.0 / n));
}

TEST_CASE("exactness against adaptive quadrature at random points") {
    Rng rng(1212);
    std::vector<PiecewiseFn> inputs;
    inputs.push_back(chi(Domain::HalfLine, Rat(1, 2), XRat(Rat(3)), Rat(2)));
    inputs.push_back(PiecewiseFn(
        Domain::HalfLine, {Piece::constant(Rat(0), XRat(Rat(1)), Rat(1)),
                           Piece::power(Rat(1), XRat(Rat(4)), Rat(1), Rat(-1, 2), Rat(1)),
                           Piece::hyp(Rat(4), XRat::inf(), Rat(2), Rat(0))}));
    inputs.push_back(PiecewiseFn(Domain::HalfLine,
                                 {Piece::power(Rat(0), XRat(Rat(2)), Rat(1, 2), Rat(1, 2))}));
    for (const auto& f : inputs) {
        auto cf = cesaro_apply(f);
        for (int i = 0; i < 40; ++i) {
            double x = 0.05 + rng.uniform() * 8;
            double oracle = integrate_oracle(f, 0, x) / x;
            CHECK(cf.eval(x) == doctest::Approx(oracle).epsilon(1e-11));
        }
    }
}

TEST_CASE("monotone domination and f* <= C(f*)") {
    Rng rng(42);
    for (int i = 0; i < 10; ++i) {
        std::vector<Piece> ps;
        Rat cursor = 0;
        for (int kk = 0; kk < 4; ++kk) {
            Rat hi = cursor + rng.rat(4, 3);
            ps.push_back(Piece::constant(cursor, XRat(hi), rng.rat(6, 4)));
            cursor = hi;
        }
        PiecewiseFn f(Domain::HalfLine, std::move(ps));
        auto g = f.scale(Rat(1, 2));
        auto cf = cesaro_apply(f);
        auto cg = cesaro_apply(g);
        auto fstar = rearrange(f).fstar;
        auto cfs = cesaro_apply(fstar);
        for (int k = 1; k < 30; ++k) {
            double t = 0.3 * k;
            CHECK(cg.eval(t) <= cf.eval(t) + 1e-12);
            CHECK(fstar.eval(t) <= cfs.eval(t) + 1e-12);
        }
    }
}

TEST_CASE("discrete/continuous consistency on finitely supported sequences") {
    Rng rng(7);
    for (int it = 0; it < 15; ++it) {
        int n = 1 + static_cast<int>(rng.below(6));
        std::vector<Rat> head;
        std::vector<Piece> emb;
        for (int i = 0; i < n; ++i) {
            Rat v = rng.rat(7, 4);
            head.push_back(v);
            emb.push_back(Piece::constant(Rat(i), XRat(Rat(i + 1)), v));
        }
        SeqFn x(head, SeqTail{});
        PiecewiseFn fx(Domain::HalfLine, std::move(emb));
        SeqFn cd = cesaro_apply(x);
        auto cf = cesaro_apply(fx);
        for (long k = 1; k <= n + 3; ++k) {
            CHECK(cd.value(k) == doctest::Approx(cf.eval(static_cast<double>(k))));
        }
    }
}

TEST_CASE("cx norms") {
    // || chi_(0,1) ||_{C L_inf} = 1
    auto r1 = cx_norm(AnyFn(chi(Domain::HalfLine, Rat(0), XRat(Rat(1)))),
                      SpaceSpec::linf(Domain::HalfLine));
    CHECK(r1.value == doctest::Approx(1.0));

    // || e_1 ||_{C l_2} = pi/sqrt(6), via partial sums + integral tail oracle
    double acc = 0;
    for (long n = 1; n <= 1000000; ++n) acc += 1.0 / (static_cast<double>(n) * n);
    double lo = acc + 1.0 / 1000001.0, hi = acc + 1.0 / 1000000.0;
    double oracle = std::sqrt(0.5 * (lo + hi));
    CHECK(oracle == doctest::Approx(M_PI / std::sqrt(6.0)).epsilon(1e-9));
    auto r2 = cx_norm(AnyFn(SeqFn::unit(1)), SpaceSpec::lp(Domain::Naturals, Rat(2)), 1e-10);
    CHECK(r2.value == doctest::Approx(oracle).epsilon(1e-8));

    // C fixes constants: || chi ||_{C(L_2+L_inf)} = 1
    auto r3 = cx_norm(AnyFn(chi(Domain::HalfLine, Rat(0), XRat::inf())),
                      SpaceSpec::sum_lp_linf(Domain::HalfLine, Rat(2)), 1e-10);
    CHECK(r3.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("norm through the Cesaro space spec matches cx_norm") {
    auto base = SpaceSpec::lp(Domain::HalfLine, Rat(2));
    auto CX = SpaceSpec::cesaro(base);
    auto f = chi(Domain::HalfLine, Rat(0), XRat(Rat(1)));
    CHECK(norm(AnyFn(f), CX).value == doctest::Approx(cx_norm(AnyFn(f), base).value));
}

TEST_CASE("c at zero") {
    CHECK(c_at_zero(chi(Domain::HalfLine, Rat(0), XRat(Rat(1)))) == doctest::Approx(1.0));
    CHECK(c_at_zero(chi(Domain::HalfLine, Rat(1), XRat(Rat(2)))) == 0.0);
    CHECK(c_at_zero(chi(Domain::HalfLine, Rat(0), XRat(Rat(1, 100)), Rat(7))) ==
          doctest::Approx(7.0));
}

TEST_CASE("not locally integrable inputs are rejected") {
    PiecewiseFn f(Domain::HalfLine, {Piece::power(Rat(0), XRat(Rat(1)), Rat(1), Rat(-1))});
    CHECK_THROWS_AS((void)cesaro_apply(f), Error);
}

TEST_CASE("bound probe lower bounds") {
    auto fam = std::vector<AnyFn>{AnyFn(chi(Domain::HalfLine, Rat(0), XRat(Rat(1))))};
    // closed-form oracle: ||min(1,1/x)||_2^2 = int_0^1 1 + int_1^inf x^-2 = 2
    auto l2 = bound_probe(SpaceSpec::lp(Domain::HalfLine, Rat(2)), fam);
    CHECK(l2.value == doctest::Approx(std::sqrt(2.0)));
    auto linf = bound_probe(SpaceSpec::linf(Domain::HalfLine), fam);
    CHECK(linf.value == doctest::Approx(1.0));
    auto l1 = bound_probe(SpaceSpec::lp(Domain::HalfLine, Rat(1)), fam);
    CHECK(std::isinf(l1.value));
}

TEST_CASE("discrete average with constant tail stays closed form") {
    SeqTail t;
    t.kind = SeqTail::Kind::Const;
    t.v = Rat(2);
    SeqFn x({Rat(6)}, t);  // 6, 2, 2, 2, ...
    SeqFn cd = cesaro_apply(x);
    // C(x)_n = (6 + 2(n-1))/n = 2 + 4/n
    for (long n : {1L, 2L, 5L, 1000L})
        CHECK(cd.value(n) == doctest::Approx(2.0 + 4.0 / static_cast<double>(n)));
    CHECK(cd.tail().kind == SeqTail::Kind::Hyp);
}

TEST_CASE("discrete average of hyperbolic tail uses harmonic numbers") {
    SeqTail t;
    t.kind = SeqTail::Kind::Hyp;
    t.a = Rat(1);
    t.b = Rat(0);
    SeqFn x({Rat(1)}, t);  // x_n = 1/n for all n
    SeqFn cd = cesaro_apply(x);
    for (long n : {2L, 10L, 500L}) {
        double hn = 0;
        for (long k = 1; k <= n; ++k) hn += 1.0 / k;
        CHECK(cd.value(n) == doctest::Approx(hn / n).epsilon(1e-12));
    }
}
