#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rispaces/rearrange.hpp"
#include "rispaces/rng.hpp"

using namespace rispaces;

namespace {

PiecewiseFn step_fn(Domain d, std::initializer_list<std::tuple<int, int, Rat>> blocks) {
    std::vector<Piece> ps;
    for (auto& [lo, hi, c] : blocks) ps.push_back(Piece::constant(Rat(lo), XRat(Rat(hi)), c));
    return PiecewiseFn(d, std::move(ps));
}

// brute-force oracle: grid count of {|f| > lambda} on a truncation
double grid_superlevel(const PiecewiseFn& f, double lambda, double T, long n) {
    long count = 0;
    for (long i = 0; i < n; ++i) {
        double t = (i + 0.5) * T / n;
        if (std::fabs(f.eval(t)) > lambda) ++count;
    }
    return T * static_cast<double>(count) / static_cast<double>(n);
}

// sort-by-height oracle for step functions
std::vector<std::pair<Rat, Rat>> sorted_blocks(const PiecewiseFn& f) {
    std::vector<std::pair<Rat, Rat>> blk;  // (height, length), finite pieces only
    PiecewiseFn g = f.abs();
    for (const auto& p : g.pieces()) {
        if (p.is_zero() || p.hi.is_inf()) continue;
        blk.push_back({p.p0, p.hi.finite() - p.lo});
    }
    std::stable_sort(blk.begin(), blk.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    // merge equal heights
    std::vector<std::pair<Rat, Rat>> out;
    for (auto& b : blk) {
        if (!out.empty() && out.back().first == b.first)
            out.back().second += b.second;
        else
            out.push_back(b);
    }
    return out;
}

std::vector<std::pair<Rat, Rat>> pieces_as_blocks(const PiecewiseFn& f) {
    std::vector<std::pair<Rat, Rat>> out;
    for (const auto& p : f.pieces()) {
        if (p.is_zero() || p.hi.is_inf()) continue;
        REQUIRE(p.kind == PieceKind::Const);
        out.push_back({p.p0, p.hi.finite() - p.lo});
    }
    return out;
}

PiecewiseFn random_step(Rng& rng, Domain d, int max_pieces) {
    std::vector<Piece> ps;
    Rat cursor = 0;
    int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_pieces)));
    for (int i = 0; i < n; ++i) {
        Rat len = rng.rat(6, 8);
        if (d == Domain::UnitInterval) len = len / Rat(8 * n);
        Rat hi = cursor + len;
        Rat h = rng.below(5) == 0 ? Rat(0) : rng.rat(9, 7);
        if (rng.below(3) == 0) h = -h;  // signed heights exercise |f|
        ps.push_back(Piece::constant(cursor, XRat(hi), h));
        cursor = hi;
    }
    return PiecewiseFn(d, std::move(ps));
}

} // namespace

TEST_CASE("distribution of finite step function") {
    auto f = step_fn(Domain::HalfLine, {{1, 2, Rat(3)}, {4, 6, Rat(1)}});
    auto d = distribution(f);
    REQUIRE(d.exact());
    CHECK(d.at_exact(Rat(0)) == XRat(Rat(3)));
    CHECK(d.at_exact(Rat(1, 2)) == XRat(Rat(3)));
    CHECK(d.at_exact(Rat(1)) == XRat(Rat(1)));
    CHECK(d.at_exact(Rat(2)) == XRat(Rat(1)));
    CHECK(d.at_exact(Rat(3)) == XRat(Rat(0)));
    CHECK(d.at_exact(Rat(5)) == XRat(Rat(0)));
}

TEST_CASE("distribution of indicator of infinite-measure set") {
    auto f = PiecewiseFn::indicator(Domain::HalfLine, Rat(0), XRat::inf());
    auto d = distribution(f);
    CHECK(d.at_exact(Rat(0)).is_inf());
    CHECK(d.at_exact(Rat(1, 2)).is_inf());
    CHECK(d.at_exact(Rat(1)) == XRat(Rat(0)));
}

TEST_CASE("distribution of 1/t on (1,inf): closed form vs grid count") {
    PiecewiseFn f(Domain::HalfLine, {Piece::hyp(Rat(1), XRat::inf(), Rat(1), Rat(0))});
    auto d = distribution(f);
    // analytic: d(lambda) = 1/lambda - 1 on (0,1), 0 beyond
    for (double lam : {0.1, 0.25, 0.5, 0.9}) {
        CHECK(d.at(lam) == doctest::Approx(1.0 / lam - 1.0).epsilon(1e-12));
    }
    CHECK(d.at(1.0) == doctest::Approx(0.0));
    CHECK(d.at(2.0) == doctest::Approx(0.0));
    // grid-count oracle at lambda in {0.1, 0.5}
    for (double lam : {0.1, 0.5}) {
        double oracle = grid_superlevel(f, lam, 16.0, 2000000);
        CHECK(d.at(lam) == doctest::Approx(oracle).epsilon(1e-4));
    }
}

TEST_CASE("rearrange step function: sort blocks by height") {
    auto f = step_fn(Domain::HalfLine, {{1, 2, Rat(3)}, {4, 6, Rat(1)}});
    auto r = rearrange(f);
    REQUIRE(r.exact);
    auto blocks = pieces_as_blocks(r.fstar);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0] == std::pair<Rat, Rat>{Rat(3), Rat(1)});
    CHECK(blocks[1] == std::pair<Rat, Rat>{Rat(1), Rat(2)});
}

TEST_CASE("rearrange sorted sequence") {
    SeqFn x({Rat(0), Rat(2), Rat(0), Rat(1), Rat(1)}, SeqTail{});
    auto r = rearrange(x);
    REQUIRE(r.exact);
    CHECK(r.xstar.value_exact(1) == Rat(2));
    CHECK(r.xstar.value_exact(2) == Rat(1));
    CHECK(r.xstar.value_exact(3) == Rat(1));
    CHECK(r.xstar.value_exact(4) == Rat(0));
    CHECK(r.xstar.value_exact(5) == Rat(0));
    CHECK(r.xstar.value_exact(100) == Rat(0));
}

TEST_CASE("rearrange fixed point and tail head") {
    std::vector<Piece> ps{Piece::constant(Rat(0), XRat(Rat(1)), Rat(2)),
                          Piece::constant(Rat(1), XRat::inf(), Rat(1))};
    PiecewiseFn f(Domain::HalfLine, std::move(ps));
    auto r = rearrange(f);
    REQUIRE(r.exact);
    CHECK(r.fstar.eval(0.5) == doctest::Approx(2.0));
    CHECK(r.fstar.eval(7.0) == doctest::Approx(1.0));
    auto [tinf, t0] = tail_head(f);
    CHECK(tinf == doctest::Approx(1.0));
    CHECK(t0 == doctest::Approx(2.0));
}

TEST_CASE("tail_head of singular power piece") {
    PiecewiseFn f(Domain::UnitInterval,
                  {Piece::power(Rat(0), XRat(Rat(1)), Rat(1, 2), Rat(-1, 2))});
    auto [tinf, t0] = tail_head(f);
    CHECK(tinf == 0.0);
    CHECK(std::isinf(t0));
}

TEST_CASE("tail_head of sequence with hyperbolic tail") {
    SeqTail t;
    t.kind = SeqTail::Kind::Hyp;
    t.a = Rat(1);
    t.b = Rat(0);
    SeqFn x({Rat(5)}, t);
    auto [tinf, t0] = tail_head(x);
    CHECK(tinf == 0.0);
    CHECK(t0 == doctest::Approx(5.0));
}

TEST_CASE("window basics") {
    auto chi = PiecewiseFn::indicator(Domain::HalfLine, Rat(0), XRat::inf());
    auto w = chi.window(Rat(0), XRat(Rat(5)));
    CHECK(w.eval(3.0) == 0.0);
    CHECK(w.eval(6.0) == 1.0);

    auto f = step_fn(Domain::HalfLine, {{1, 2, Rat(3)}, {4, 6, Rat(1)}});
    auto fstar = rearrange(f).fstar;  // 3 chi_(0,1) + chi_(1,3)
    auto w2 = fstar.window(Rat(1, 2), XRat(Rat(2)));
    CHECK(w2.eval(0.25) == doctest::Approx(3.0));
    CHECK(w2.eval(0.75) == 0.0);
    CHECK(w2.eval(1.5) == 0.0);
    CHECK(w2.eval(2.5) == doctest::Approx(1.0));
    CHECK(w2.eval(4.0) == 0.0);
}

TEST_CASE("window on sequences zeroes the head through N") {
    SeqFn x = SeqFn::ones();
    auto w = x.window(Rat(0), XRat(Rat(4)));
    for (long n = 1; n <= 4; ++n) CHECK(w.value(n) == 0.0);
    CHECK(w.value(5) == 1.0);
    CHECK(w.value(1000) == 1.0);
}

TEST_CASE("window + complement = f pointwise") {
    Rng rng(31337);
    for (int it = 0; it < 20; ++it) {
        auto f = random_step(rng, Domain::HalfLine, 8);
        Rat a = rng.rat(4, 3);
        Rat b = a + rng.rat(5, 2);
        auto w = f.window(a, XRat(b));
        auto c = f.complement_window(a, XRat(b));
        for (int k = 0; k < 60; ++k) {
            double t = rng.uniform() * 12.0;
            CHECK(w.eval(t) + c.eval(t) == doctest::Approx(f.eval(t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("equimeasurability of the rearrangement on a log grid") {
    Rng rng(99);
    for (int it = 0; it < 30; ++it) {
        auto f = random_step(rng, Domain::HalfLine, 10);
        auto r = rearrange(f);
        REQUIRE(r.exact);
        auto d1 = distribution(f);
        auto d2 = distribution(r.fstar);
        for (double lam = 1e-3; lam < 32; lam *= 2) {
            Rat l = Rat::from_double(lam);
            CHECK(d1.at_exact(l) == d2.at_exact(l));
        }
    }
}

TEST_CASE("monotonicity of f*") {
    Rng rng(7);
    for (int it = 0; it < 20; ++it) {
        auto f = random_step(rng, Domain::HalfLine, 10);
        auto fstar = rearrange(f).fstar;
        double prev = std::numeric_limits<double>::infinity();
        for (double t = 0.01; t < 20; t *= 1.3) {
            double v = fstar.eval(t);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("rearrange matches the sort-by-height oracle on random step functions") {
    Rng rng(2024);
    for (int it = 0; it < 100; ++it) {
        auto f = random_step(rng, Domain::HalfLine, 12);
        auto r = rearrange(f);
        REQUIRE(r.exact);
        CHECK(pieces_as_blocks(r.fstar) == sorted_blocks(f));
    }
    for (int it = 0; it < 100; ++it) {
        auto f = random_step(rng, Domain::UnitInterval, 12);
        auto r = rearrange(f);
        REQUIRE(r.exact);
        CHECK(pieces_as_blocks(r.fstar) == sorted_blocks(f));
    }
}

TEST_CASE("sequence embeds as a step function with identical blocks") {
    Rng rng(555);
    for (int it = 0; it < 25; ++it) {
        int n = 1 + static_cast<int>(rng.below(8));
        std::vector<Rat> head;
        std::vector<Piece> emb;
        for (int i = 0; i < n; ++i) {
            Rat v = rng.below(4) == 0 ? Rat(0) : rng.rat(9, 5);
            head.push_back(v);
            emb.push_back(Piece::constant(Rat(i), XRat(Rat(i + 1)), v));
        }
        SeqFn x(head, SeqTail{});
        PiecewiseFn fx(Domain::HalfLine, std::move(emb));
        auto rs = rearrange(x);
        auto rf = rearrange(fx);
        // blocks of the function rearrangement are the sorted sequence values
        auto blocks = pieces_as_blocks(rf.fstar);
        long pos = 1;
        for (auto& [h, len] : blocks) {
            REQUIRE(len.is_integer());
            for (long k = 0; k < len.num_long(); ++k) {
                CHECK(rs.xstar.value_exact(pos) == h);
                ++pos;
            }
        }
        CHECK(rs.xstar.value_exact(pos) == Rat(0));
    }
}

TEST_CASE("rearrange of decreasing singular function is itself") {
    // (1/(2 sqrt t)) chi_(0,1): already non-increasing with full support
    PiecewiseFn f(Domain::UnitInterval,
                  {Piece::power(Rat(0), XRat(Rat(1)), Rat(1, 2), Rat(-1, 2))});
    auto r = rearrange(f);
    REQUIRE(r.exact);
    CHECK(r.fstar.eval(0.25) == doctest::Approx(1.0));
    CHECK(r.fstar.eval(0.81) == doctest::Approx(1.0 / 1.8));
}

TEST_CASE("exact rearrangement of shifted singular piece") {
    // f = (t-2)^(-1/2)/2 on (2,3): translates back to the origin
    PiecewiseFn f(Domain::HalfLine,
                  {Piece::power(Rat(2), XRat(Rat(3)), Rat(1, 2), Rat(-1, 2), Rat(2))});
    auto r = rearrange(f);
    REQUIRE(r.exact);
    CHECK(r.fstar.eval(0.25) == doctest::Approx(1.0));
    CHECK(r.fstar.eval(0.5) == doctest::Approx(0.5 / std::sqrt(0.5)));
    CHECK(r.fstar.eval(2.0) == 0.0);
    auto d1 = distribution(f);
    auto d2 = distribution(r.fstar);
    for (double lam : {0.3, 0.6, 1.0, 3.0}) {
        CHECK(d1.at(lam) == doctest::Approx(d2.at(lam)).epsilon(1e-10));
    }
}

TEST_CASE("exact rearrangement of increasing piece uses mirrored form") {
    // f = 1 - 1/t on (1,4), zero elsewhere: increasing, range (0, 3/4)
    PiecewiseFn f(Domain::HalfLine, {Piece::hyp(Rat(1), XRat(Rat(4)), Rat(-1), Rat(1))});
    auto r = rearrange(f);
    REQUIRE(r.exact);
    auto d1 = distribution(f);
    auto d2 = distribution(r.fstar);
    for (double lam : {0.1, 0.3, 0.5, 0.7}) {
        CHECK(d1.at(lam) == doctest::Approx(d2.at(lam)).epsilon(1e-10));
    }
    // monotone
    CHECK(r.fstar.eval(0.5) >= r.fstar.eval(1.0));
    CHECK(r.fstar.eval(1.0) >= r.fstar.eval(2.9));
}

TEST_CASE("numeric rearrangement brackets overlapping ranges") {
    // two singular pieces with overlapping value ranges force the numeric path
    PiecewiseFn f(Domain::HalfLine,
                  {Piece::power(Rat(0), XRat(Rat(1)), Rat(1, 2), Rat(-1, 2)),
                   Piece::power(Rat(1), XRat(Rat(2)), Rat(1), Rat(-1, 2), Rat(1))});
    auto r = rearrange(f, 1e-6);
    CHECK(!r.exact);
    CHECK(r.eps_cut > 0);
    auto d = distribution(f);
    // envelope property: lower <= f* <= upper at sampled points, via d
    for (double t = 0.01; t < 3; t *= 1.5) {
        double lo = r.lower.eval(t), hi = r.upper.eval(t);
        CHECK(lo <= hi + 1e-12);
        // d(f*(t)) <= t <=> f*(t) <= value is consistent with envelopes
        CHECK(d.at(hi + 1e-9) <= t + 1e-6);
    }
}

TEST_CASE("rearrange sequence with hyperbolic tail merges heads exactly") {
    SeqTail t;
    t.kind = SeqTail::Kind::Hyp;
    t.a = Rat(1);
    t.b = Rat(0);
    // x = (1/3, 0, 1/2, tail 1/n from n=4): values 1/4, 1/5, ...
    SeqFn x({Rat(1, 3), Rat(0), Rat(1, 2)}, t);
    auto r = rearrange(x);
    REQUIRE(r.exact);
    CHECK(r.xstar.value_exact(1) == Rat(1, 2));
    CHECK(r.xstar.value_exact(2) == Rat(1, 3));
    CHECK(r.xstar.value_exact(3) == Rat(1, 4));
    CHECK(r.xstar.value_exact(4) == Rat(1, 5));
    CHECK(r.xstar.value_exact(10) == Rat(1, 11));
}

TEST_CASE("rearrange sequence with increasing tail becomes constant") {
    SeqTail t;
    t.kind = SeqTail::Kind::Hyp;
    t.a = Rat(-1);
    t.b = Rat(2);
    SeqFn x({Rat(5), Rat(1)}, t);  // tail 2 - 1/n < 2
    auto r = rearrange(x);
    REQUIRE(r.exact);
    CHECK(r.xstar.value_exact(1) == Rat(5));
    CHECK(r.xstar.value_exact(2) == Rat(2));
    CHECK(r.xstar.value_exact(50) == Rat(2));
}

TEST_CASE("unbounded rearrangement with exact representation demanded") {
    PiecewiseFn f(Domain::HalfLine,
                  {Piece::power(Rat(0), XRat(Rat(1)), Rat(1, 2), Rat(-1, 2)),
                   Piece::power(Rat(1), XRat(Rat(2)), Rat(1), Rat(-1, 2), Rat(1))});
    CHECK_THROWS_AS((void)rearrange(f, 1e-6, true), Error);
}

TEST_CASE("harmonic shifted matches direct summation") {
    for (double s : {0.0, -2.5, 0.5}) {
        double direct = 0;
        for (long k = 1; k <= 5000; ++k) direct += 1.0 / (k - s);
        CHECK(harmonic_shifted(5000, s) == doctest::Approx(direct).epsilon(1e-13));
    }
}
