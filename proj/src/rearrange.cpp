#include "rispaces/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>

#include "rispaces/config.hpp"

namespace rispaces {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

long max_refinement_depth() {
    static long cached = [] {
        const char* env = std::getenv("RISPACES_MAX_DEPTH");
        if (!env) return 64L;
        long v = std::atol(env);
        return v > 0 ? v : 64L;
    }();
    return cached;
}

// ---------------------------------------------------------------------------
// distribution

namespace {

// measure of {t in (u,v) : piece value > lambda} for a monotone span
double superlevel_span(const Piece& p, double u, double v, double lambda) {
    double left = (u == p.lo.to_double()) ? p.limit_left() : p.value(u);
    bool vinf = std::isinf(v);
    double right = (!vinf && !p.hi.is_inf() && v == p.hi.to_double()) ? p.limit_right()
                   : vinf ? p.limit_right()
                          : p.value(v);
    double len = vinf ? kInf : v - u;
    if (left > lambda && right > lambda) return len;
    if (left <= lambda && right <= lambda) return 0;
    auto cross = p.abs_level_crossings(lambda, u, v);
    double c = cross.empty() ? 0.5 * (u + (vinf ? u + 1 : v)) : cross.front();
    if (left > lambda) return c - u;          // decreasing through lambda
    return vinf ? kInf : v - c;               // increasing through lambda
}

double superlevel_measure(const std::vector<Piece>& pieces, double lambda) {
    double total = 0;
    for (const auto& p : pieces) {
        if (p.is_zero()) continue;
        double u = p.lo.to_double();
        double v = p.hi.is_inf() ? kInf : p.hi.to_double();
        if (p.kind == PieceKind::Const) {
            if (p.p0.abs().to_double() > lambda) total += v - u;
            continue;
        }
        auto turns = p.interior_turning_points();
        double start = u;
        for (double t : turns) {
            total += superlevel_span(p, start, t, lambda);
            start = t;
        }
        total += superlevel_span(p, start, v, lambda);
        if (std::isinf(total)) return kInf;
    }
    return total;
}

} // namespace

DistributionCurve distribution(const PiecewiseFn& f) {
    PiecewiseFn g = f.abs();
    DistributionCurve d;
    d.domain_ = f.domain();
    d.pieces_ = g.pieces();
    if (g.is_step()) {
        d.exact_ = true;
        // heights -> total length above each level
        std::map<Rat, XRat, std::greater<Rat>> by_height;
        for (const auto& p : g.pieces()) {
            if (p.is_zero()) continue;
            XRat len = p.hi.is_inf() ? XRat::inf() : XRat(p.hi.finite() - p.lo);
            auto [it, fresh] = by_height.emplace(p.p0, len);
            if (!fresh) it->second = it->second + len;
        }
        XRat cum(Rat(0));
        std::vector<DistributionCurve::Step> rev;
        for (auto& [h, len] : by_height) {
            rev.push_back({h, cum});  // d(lambda) = cum for lambda in [h, prev)
            cum = cum + len;
        }
        d.steps_.push_back({Rat(0), cum});
        for (auto it = rev.rbegin(); it != rev.rend(); ++it) d.steps_.push_back(*it);
    }
    return d;
}

DistributionCurve distribution(const SeqFn& x) {
    SeqFn g = x.abs();
    DistributionCurve d;
    d.domain_ = Domain::Naturals;
    d.integer_ = true;
    d.is_seq_ = true;
    d.seq_ = g;
    d.exact_ = g.is_exact();
    if (g.tail().kind == SeqTail::Kind::Zero ||
        (g.tail().kind == SeqTail::Kind::Const && g.tail().v.is_zero())) {
        std::map<Rat, XRat, std::greater<Rat>> by_height;
        for (const auto& h : g.head()) {
            if (h.is_zero()) continue;
            auto [it, fresh] = by_height.emplace(h, XRat(Rat(1)));
            if (!fresh) it->second = it->second + XRat(Rat(1));
        }
        XRat cum(Rat(0));
        std::vector<DistributionCurve::Step> rev;
        for (auto& [h, len] : by_height) {
            rev.push_back({h, cum});
            cum = cum + len;
        }
        d.steps_.push_back({Rat(0), cum});
        for (auto it = rev.rbegin(); it != rev.rend(); ++it) d.steps_.push_back(*it);
    } else if (g.tail().kind == SeqTail::Kind::Const) {
        // finite staircase above the tail level, infinite below
        std::map<Rat, XRat, std::greater<Rat>> by_height;
        for (const auto& h : g.head()) {
            if (h.is_zero() || !(h > g.tail().v)) continue;
            auto [it, fresh] = by_height.emplace(h, XRat(Rat(1)));
            if (!fresh) it->second = it->second + XRat(Rat(1));
        }
        XRat cum(Rat(0));
        std::vector<DistributionCurve::Step> rev;
        for (auto& [h, len] : by_height) {
            rev.push_back({h, cum});
            cum = cum + len;
        }
        d.steps_.push_back({Rat(0), XRat::inf()});
        d.steps_.push_back({g.tail().v, cum});
        for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
            if (it->lambda > g.tail().v) d.steps_.push_back(*it);
        }
    }
    return d;
}

double DistributionCurve::at(double lambda) const {
    if (lambda < 0) lambda = 0;
    if (is_seq_) {
        // exact counting through the rational path when possible
        XRat r = at_exact(Rat::from_double(lambda));
        return r.to_double();
    }
    if (exact_) return at_exact(Rat::from_double(lambda)).to_double();
    return superlevel_measure(pieces_, lambda);
}

XRat DistributionCurve::at_exact(const Rat& lambda) const {
    if (is_seq_) {
        const SeqFn& g = seq_;
        long count = 0;
        for (const auto& h : g.head())
            if (h > lambda) ++count;
        const SeqTail& t = g.tail();
        long n0 = g.head_size() + 1;
        switch (t.kind) {
            case SeqTail::Kind::Zero:
                break;
            case SeqTail::Kind::Const:
                if (t.v > lambda) return XRat::inf();
                break;
            case SeqTail::Kind::Hyp: {
                if (t.a.sign() > 0) {
                    if (!(lambda >= t.b)) return XRat::inf();
                    if (lambda == t.b) return XRat::inf();
                    // n < s + a/(lambda - b), n >= n0
                    Rat bound = t.s + t.a / (lambda - t.b);
                    double bd = bound.to_double();
                    long hi = static_cast<long>(std::ceil(bd)) - 1;
                    if (Rat(static_cast<int>(hi + 1)) < bound) hi = hi + 1;  // guard rounding
                    while (Rat(static_cast<int>(hi + 1)) < bound) ++hi;
                    while (hi >= n0 && !(Rat(static_cast<int>(hi)) < bound)) --hi;
                    if (hi >= n0) count += hi - n0 + 1;
                } else if (t.a.sign() < 0) {
                    if (lambda < t.b) return XRat::inf();
                    // values < b <= lambda: no tail contribution
                } else {
                    if (t.b > lambda) return XRat::inf();
                }
                break;
            }
            case SeqTail::Kind::Harmonic: {
                double lam = lambda.to_double();
                double lim = t.limit();
                if (lam < lim) return XRat::inf();
                // eventual sign of (value - lim): the numerator c + a*H(m)
                // is monotone in m, so the sign settles once
                double sigma = t.h_a != 0 ? t.h_a : t.h_c;
                if (lam == lim && sigma > 0) return XRat::inf();
                long n = n0, cnt = 0;
                for (; n < n0 + 2000000; ++n) {
                    double m = n - t.h_s;
                    double numer = t.h_c + t.h_a * harmonic_shifted(m, t.h_sigma);
                    if (t.h_b + numer / m > lam) ++cnt;
                    if (sigma <= 0 && numer < 0) break;
                    double envelope =
                        t.h_b +
                        (std::fabs(t.h_c) + std::fabs(t.h_a) * harmonic_shifted(m, t.h_sigma)) / m;
                    if (envelope <= lam) break;
                }
                count += cnt;
                break;
            }
        }
        return XRat(Rat(count));
    }
    if (exact_) {
        // staircase lookup: value for the largest breakpoint <= lambda
        XRat out(Rat(0));
        for (const auto& s : steps_) {
            if (lambda >= s.lambda)
                out = s.measure;
            else
                break;
        }
        return out;
    }
    throw Error(ErrorCode::UnsupportedForm, "exact distribution only for the step layer");
}

double DistributionCurve::sup_level() const {
    if (is_seq_) return seq_.sup_abs();
    if (exact_) return steps_.empty() ? 0 : steps_.back().lambda.to_double();
    double m = 0;
    for (const auto& p : pieces_) {
        m = std::max(m, std::fabs(p.limit_left()));
        m = std::max(m, std::fabs(p.limit_right()));
        for (double t : p.interior_turning_points()) m = std::max(m, std::fabs(p.value(t)));
    }
    return m;
}

XRat DistributionCurve::total() const {
    if (is_seq_) return seq_.support_count();
    XRat total(Rat(0));
    for (const auto& p : pieces_) {
        if (p.is_zero()) continue;
        if (p.hi.is_inf()) return XRat::inf();
        total = total + XRat(p.hi.finite() - p.lo);
    }
    return total;
}

// ---------------------------------------------------------------------------
// rearrangement

namespace {

struct Unit {
    bool plateau = false;
    Rat height;          // plateau height
    XRat length;         // may be inf
    Piece piece;         // analytic unit (public kind, monotone, finite range data)
    double vmin = 0, vmax = 0;
    bool decreasing = true;
};

// Build f* for step data: heights sorted descending, lengths stacked.
PiecewiseFn stack_blocks(Domain dom, std::vector<std::pair<Rat, XRat>> blocks) {
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<Piece> out;
    Rat cursor = 0;
    for (auto& [h, len] : blocks) {
        if (h.is_zero()) continue;
        if (len.is_inf()) {
            out.push_back(Piece::constant(cursor, XRat::inf(), h));
            break;
        }
        out.push_back(Piece::constant(cursor, XRat(cursor + len.finite()), h));
        cursor += len.finite();
    }
    return PiecewiseFn(dom, std::move(out));
}

bool already_nonincreasing(const PiecewiseFn& g) {
    // support must be an initial segment and values non-increasing
    double prev = kInf;
    bool seen_zero = false;
    for (const auto& p : g.pieces()) {
        if (p.is_zero()) {
            seen_zero = true;
            continue;
        }
        if (seen_zero) return false;
        if (!p.interior_turning_points().empty()) return false;
        double l = p.limit_left(), r = p.limit_right();
        if (r > l + 1e-15 * std::max(1.0, std::fabs(l))) return false;
        if (l > prev + 1e-12 * std::max(1.0, std::fabs(prev))) return false;
        prev = r;
    }
    return true;
}

} // namespace

RearrangedFn rearrange(const PiecewiseFn& f, double tol, bool require_exact) {
    PiecewiseFn g = f.abs();
    RearrangedFn out;

    if (g.is_step()) {
        std::vector<std::pair<Rat, XRat>> blocks;
        for (const auto& p : g.pieces()) {
            if (p.is_zero()) continue;
            blocks.push_back({p.p0, p.hi.is_inf() ? XRat::inf() : XRat(p.hi.finite() - p.lo)});
        }
        out.fstar = stack_blocks(g.domain(), std::move(blocks));
        out.exact = true;
        out.lower = out.fstar;
        out.upper = out.fstar;
        return out;
    }

    if (already_nonincreasing(g)) {
        out.fstar = g;
        out.exact = true;
        out.lower = g;
        out.upper = g;
        return out;
    }

    // exact construction when monotone units have pairwise disjoint value
    // ranges (public kinds only)
    bool ok = !g.has_internal_pieces();
    std::vector<Unit> units;
    if (ok) {
        for (const auto& p : g.pieces()) {
            if (p.is_zero()) continue;
            Unit u;
            if (p.kind == PieceKind::Const) {
                u.plateau = true;
                u.height = p.p0;
                u.length = p.hi.is_inf() ? XRat::inf() : XRat(p.hi.finite() - p.lo);
                u.vmin = u.vmax = u.height.to_double();
            } else {
                u.piece = p;
                u.length = p.hi.is_inf() ? XRat::inf() : XRat(p.hi.finite() - p.lo);
                double l = p.limit_left(), r = p.limit_right();
                u.decreasing = l >= r;
                u.vmin = std::min(l, r);
                u.vmax = std::max(l, r);
                if (p.hi.is_inf() && !u.decreasing) {
                    // increasing to the limit: rearranges to a plateau
                    u.plateau = true;
                    u.height = p.p1;  // Hyp limit = b (only Hyp/Const tails are increasing)
                    if (p.kind != PieceKind::Hyp) {
                        ok = false;
                    }
                    u.vmin = u.vmax = u.height.to_double();
                }
            }
            units.push_back(std::move(u));
            if (!ok) break;
        }
    }
    if (ok) {
        // disjointness of open ranges; plateaus may touch boundaries only
        for (std::size_t i = 0; i < units.size() && ok; ++i) {
            for (std::size_t j = 0; j < units.size() && ok; ++j) {
                if (i == j) continue;
                const Unit& a = units[i];
                const Unit& b = units[j];
                if (a.plateau && b.plateau) continue;
                if (a.plateau) {
                    if (a.vmax > b.vmin && a.vmax < b.vmax) ok = false;
                } else if (!b.plateau) {
                    if (i < j && std::max(a.vmin, b.vmin) < std::min(a.vmax, b.vmax)) ok = false;
                }
            }
        }
    }
    if (ok) {
        std::stable_sort(units.begin(), units.end(), [](const Unit& a, const Unit& b) {
            if (a.vmax != b.vmax) return a.vmax > b.vmax;
            return a.vmin > b.vmin;
        });
        // merge equal plateaus
        std::vector<Piece> pieces;
        Rat cursor = 0;
        bool done = false;
        for (auto& u : units) {
            if (done) break;
            if (u.plateau) {
                if (u.height.is_zero()) continue;
                if (u.length.is_inf()) {
                    pieces.push_back(Piece::constant(cursor, XRat::inf(), u.height));
                    done = true;
                } else {
                    pieces.push_back(
                        Piece::constant(cursor, XRat(cursor + u.length.finite()), u.height));
                    cursor += u.length.finite();
                }
                continue;
            }
            const Piece& p = u.piece;
            Rat plen = u.length.is_inf() ? Rat(0) : u.length.finite();
            if (u.decreasing) {
                // translate: value(x) = p(x - cursor + lo)
                Rat delta = cursor - p.lo;
                Piece q = p;
                q.lo = cursor;
                q.hi = u.length.is_inf() ? XRat::inf() : XRat(cursor + plen);
                q.p2 = p.p2 + delta;
                pieces.push_back(std::move(q));
            } else {
                // reflect: value(x) = p((hi + cursor) - x), mirrored kind
                Rat hi_r = p.hi.finite();
                Piece q = p;
                q.lo = cursor;
                q.hi = XRat(cursor + plen);
                q.p2 = hi_r + cursor - p.p2;
                q.mirror = !p.mirror;
                pieces.push_back(std::move(q));
            }
            if (u.length.is_inf())
                done = true;
            else
                cursor += plen;
        }
        out.fstar = PiecewiseFn(g.domain(), std::move(pieces));
        out.exact = true;
        out.lower = out.fstar;
        out.upper = out.fstar;
        return out;
    }

    // numeric layer: certified step envelopes via the distribution function
    DistributionCurve d = distribution(g);
    double sup = d.sup_level();
    double finf = tail_head(f).first;
    bool unbounded = std::isinf(sup);
    if (unbounded && require_exact)
        throw Error(ErrorCode::UnboundedRearrangement, "f*(0+) = inf; numeric layer only");
    if (require_exact)
        throw Error(ErrorCode::UnboundedRearrangement,
                    "exact rearrangement unavailable for this input");

    auto dist_at = [&](double lam) { return superlevel_measure(g.pieces(), lam); };
    double lam_hi0 = unbounded ? 1.0 : sup;
    auto fstar_at = [&](double t) -> double {
        // inf{ lambda : d(lambda) <= t }
        double lo = 0, hi = lam_hi0;
        if (unbounded) {
            while (dist_at(hi) > t && hi < 1e300) hi *= 2;
        }
        if (dist_at(0) <= t) return 0;
        for (int i = 0; i < 100; ++i) {
            double m = 0.5 * (lo + hi);
            if (dist_at(m) <= t)
                hi = m;
            else
                lo = m;
        }
        return 0.5 * (lo + hi);
    };

    double eps = unbounded ? std::max(tol, 1e-12) : 0.0;
    out.eps_cut = eps;
    // horizon: beyond T the value is within tol of f*(inf)
    double T = 1;
    if (g.domain() == Domain::UnitInterval) {
        T = 1;
    } else {
        while (fstar_at(T) > finf + tol && T < 1e30) T *= 2;
    }

    // seed grid: plateau jump locations plus a log grid
    std::vector<double> grid{eps, T};
    for (const auto& p : g.pieces()) {
        if (p.kind == PieceKind::Const && !p.p0.is_zero()) {
            double h = p.p0.abs().to_double();
            for (double lam : {h * (1 - 1e-12), h * (1 + 1e-12)}) {
                double t = dist_at(lam);
                if (std::isfinite(t) && t > eps && t < T) grid.push_back(t);
            }
        }
    }
    for (double t = eps > 0 ? eps : T * 1e-9; t < T; t *= 2) grid.push_back(t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    struct Node {
        double t, v;
    };
    std::vector<Node> nodes;
    for (double t : grid) nodes.push_back({t, fstar_at(t)});

    long depth = 0;
    const long cap = max_refinement_depth();
    for (; depth < cap; ++depth) {
        // refine the worst cell
        double worst = 0;
        std::size_t wi = 0;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            double gap = nodes[i].v - nodes[i + 1].v;
            double width = nodes[i + 1].t - nodes[i].t;
            if (width <= 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, nodes[i].t))
                continue;
            if (gap > worst) {
                worst = gap;
                wi = i;
            }
        }
        if (worst <= tol || nodes.size() > 20000) break;
        double tm = 0.5 * (nodes[wi].t + nodes[wi + 1].t);
        nodes.insert(nodes.begin() + static_cast<long>(wi) + 1, {tm, fstar_at(tm)});
    }

    double gap = 0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        double width = nodes[i + 1].t - nodes[i].t;
        if (width <= 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, nodes[i].t))
            continue;
        gap = std::max(gap, nodes[i].v - nodes[i + 1].v);
    }
    out.sup_gap = gap;

    std::vector<Piece> lo_pieces, hi_pieces, mid_pieces;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        Rat a = Rat::from_double(nodes[i].t), b = Rat::from_double(nodes[i + 1].t);
        if (!(a < b)) continue;
        hi_pieces.push_back(Piece::constant(a, XRat(b), Rat::from_double(nodes[i].v)));
        lo_pieces.push_back(Piece::constant(a, XRat(b), Rat::from_double(nodes[i + 1].v)));
        mid_pieces.push_back(Piece::constant(
            a, XRat(b), Rat::from_double(fstar_at(0.5 * (nodes[i].t + nodes[i + 1].t)))));
    }
    if (g.domain() == Domain::HalfLine) {
        Rat tr = Rat::from_double(T);
        double vT = nodes.back().v;
        hi_pieces.push_back(Piece::constant(tr, XRat::inf(), Rat::from_double(vT)));
        lo_pieces.push_back(Piece::constant(tr, XRat::inf(), Rat::from_double(finf)));
        mid_pieces.push_back(
            Piece::constant(tr, XRat::inf(), Rat::from_double(0.5 * (vT + finf))));
    }
    out.fstar = PiecewiseFn(g.domain(), std::move(mid_pieces));
    out.lower = PiecewiseFn(g.domain(), std::move(lo_pieces));
    out.upper = PiecewiseFn(g.domain(), std::move(hi_pieces));
    out.exact = false;
    return out;
}

RearrangedSeq rearrange(const SeqFn& x) {
    SeqFn g = x.abs();
    RearrangedSeq out;
    out.exact = g.is_exact();
    const SeqTail& t = g.tail();

    auto sorted_heads_above = [&](const Rat& floor_v) {
        std::vector<Rat> h;
        for (const auto& v : g.head())
            if (v > floor_v) h.push_back(v);
        std::stable_sort(h.begin(), h.end(), std::greater<Rat>());
        return h;
    };

    switch (t.kind) {
        case SeqTail::Kind::Zero: {
            std::vector<Rat> h = sorted_heads_above(Rat(0));
            out.xstar = SeqFn(std::move(h), SeqTail{});
            return out;
        }
        case SeqTail::Kind::Const: {
            std::vector<Rat> h = sorted_heads_above(t.v);
            out.xstar = SeqFn(std::move(h), t);
            return out;
        }
        case SeqTail::Kind::Hyp: {
            if (t.a.sign() < 0) {
                // increasing to b: the sorted tail is the constant b
                std::vector<Rat> h = sorted_heads_above(t.b);
                SeqTail ct;
                ct.kind = SeqTail::Kind::Const;
                ct.v = t.b;
                out.xstar = SeqFn(std::move(h), ct);
                return out;
            }
            // decreasing to b: merge heads above b with tail values
            std::vector<Rat> h = sorted_heads_above(t.b);
            std::vector<Rat> merged;
            long j = g.head_size() + 1;  // next tail index
            std::size_t hi = 0;
            while (hi < h.size()) {
                Rat tv = *t.value_exact(j);
                if (h[hi] >= tv) {
                    merged.push_back(h[hi++]);
                } else {
                    merged.push_back(tv);
                    ++j;
                }
            }
            long consumed = j - (g.head_size() + 1);
            long R = static_cast<long>(merged.size());
            // result_n = tail value at index n - R + (j - 1) ... shift so that
            // position R+1 maps to tail index j
            SeqTail nt = t;
            nt.s = t.s + Rat(static_cast<int>(R - (j - 1)));
            (void)consumed;
            out.xstar = SeqFn(std::move(merged), nt);
            return out;
        }
        case SeqTail::Kind::Harmonic: {
            double lim = t.limit();
            long n0 = g.head_size() + 1;
            // eventual sign of (value - lim) and the index where both the
            // sign and monotonicity have settled
            double sigma = t.h_a != 0 ? t.h_a : t.h_c;
            const long cap = 3000000;
            if (sigma <= 0) {
                // tail approaches the limit from below: it rearranges to the
                // constant limit after the heads that exceed it
                long n = n0;
                for (; n < n0 + cap; ++n) {
                    double m = n - t.h_s;
                    if (t.h_c + t.h_a * harmonic_shifted(m, t.h_sigma) <= 0) break;
                }
                if (n >= n0 + cap)
                    throw Error(ErrorCode::UnsupportedForm, "harmonic tail regime out of reach");
                SeqFn ext = g.with_head_through(n - 1);
                std::vector<Rat> h;
                for (const auto& v : ext.head())
                    if (v.to_double() > lim) h.push_back(v);
                std::stable_sort(h.begin(), h.end(), std::greater<Rat>());
                SeqTail ct;
                ct.kind = SeqTail::Kind::Const;
                ct.v = Rat::from_double(lim);
                out.xstar = SeqFn(std::move(h), ct);
                out.exact = false;
                return out;
            }
            // tail eventually decreases to the limit from above
            long turn = n0;
            for (long n = n0; n < n0 + cap; ++n) {
                double m = n - t.h_s;
                bool positive = t.h_c + t.h_a * harmonic_shifted(m, t.h_sigma) > 0;
                if (positive && g.value(n + 1) <= g.value(n)) {
                    turn = n;
                    break;
                }
                turn = n + 1;
            }
            if (turn >= n0 + cap)
                throw Error(ErrorCode::UnsupportedForm, "harmonic tail regime out of reach");
            SeqFn ext = g.with_head_through(turn);
            std::vector<Rat> h;
            for (const auto& v : ext.head())
                if (v.to_double() > lim) h.push_back(v);
            std::stable_sort(h.begin(), h.end(), std::greater<Rat>());
            std::vector<Rat> merged;
            long j = ext.head_size() + 1;
            std::size_t hidx = 0;
            while (hidx < h.size()) {
                double tv = ext.tail().value(j);
                if (h[hidx].to_double() >= tv) {
                    merged.push_back(h[hidx++]);
                } else {
                    merged.push_back(Rat::from_double(tv));
                    ++j;
                }
            }
            long R = static_cast<long>(merged.size());
            SeqTail nt = ext.tail();
            nt.h_s += static_cast<double>(R - (j - 1));
            out.xstar = SeqFn(std::move(merged), nt);
            out.exact = false;
            return out;
        }
    }
    return out;
}

std::pair<double, double> tail_head(const PiecewiseFn& f) {
    PiecewiseFn g = f.abs();
    double head = g.sup_abs();
    double tail = 0;
    if (g.domain() == Domain::HalfLine && !g.pieces().empty()) {
        const Piece& last = g.pieces().back();
        if (last.hi.is_inf()) tail = std::fabs(last.limit_right());
    }
    return {tail, head};
}

std::pair<double, double> tail_head(const SeqFn& x) {
    SeqFn g = x.abs();
    return {g.tail_limit_abs(), g.sup_abs()};
}

} // namespace rispaces
