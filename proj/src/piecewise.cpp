#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rispaces/piecewise.hpp"

namespace rispaces {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PiecewiseFn::PiecewiseFn(Domain domain, std::vector<Piece> pieces)
    : domain_(domain), pieces_(std::move(pieces)) {
    if (domain_ == Domain::Naturals)
        throw Error(ErrorCode::InvalidFunction, "PiecewiseFn on sequence domain");
    normalize();
}

void PiecewiseFn::normalize() {
    XRat end = domain_ == Domain::UnitInterval ? XRat(Rat(1)) : XRat::inf();
    std::stable_sort(pieces_.begin(), pieces_.end(),
                     [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    std::vector<Piece> out;
    Rat cursor = 0;
    bool closed_at_inf = false;
    for (auto& p : pieces_) {
        if (closed_at_inf)
            throw Error(ErrorCode::InvalidFunction, "piece after the infinite tail");
        if (!(XRat(p.lo) < p.hi))
            throw Error(ErrorCode::InvalidFunction, "piece with lo >= hi");
        if (p.lo < cursor)
            throw Error(ErrorCode::InvalidFunction, "overlapping pieces");
        if (XRat(p.lo) >= end || p.hi > end)
            throw Error(ErrorCode::InvalidFunction, "piece outside domain");
        // validity of the analytic form
        if (p.kind == PieceKind::Hyp && p.p0.sign() != 0) {
            if (!p.mirror && !(p.p2 < p.lo))
                throw Error(ErrorCode::InvalidFunction,
                            "hyperbolic pole must lie strictly left of the piece");
            if (p.mirror && !(p.hi < XRat(p.p2)))
                throw Error(ErrorCode::InvalidFunction,
                            "mirrored hyperbolic pole must lie strictly right of the piece");
        }
        if (p.kind == PieceKind::Power) {
            if (!p.mirror && p.p2 > p.lo)
                throw Error(ErrorCode::InvalidFunction, "power shift must be <= lo");
            if (p.mirror && (p.hi.is_inf() || XRat(p.p2) < p.hi))
                throw Error(ErrorCode::InvalidFunction, "mirrored power shift must be >= hi");
        }
        if ((p.kind == PieceKind::CesPow || p.kind == PieceKind::CesLog) && p.lo.sign() <= 0)
            throw Error(ErrorCode::InvalidFunction, "internal piece must start after 0");
        if (p.lo > cursor) out.push_back(Piece::constant(cursor, XRat(p.lo), 0));
        out.push_back(p);
        if (p.hi.is_inf())
            closed_at_inf = true;
        else
            cursor = p.hi.finite();
    }
    if (!closed_at_inf && XRat(cursor) < end)
        out.push_back(Piece::constant(cursor, end, 0));
    pieces_ = std::move(out);
    // merge adjacent identical Const pieces
    std::vector<Piece> merged_pieces;
    for (auto& p : pieces_) {
        if (!merged_pieces.empty()) {
            Piece& q = merged_pieces.back();
            if (q.kind == PieceKind::Const && p.kind == PieceKind::Const && q.p0 == p.p0) {
                q.hi = p.hi;
                continue;
            }
        }
        merged_pieces.push_back(p);
    }
    pieces_ = std::move(merged_pieces);
}

PiecewiseFn PiecewiseFn::zero(Domain d) {
    return PiecewiseFn(d, {});
}

PiecewiseFn PiecewiseFn::indicator(Domain d, const Rat& a, const XRat& b, const Rat& height) {
    if (!(XRat(a) < b)) throw Error(ErrorCode::InvalidFunction, "empty indicator interval");
    return PiecewiseFn(d, {Piece::constant(a, b, height)});
}

XRat PiecewiseFn::domain_measure() const {
    return domain_ == Domain::UnitInterval ? XRat(Rat(1)) : XRat::inf();
}

double PiecewiseFn::eval(double t) const {
    if (t <= 0) return 0;
    if (domain_ == Domain::UnitInterval && t >= 1) return 0;
    for (const auto& p : pieces_) {
        double lo = p.lo.to_double();
        double hi = p.hi.is_inf() ? kInf : p.hi.to_double();
        if (t >= lo && t < hi) return p.value(t);
    }
    return 0;
}

std::optional<Rat> PiecewiseFn::eval_exact(const Rat& t) const {
    if (t.sign() <= 0) return Rat(0);
    for (const auto& p : pieces_) {
        if (t >= p.lo && XRat(t) < p.hi) return p.value_exact(t);
    }
    return Rat(0);
}

PiecewiseFn PiecewiseFn::abs() const {
    std::vector<Piece> out;
    for (const auto& p : pieces_) {
        // split at interior zeros, then flip negative sections
        std::vector<Rat> cuts;
        if (p.kind == PieceKind::Hyp && p.p1.sign() != 0) {
            Rat root = p.mirror ? p.p2 + p.p0 / p.p1 : p.p2 - p.p0 / p.p1;
            if (root > p.lo && XRat(root) < p.hi) cuts.push_back(root);
        }
        std::vector<std::pair<Rat, XRat>> spans;
        Rat start = p.lo;
        for (const Rat& c : cuts) {
            spans.push_back({start, XRat(c)});
            start = c;
        }
        spans.push_back({start, p.hi});
        for (auto& [u, v] : spans) {
            Piece q = p;
            q.lo = u;
            q.hi = v;
            double mid = v.is_inf() ? u.to_double() + 1 : 0.5 * (u.to_double() + v.to_double());
            if (q.value(mid) < 0) {
                switch (q.kind) {
                    case PieceKind::Const:
                    case PieceKind::Power:
                        q.p0 = -q.p0;
                        break;
                    case PieceKind::Hyp:
                        q.p0 = -q.p0;
                        q.p1 = -q.p1;
                        break;
                    default:
                        throw Error(ErrorCode::UnsupportedForm,
                                    "internal piece with negative values");
                }
            }
            out.push_back(std::move(q));
        }
    }
    return PiecewiseFn(domain_, std::move(out));
}

PiecewiseFn PiecewiseFn::scale(const Rat& c) const {
    std::vector<Piece> out;
    for (auto p : pieces_) {
        switch (p.kind) {
            case PieceKind::Const:
            case PieceKind::Power:
                p.p0 *= c;
                break;
            case PieceKind::Hyp:
                p.p0 *= c;
                p.p1 *= c;
                break;
            default: {
                double cd = c.to_double();
                p.d_b *= cd;
                p.d_k *= cd;
                p.d_c *= cd;
                break;
            }
        }
        out.push_back(std::move(p));
    }
    return PiecewiseFn(domain_, std::move(out));
}

bool PiecewiseFn::is_nonneg() const {
    for (const auto& p : pieces_) {
        if (p.kind == PieceKind::Const || p.kind == PieceKind::Power) {
            if (p.p0.sign() < 0) return false;
        } else if (p.kind == PieceKind::Hyp) {
            if (p.limit_left() < 0 || p.limit_right() < 0) return false;
        } else {
            if (p.limit_left() < 0 || p.limit_right() < 0) return false;
            for (double t : p.interior_turning_points())
                if (p.value(t) < 0) return false;
        }
    }
    return true;
}

bool PiecewiseFn::is_step() const {
    for (const auto& p : pieces_)
        if (p.kind != PieceKind::Const) return false;
    return true;
}

bool PiecewiseFn::has_internal_pieces() const {
    for (const auto& p : pieces_)
        if (!p.is_public_kind()) return true;
    return false;
}

double PiecewiseFn::sup_abs() const {
    double m = 0;
    for (const auto& p : pieces_) {
        m = std::max(m, std::fabs(p.limit_left()));
        m = std::max(m, std::fabs(p.limit_right()));
        for (double t : p.interior_turning_points()) m = std::max(m, std::fabs(p.value(t)));
    }
    return m;
}

std::optional<Rat> PiecewiseFn::sup_abs_exact() const {
    if (!is_step()) return std::nullopt;
    Rat m = 0;
    for (const auto& p : pieces_) {
        Rat a = p.p0.abs();
        if (a > m) m = a;
    }
    return m;
}

XRat PiecewiseFn::support_measure() const {
    XRat total(Rat(0));
    for (const auto& p : pieces_) {
        if (p.is_zero()) continue;
        if (p.hi.is_inf()) return XRat::inf();
        total = total + XRat(p.hi.finite() - p.lo);
    }
    return total;
}

namespace {

// Restrict a piece to [u, v] (assumed inside the original span).
Piece clip(const Piece& p, const Rat& u, const XRat& v) {
    Piece q = p;
    q.lo = u;
    q.hi = v;
    return q;
}

} // namespace

PiecewiseFn PiecewiseFn::window(const Rat& a, const XRat& b) const {
    if (XRat(a) > b) throw Error(ErrorCode::InvalidFunction, "window with a > b");
    std::vector<Piece> out;
    for (const auto& p : pieces_) {
        // keep (lo,hi) intersect ((0,a) union (b,inf))
        if (a > p.lo) {
            XRat hi = min(p.hi, XRat(a));
            if (XRat(p.lo) < hi) out.push_back(clip(p, p.lo, hi));
        }
        if (p.hi > b) {
            Rat lo = b.is_inf() ? Rat(0) : std::max(p.lo, b.finite());
            if (!b.is_inf() && XRat(lo) < p.hi) out.push_back(clip(p, lo, p.hi));
        }
    }
    return PiecewiseFn(domain_, std::move(out));
}

PiecewiseFn PiecewiseFn::complement_window(const Rat& a, const XRat& b) const {
    if (XRat(a) > b) throw Error(ErrorCode::InvalidFunction, "window with a > b");
    std::vector<Piece> out;
    for (const auto& p : pieces_) {
        Rat lo = std::max(p.lo, a);
        XRat hi = min(p.hi, b);
        if (XRat(lo) < hi) out.push_back(clip(p, lo, hi));
    }
    return PiecewiseFn(domain_, std::move(out));
}

PiecewiseFn PiecewiseFn::truncate_above(const Rat& c) const {
    if (c.sign() < 0) throw Error(ErrorCode::InvalidFunction, "negative truncation level");
    std::vector<Piece> out;
    for (const auto& p : pieces_) {
        double u = p.lo.to_double();
        double v = p.hi.is_inf() ? kInf : p.hi.to_double();
        auto cross = p.abs_level_crossings(c.to_double(), u, v);
        std::vector<Rat> cuts;
        for (double t : cross) {
            // prefer exact cut points for public kinds
            cuts.push_back(Rat::from_double(t));
        }
        Rat start = p.lo;
        std::vector<std::pair<Rat, XRat>> spans;
        for (const Rat& t : cuts) {
            if (t > start && XRat(t) < p.hi) {
                spans.push_back({start, XRat(t)});
                start = t;
            }
        }
        spans.push_back({start, p.hi});
        for (auto& [su, sv] : spans) {
            double mid = sv.is_inf() ? su.to_double() + 1
                                     : 0.5 * (su.to_double() + sv.to_double());
            double val = p.value(mid);
            if (val > c.to_double())
                out.push_back(Piece::constant(su, sv, c));
            else
                out.push_back(clip(p, su, sv));
        }
    }
    return PiecewiseFn(domain_, std::move(out));
}

PiecewiseFn PiecewiseFn::pointwise_max(const PiecewiseFn& f, const PiecewiseFn& g) {
    require_same_domain(f.domain(), g.domain());
    // collect all breakpoints plus crossing points
    std::vector<double> breaks;
    auto collect = [&](const PiecewiseFn& h) {
        for (const auto& p : h.pieces()) {
            breaks.push_back(p.lo.to_double());
            if (!p.hi.is_inf()) breaks.push_back(p.hi.to_double());
        }
    };
    collect(f);
    collect(g);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::vector<Piece> out;
    auto emit_cell = [&](const Piece& pf, const Piece& pg, const Rat& u, const XRat& v) {
        // crossings of pf - pg inside (u, v): sample + bisect
        double du = u.to_double();
        auto diff = [&](double t) { return pf.value(t) - pg.value(t); };
        double dv = v.is_inf() ? std::max(2 * du + 2, 64.0) : v.to_double();
        if (v.is_inf()) {
            double lim = pf.limit_right() - pg.limit_right();
            for (int i = 0; i < 60 && diff(dv) * lim < 0; ++i) dv *= 2;
        }
        std::vector<double> pts{du};
        int n = 33;
        for (int i = 1; i < n; ++i) pts.push_back(du + (dv - du) * i / n);
        pts.push_back(dv);
        std::vector<Rat> cuts;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            double aa = pts[i], bb = pts[i + 1];
            double fa = diff(aa), fb = diff(bb);
            if (!std::isfinite(fa) || !std::isfinite(fb) || fa * fb >= 0) continue;
            for (int it = 0; it < 100; ++it) {
                double m = 0.5 * (aa + bb);
                double fm = diff(m);
                if (fa * fm <= 0) {
                    bb = m;
                } else {
                    aa = m;
                    fa = fm;
                }
            }
            cuts.push_back(Rat::from_double(0.5 * (aa + bb)));
        }
        Rat start = u;
        std::vector<std::pair<Rat, XRat>> spans;
        for (const Rat& t : cuts) {
            if (t > start && XRat(t) < v) {
                spans.push_back({start, XRat(t)});
                start = t;
            }
        }
        spans.push_back({start, v});
        for (auto& [su, sv] : spans) {
            double mid = sv.is_inf() ? su.to_double() + 1
                                     : 0.5 * (su.to_double() + sv.to_double());
            out.push_back(clip(diff(mid) >= 0 ? pf : pg, su, sv));
        }
    };

    // walk cells of the common refinement
    std::size_t i = 0, j = 0;
    const auto& fp = f.pieces();
    const auto& gp = g.pieces();
    Rat cursor = 0;
    while (i < fp.size() && j < gp.size()) {
        XRat hi = min(fp[i].hi, gp[j].hi);
        emit_cell(fp[i], gp[j], cursor, hi);
        if (hi == fp[i].hi) ++i;
        if (hi == gp[j].hi) ++j;
        if (hi.is_inf()) break;
        cursor = hi.finite();
    }
    return PiecewiseFn(f.domain(), std::move(out));
}

PiecewiseFn PiecewiseFn::pointwise_sub(const PiecewiseFn& f, const PiecewiseFn& g) {
    require_same_domain(f.domain(), g.domain());
    // supported where the result stays in the piece class cell by cell:
    // one side constant, or both sides the same kind with matching shape
    std::vector<Piece> out;
    std::size_t i = 0, j = 0;
    const auto& fp = f.pieces();
    const auto& gp = g.pieces();
    Rat cursor = 0;
    while (i < fp.size() && j < gp.size()) {
        XRat hi = min(fp[i].hi, gp[j].hi);
        const Piece& a = fp[i];
        const Piece& b = gp[j];
        Piece q;
        if (b.kind == PieceKind::Const) {
            q = clip(a, cursor, hi);
            switch (q.kind) {
                case PieceKind::Const:
                    q.p0 -= b.p0;
                    break;
                case PieceKind::Hyp:
                    q.p1 -= b.p0;
                    break;
                case PieceKind::Power:
                    if (b.p0.is_zero()) break;
                    q = Piece::hyp(cursor, hi, Rat(0), Rat(0));  // placeholder
                    throw Error(ErrorCode::UnsupportedForm, "power minus nonzero const");
                default:
                    q.d_b -= b.p0.to_double();
                    break;
            }
        } else if (a.kind == PieceKind::Const && a.p0.is_zero()) {
            q = clip(b, cursor, hi);
            switch (q.kind) {
                case PieceKind::Const:
                case PieceKind::Power:
                    q.p0 = -q.p0;
                    break;
                case PieceKind::Hyp:
                    q.p0 = -q.p0;
                    q.p1 = -q.p1;
                    break;
                default:
                    q.d_b = -q.d_b;
                    q.d_k = -q.d_k;
                    q.d_c = -q.d_c;
                    break;
            }
        } else if (a.kind == b.kind && a.kind == PieceKind::Hyp && a.p2 == b.p2 &&
                   a.mirror == b.mirror) {
            q = clip(a, cursor, hi);
            q.p0 -= b.p0;
            q.p1 -= b.p1;
        } else if (a.kind == b.kind && a.kind == PieceKind::Power && a.p2 == b.p2 &&
                   a.p1 == b.p1 && a.mirror == b.mirror) {
            q = clip(a, cursor, hi);
            q.p0 -= b.p0;
        } else {
            throw Error(ErrorCode::UnsupportedForm, "pointwise difference leaves piece class");
        }
        out.push_back(std::move(q));
        if (hi == fp[i].hi) ++i;
        if (hi == gp[j].hi) ++j;
        if (hi.is_inf()) break;
        cursor = hi.finite();
    }
    return PiecewiseFn(f.domain(), std::move(out));
}

PiecewiseFn PiecewiseFn::disjoint_sum(const std::vector<PiecewiseFn>& parts) {
    if (parts.empty()) throw Error(ErrorCode::InvalidFunction, "empty sum");
    std::vector<Piece> out;
    for (const auto& f : parts) {
        require_same_domain(parts.front().domain(), f.domain());
        for (const auto& p : f.pieces())
            if (!p.is_zero()) out.push_back(p);
    }
    std::sort(out.begin(), out.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        if (XRat(out[i + 1].lo) < out[i].hi)
            throw Error(ErrorCode::InvalidFunction, "summands overlap");
    return PiecewiseFn(parts.front().domain(), std::move(out));
}

std::string PiecewiseFn::describe() const {
    std::ostringstream os;
    os << domain_name(domain_) << ":";
    for (const auto& p : pieces_) os << " " << p.describe();
    return os.str();
}

// ---------------------------------------------------------------------------
// sequences

double harmonic_shifted(double n, double s) {
    if (n <= 0) return 0;
    double acc = 0;
    if (n <= 256) {
        for (long k = 1; k <= static_cast<long>(n); ++k) acc += 1.0 / (k - s);
        return acc;
    }
    // Euler-Maclaurin on the tail: sum_{k=m+1..n} 1/(k-s)
    //   = ln(B/A) + (1/A + 1/B)/2 + (1/A^2 - 1/B^2)/12 - (1/A^4 - 1/B^4)/120 + ...
    // with A = m+1-s, B = n-s; remainder below 1e-14 for A >= 128.
    long m = 128;
    for (long k = 1; k <= m; ++k) acc += 1.0 / (k - s);
    double A = m + 1 - s, B = n - s;
    acc += std::log(B / A);
    acc += 0.5 * (1 / A + 1 / B);
    acc += (1.0 / 12.0) * (1 / (A * A) - 1 / (B * B));
    acc -= (1.0 / 120.0) * (1 / (A * A * A * A) - 1 / (B * B * B * B));
    return acc;
}

double SeqTail::value(long n) const {
    switch (kind) {
        case Kind::Zero:
            return 0;
        case Kind::Const:
            return v.to_double();
        case Kind::Hyp:
            return a.to_double() / (n - s.to_double()) + b.to_double();
        case Kind::Harmonic: {
            double m = n - h_s;  // h_s holds the integer index shift
            return h_b + (h_c + h_a * harmonic_shifted(m, h_sigma)) / m;
        }
    }
    return 0;
}

std::optional<Rat> SeqTail::value_exact(long n) const {
    switch (kind) {
        case Kind::Zero:
            return Rat(0);
        case Kind::Const:
            return v;
        case Kind::Hyp:
            return a / (Rat(static_cast<int>(n)) - s) + b;
        case Kind::Harmonic:
            return std::nullopt;
    }
    return std::nullopt;
}

double SeqTail::limit() const {
    switch (kind) {
        case Kind::Zero:
            return 0;
        case Kind::Const:
            return v.to_double();
        case Kind::Hyp:
            return b.to_double();
        case Kind::Harmonic:
            return h_b;
    }
    return 0;
}

SeqFn::SeqFn(std::vector<Rat> head, SeqTail tail) : head_(std::move(head)), tail_(tail) {
    long n = head_size();
    if (tail_.kind == SeqTail::Kind::Hyp) {
        if (!(tail_.s < Rat(static_cast<int>(n + 1))))
            throw Error(ErrorCode::InvalidFunction, "sequence tail pole inside tail indices");
        if (tail_.b.sign() < 0)
            throw Error(ErrorCode::InvalidFunction, "sequence tail limit must be >= 0");
    }
    if (tail_.kind == SeqTail::Kind::Const && tail_.v.sign() < 0)
        throw Error(ErrorCode::InvalidFunction, "sequence tail value must be >= 0");
}

SeqFn SeqFn::unit(long n) {
    std::vector<Rat> head(static_cast<std::size_t>(n), Rat(0));
    head[static_cast<std::size_t>(n - 1)] = Rat(1);
    return SeqFn(std::move(head), SeqTail{});
}

SeqFn SeqFn::ones() {
    SeqTail t;
    t.kind = SeqTail::Kind::Const;
    t.v = Rat(1);
    return SeqFn({}, t);
}

double SeqFn::value(long n) const {
    if (n < 1) return 0;
    if (n <= head_size()) return head_[static_cast<std::size_t>(n - 1)].to_double();
    return tail_.value(n);
}

std::optional<Rat> SeqFn::value_exact(long n) const {
    if (n < 1) return Rat(0);
    if (n <= head_size()) return head_[static_cast<std::size_t>(n - 1)];
    return tail_.value_exact(n);
}

SeqFn SeqFn::abs() const {
    std::vector<Rat> head;
    head.reserve(head_.size());
    for (const auto& x : head_) head.push_back(x.abs());
    SeqTail t = tail_;
    long n0 = head_size() + 1;
    if (t.kind == SeqTail::Kind::Hyp && t.a.sign() < 0 && t.b.is_zero()) {
        t.a = -t.a;  // values were negative for every tail index
        return SeqFn(std::move(head), t);
    }
    if (t.kind == SeqTail::Kind::Hyp && t.a.sign() != 0) {
        // a negative prefix of the tail, if any, moves into the head
        long n = n0;
        std::vector<Rat> extra = head;
        while (true) {
            auto val = t.value_exact(n);
            if (!val || val->sign() >= 0) break;
            extra.push_back(-*val);
            ++n;
            if (n > n0 + 4096)
                throw Error(ErrorCode::InvalidFunction, "tail sign does not stabilize");
        }
        if (n > n0) return SeqFn(std::move(extra), t);
    }
    return SeqFn(std::move(head), t);
}

double SeqFn::sup_abs() const {
    double m = 0;
    for (const auto& x : head_) m = std::max(m, std::fabs(x.to_double()));
    long n0 = head_size() + 1;
    switch (tail_.kind) {
        case SeqTail::Kind::Zero:
            break;
        case SeqTail::Kind::Const:
            m = std::max(m, std::fabs(tail_.v.to_double()));
            break;
        case SeqTail::Kind::Hyp: {
            // |a/(n-s)+b| is monotone in n once the sign settles
            m = std::max(m, std::fabs(tail_.limit()));
            for (long n = n0; n < n0 + 64; ++n) m = std::max(m, std::fabs(tail_.value(n)));
            break;
        }
        case SeqTail::Kind::Harmonic: {
            m = std::max(m, std::fabs(tail_.limit()));
            // H(m)/m and 1/m are decreasing; after a burn-in the envelope
            // |h_b| + (|h_c| + |h_a| H(m))/m is decreasing too
            long n = n0;
            double best = m;
            for (; n < n0 + 8192; ++n) {
                double val = std::fabs(tail_.value(n));
                best = std::max(best, val);
                double mm = n + 1 - tail_.h_s;
                double envelope = std::fabs(tail_.h_b) +
                                  (std::fabs(tail_.h_c) +
                                   std::fabs(tail_.h_a) * harmonic_shifted(mm, tail_.h_sigma)) /
                                      mm;
                if (envelope <= best + 1e-15) break;
            }
            m = best;
            break;
        }
    }
    return m;
}

double SeqFn::tail_limit_abs() const {
    return std::fabs(tail_.limit());
}

XRat SeqFn::support_count() const {
    if (tail_.kind != SeqTail::Kind::Zero) {
        // Hyp tails with a != 0 are nonzero eventually; Const v>0 likewise
        if (tail_.kind == SeqTail::Kind::Const && tail_.v.is_zero()) {
        } else {
            return XRat::inf();
        }
    }
    int count = 0;
    for (const auto& x : head_)
        if (!x.is_zero()) ++count;
    return XRat(Rat(count));
}

SeqFn SeqFn::with_head_through(long n) const {
    if (n <= head_size()) return *this;
    std::vector<Rat> head = head_;
    for (long k = head_size() + 1; k <= n; ++k) {
        auto v = tail_.value_exact(k);
        head.push_back(v ? *v : Rat::from_double(tail_.value(k)));
    }
    SeqTail t = tail_;
    if (t.kind == SeqTail::Kind::Harmonic) {
        // shift is recorded in h_s (integer); values keep their meaning
    }
    return SeqFn(std::move(head), t);
}

SeqFn SeqFn::window(const Rat& a, const XRat& b) const {
    // keep indices n with n < a or n > b
    long need = head_size();
    if (!b.is_inf()) need = std::max(need, static_cast<long>(std::floor(b.to_double())));
    if (a > Rat(1))
        need = std::max(need, static_cast<long>(std::ceil(a.to_double())));
    SeqFn base = with_head_through(need);
    std::vector<Rat> head = base.head_;
    for (long n = 1; n <= base.head_size(); ++n) {
        bool keep = (Rat(static_cast<int>(n)) < a) || (XRat(Rat(static_cast<int>(n))) > b);
        if (!keep) head[static_cast<std::size_t>(n - 1)] = Rat(0);
    }
    // every tail index exceeds both the head and b, so tails survive intact;
    // with b = inf nothing beyond the head survives
    if (b.is_inf()) return SeqFn(std::move(head), SeqTail{});
    return SeqFn(std::move(head), base.tail_);
}

SeqFn SeqFn::complement_window(const Rat& a, const XRat& b) const {
    // keep indices n with a <= n <= b
    long need = head_size();
    if (!b.is_inf()) need = std::max(need, static_cast<long>(std::floor(b.to_double())));
    if (a > Rat(1))
        need = std::max(need, static_cast<long>(std::ceil(a.to_double())));
    SeqFn base = with_head_through(need);
    std::vector<Rat> head = base.head_;
    for (long n = 1; n <= base.head_size(); ++n) {
        bool keep = (Rat(static_cast<int>(n)) >= a) && (XRat(Rat(static_cast<int>(n))) <= b);
        if (!keep) head[static_cast<std::size_t>(n - 1)] = Rat(0);
    }
    if (!b.is_inf()) return SeqFn(std::move(head), SeqTail{});
    return SeqFn(std::move(head), base.tail_);
}

std::string SeqFn::describe() const {
    std::ostringstream os;
    os << "seq head=[";
    for (std::size_t i = 0; i < head_.size(); ++i) os << (i ? "," : "") << head_[i].str();
    os << "] tail=";
    switch (tail_.kind) {
        case SeqTail::Kind::Zero:
            os << "zero";
            break;
        case SeqTail::Kind::Const:
            os << "const " << tail_.v.str();
            break;
        case SeqTail::Kind::Hyp:
            os << "hyp a=" << tail_.a.str() << " b=" << tail_.b.str() << " s=" << tail_.s.str();
            break;
        case SeqTail::Kind::Harmonic:
            os << "harmonic a=" << tail_.h_a << " b=" << tail_.h_b << " c=" << tail_.h_c
               << " shift=" << tail_.h_s;
            break;
    }
    return os.str();
}

} // namespace rispaces
