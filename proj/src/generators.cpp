#include "rispaces/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rispaces {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Piece> normalize_generator_pieces(std::vector<Piece> pieces, const XRat& end) {
    std::stable_sort(pieces.begin(), pieces.end(),
                     [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    Rat cursor = 0;
    bool reached_inf = false;
    for (auto& p : pieces) {
        if (p.mirror || !p.is_public_kind())
            throw Error(ErrorCode::InvalidGenerator,
                        "generator pieces must be plain analytic kinds");
        if (!(p.lo == cursor))
            throw Error(ErrorCode::InvalidGenerator, "generator pieces must be contiguous from 0");
        if (!(XRat(p.lo) < p.hi))
            throw Error(ErrorCode::InvalidGenerator, "piece with lo >= hi");
        if (p.hi.is_inf()) {
            reached_inf = true;
            break;
        }
        cursor = p.hi.finite();
    }
    if (!reached_inf) {
        if (end.is_inf() || !(XRat(cursor) == end))
            throw Error(ErrorCode::InvalidGenerator, "generator pieces must reach the domain end");
    }
    return pieces;
}

double eval_pieces(const std::vector<Piece>& pieces, double t) {
    for (const auto& p : pieces) {
        double lo = p.lo.to_double();
        double hi = p.hi.is_inf() ? kInf : p.hi.to_double();
        if (t >= lo && t < hi) return p.value(t);
    }
    return pieces.empty() ? 0 : pieces.back().value(t);
}

} // namespace

QuasiConcaveFn::QuasiConcaveFn(std::vector<Piece> pieces, double phi0, double phi_inf,
                               bool require_concave_increasing)
    : pieces_(normalize_generator_pieces(std::move(pieces), XRat::inf())),
      phi0_(phi0),
      phi_inf_(phi_inf),
      concave_increasing_(require_concave_increasing) {
    if (phi0 < 0 || phi_inf <= 0)
        throw Error(ErrorCode::InvalidGenerator, "phi limits out of range");
    if (pieces_.empty() || !pieces_.back().hi.is_inf())
        throw Error(ErrorCode::InvalidGenerator, "phi must be defined out to infinity");

    // sample grid: log-spaced plus piece boundaries
    std::vector<double> ts;
    for (double t = 1e-6; t <= 1e6; t *= 2.7) ts.push_back(t);
    for (const auto& p : pieces_) {
        double lo = p.lo.to_double();
        if (lo > 0) {
            ts.push_back(lo * (1 + 1e-9));
            ts.push_back(lo * (1 - 1e-9));
        }
    }
    std::sort(ts.begin(), ts.end());
    double prev_v = 0, prev_ratio = kInf;
    for (double t : ts) {
        double v = eval(t);
        if (!(v >= 0) || !std::isfinite(v))
            throw Error(ErrorCode::InvalidGenerator, "phi must be finite and nonnegative");
        if (v + 1e-12 * std::max(1.0, prev_v) < prev_v)
            throw Error(ErrorCode::InvalidGenerator, "phi must be non-decreasing");
        double ratio = v / t;
        if (ratio > prev_ratio * (1 + 1e-9) + 1e-15)
            throw Error(ErrorCode::InvalidGenerator, "phi(t)/t must be non-increasing");
        prev_v = v;
        prev_ratio = ratio;
    }

    // stored limits vs pieces
    double near0 = eval(1e-8);
    if (std::fabs(near0 - phi0_) > 1e-6 * std::max(1.0, phi0_) + 1e-3)
        throw Error(ErrorCode::InvalidGenerator, "phi(0+) contradicts pieces");
    double nearInf = eval(1e8);
    if (std::isinf(phi_inf_)) {
        if (nearInf < 1e2 && eval(1e12) < 1e3)
            throw Error(ErrorCode::InvalidGenerator, "phi(inf)=inf contradicts pieces");
    } else {
        if (std::fabs(nearInf - phi_inf_) > 1e-3 * std::max(1.0, phi_inf_))
            throw Error(ErrorCode::InvalidGenerator, "phi(inf) contradicts pieces");
    }

    if (require_concave_increasing) {
        // midpoint concavity within each piece plus across breakpoints
        for (const auto& p : pieces_) {
            double lo = p.lo.to_double();
            double hi = p.hi.is_inf() ? std::max(4 * lo + 4, 1e4) : p.hi.to_double();
            for (int i = 0; i < 24; ++i) {
                double x = lo + (hi - lo) * (i + 0.3) / 24.5;
                double y = lo + (hi - lo) * (i + 0.9) / 24.5;
                double m = 0.5 * (x + y);
                if (eval(m) + 1e-10 < 0.5 * (eval(x) + eval(y)))
                    throw Error(ErrorCode::InvalidGenerator, "phi must be concave");
            }
        }
    }
}

QuasiConcaveFn QuasiConcaveFn::sqrt() { return power(Rat(1, 2)); }

QuasiConcaveFn QuasiConcaveFn::power(const Rat& theta) {
    if (theta.sign() <= 0 || theta > Rat(1))
        throw Error(ErrorCode::InvalidGenerator, "power exponent must lie in (0,1]");
    std::vector<Piece> ps{Piece::power(Rat(0), XRat::inf(), Rat(1), theta)};
    return QuasiConcaveFn(std::move(ps), 0.0, kInf, true);
}

QuasiConcaveFn QuasiConcaveFn::bounded_ratio() {
    // t/(1+t) = 1 - 1/(t+1)
    std::vector<Piece> ps{Piece::hyp(Rat(0), XRat::inf(), Rat(-1), Rat(1), Rat(-1))};
    return QuasiConcaveFn(std::move(ps), 0.0, 1.0, true);
}

QuasiConcaveFn QuasiConcaveFn::min_with_one() {
    std::vector<Piece> ps{Piece::power(Rat(0), XRat(Rat(1)), Rat(1), Rat(1)),
                          Piece::constant(Rat(1), XRat::inf(), Rat(1))};
    return QuasiConcaveFn(std::move(ps), 0.0, 1.0, true);
}

double QuasiConcaveFn::eval(double t) const {
    if (t <= 0) return 0;
    return eval_pieces(pieces_, t);
}

PiecewiseFn QuasiConcaveFn::derivative() const {
    std::vector<Piece> out;
    for (const auto& p : pieces_) {
        switch (p.kind) {
            case PieceKind::Const:
                out.push_back(Piece::constant(p.lo, p.hi, 0));
                break;
            case PieceKind::Power:
                out.push_back(Piece::power(p.lo, p.hi, p.p0 * p.p1, p.p1 - Rat(1), p.p2));
                break;
            case PieceKind::Hyp:
                out.push_back(Piece::power(p.lo, p.hi, -p.p0, Rat(-2), p.p2));
                break;
            default:
                throw Error(ErrorCode::InvalidGenerator, "unexpected generator piece");
        }
    }
    return PiecewiseFn(Domain::HalfLine, std::move(out));
}

double QuasiConcaveFn::integral_to(double t) const {
    // phi is continuous on (0,inf), so the integral of phi' telescopes
    return eval(t) - phi0_;
}

OrliczFn::OrliczFn(std::vector<Piece> pieces, XRat b_F, double value_at_bF,
                   bool vanishes_only_at_zero)
    : pieces_(normalize_generator_pieces(std::move(pieces), b_F)),
      bF_(b_F),
      value_at_bF_(value_at_bF),
      vanishes_only_at_zero_(vanishes_only_at_zero) {
    if (!bF_.is_inf() && bF_.finite().sign() <= 0)
        throw Error(ErrorCode::InvalidGenerator, "b_F must be positive");
    double at0 = eval(1e-12);
    if (!(at0 >= 0) || at0 > 1e-6)
        throw Error(ErrorCode::InvalidGenerator, "F(0) must be 0");
    double hi = bF_.is_inf() ? 1e4 : bF_.to_double();
    double prev = 0;
    for (int i = 1; i <= 400; ++i) {
        double x = hi * i / 401.0;
        double v = eval(x);
        if (v + 1e-12 < prev) throw Error(ErrorCode::InvalidGenerator, "F must be non-decreasing");
        prev = v;
    }
    for (int i = 0; i < 200; ++i) {
        double x = hi * (i + 0.25) / 201.0;
        double y = hi * (i + 1.0) / 201.0;
        double m = 0.5 * (x + y);
        if (eval(m) > 0.5 * (eval(x) + eval(y)) + 1e-9 * std::max(1.0, eval(y)))
            throw Error(ErrorCode::InvalidGenerator, "F must be convex");
    }
    if (vanishes_only_at_zero_ && largest_zero() > 0)
        throw Error(ErrorCode::InvalidGenerator, "F vanishes away from zero");
}

OrliczFn OrliczFn::power(const Rat& p) {
    if (p < Rat(1)) throw Error(ErrorCode::InvalidGenerator, "Orlicz power needs p >= 1");
    std::vector<Piece> ps{Piece::power(Rat(0), XRat::inf(), Rat(1), p)};
    return OrliczFn(std::move(ps), XRat::inf(), kInf, true);
}

OrliczFn OrliczFn::power_capped(const Rat& p) {
    if (p < Rat(1)) throw Error(ErrorCode::InvalidGenerator, "Orlicz power needs p >= 1");
    std::vector<Piece> ps{Piece::power(Rat(0), XRat(Rat(1)), Rat(1), p)};
    return OrliczFn(std::move(ps), XRat(Rat(1)), 1.0, true);
}

OrliczFn OrliczFn::indicator_cap() {
    std::vector<Piece> ps{Piece::constant(Rat(0), XRat(Rat(1)), Rat(0))};
    return OrliczFn(std::move(ps), XRat(Rat(1)), 0.0, false);
}

double OrliczFn::eval(double x) const {
    if (x < 0) x = -x;
    if (x == 0) return 0;
    if (!bF_.is_inf()) {
        double b = bF_.to_double();
        if (x > b) return kInf;
        if (x == b) return value_at_bF_;
    }
    return eval_pieces(pieces_, x);
}

double OrliczFn::largest_zero() const {
    if (vanishes_only_at_zero_) return 0;
    double z = 0;
    for (const auto& p : pieces_) {
        if (p.is_zero())
            z = p.hi.is_inf() ? kInf : p.hi.to_double();
        else
            break;
    }
    return z;
}

double OrliczFn::inverse_upper(double y) const {
    if (y < 0) return 0;
    if (!bF_.is_inf()) {
        if (value_at_bF_ <= y) return bF_.to_double();
    }
    double hi_cap = bF_.is_inf() ? 1.0 : bF_.to_double();
    if (bF_.is_inf()) {
        while (eval(hi_cap) <= y && hi_cap < 1e300) hi_cap *= 2;
        if (eval(hi_cap) <= y) return kInf;
    }
    double lo = 0, hi = hi_cap;
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (lo + hi);
        if (eval(m) <= y)
            lo = m;
        else
            hi = m;
    }
    return lo;
}

double OrliczFn::delta2_probe(bool /*at_zero*/, const std::vector<double>& grid) const {
    double sup = 0;
    for (double x : grid) {
        if (x <= 0) continue;
        double fx = eval(x);
        double f2x = eval(2 * x);
        if (fx == 0) {
            if (f2x > 0) return kInf;
            continue;
        }
        if (std::isinf(fx)) continue;
        sup = std::max(sup, f2x / fx);
    }
    return sup;
}

} // namespace rispaces
