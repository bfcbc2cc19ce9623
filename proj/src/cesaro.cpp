#include "rispaces/cesaro.hpp"

#include <cmath>
#include <limits>

namespace rispaces {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PiecewiseFn cesaro_apply(const PiecewiseFn& f) {
    PiecewiseFn g = f.abs();
    std::vector<Piece> out;
    double A = 0;           // accumulated integral, double
    Rat A_rat = 0;          // exact track while the prefix stays rational
    bool A_exact = true;

    for (const auto& p : g.pieces()) {
        if (!p.is_public_kind())
            throw Error(ErrorCode::UnsupportedForm,
                        "averaging an already-averaged image is not closed form");
        double lo = p.lo.to_double();
        double hi = p.hi.is_inf() ? kInf : p.hi.to_double();

        // local integrability at the left end of the piece
        if (p.kind == PieceKind::Power && !p.mirror && p.p2 == p.lo && p.p1 <= Rat(-1))
            throw Error(ErrorCode::NotLocallyIntegrable,
                        "power singularity of order <= -1");
        if (p.kind == PieceKind::Power && p.mirror && !p.hi.is_inf() &&
            XRat(p.p2) == p.hi && p.p1 <= Rat(-1))
            throw Error(ErrorCode::NotLocallyIntegrable,
                        "power singularity of order <= -1");

        switch (p.kind) {
            case PieceKind::Const: {
                // (A + c (x - lo)) / x = (A - c lo)/x + c
                Rat a_coef = (A_exact ? A_rat : Rat::from_double(A)) - p.p0 * p.lo;
                out.push_back(Piece::hyp(p.lo, p.hi, a_coef, p.p0));
                if (A_exact && !p.hi.is_inf())
                    A_rat += p.p0 * (p.hi.finite() - p.lo);
                break;
            }
            case PieceKind::Power: {
                Piece q;
                q.lo = p.lo;
                q.hi = p.hi;
                q.mirror = p.mirror;
                double c = p.p0.to_double(), al = p.p1.to_double(), s = p.p2.to_double();
                double sgn = p.mirror ? -1.0 : 1.0;
                auto arg = [&](double t) { return p.mirror ? s - t : t - s; };
                if (al == -1) {
                    q.kind = PieceKind::CesLog;
                    q.d_c = sgn * c;
                    q.d_s = s;
                    q.d_b = 0;
                    q.d_k = A - sgn * c * std::log(arg(lo));
                } else {
                    q.kind = PieceKind::CesPow;
                    q.d_c = sgn * c / (al + 1);
                    q.d_beta = al + 1;
                    q.d_s = s;
                    q.d_b = 0;
                    double Plo = sgn * c / (al + 1) * std::pow(arg(lo), al + 1);
                    q.d_k = A - Plo;
                }
                out.push_back(q);
                break;
            }
            case PieceKind::Hyp: {
                Piece q;
                q.lo = p.lo;
                q.hi = p.hi;
                q.mirror = p.mirror;
                q.kind = PieceKind::CesLog;
                double a = p.p0.to_double(), b = p.p1.to_double(), s = p.p2.to_double();
                double sgn = p.mirror ? -1.0 : 1.0;
                double arg_lo = p.mirror ? s - lo : lo - s;
                q.d_b = b;
                q.d_c = sgn * a;
                q.d_s = s;
                q.d_k = A - sgn * a * std::log(arg_lo) - b * lo;
                out.push_back(q);
                break;
            }
            default:
                break;
        }
        if (!p.hi.is_inf()) {
            double seg = p.integral(lo, hi);
            if (std::isinf(seg))
                throw Error(ErrorCode::NotLocallyIntegrable, "divergent interior integral");
            A += seg;
            if (p.kind != PieceKind::Const) A_exact = false;
        }
    }
    return PiecewiseFn(g.domain(), std::move(out));
}

SeqFn cesaro_apply(const SeqFn& x) {
    SeqFn g = x.abs();
    long N = g.head_size();
    std::vector<Rat> head;
    head.reserve(static_cast<std::size_t>(N));
    Rat S = 0;
    for (long n = 1; n <= N; ++n) {
        S += *g.value_exact(n);
        head.push_back(S / Rat(static_cast<int>(n)));
    }
    const SeqTail& t = g.tail();
    SeqTail out;
    switch (t.kind) {
        case SeqTail::Kind::Zero:
            out.kind = SeqTail::Kind::Hyp;
            out.a = S;
            out.b = Rat(0);
            out.s = Rat(0);
            if (S.is_zero()) out = SeqTail{};
            break;
        case SeqTail::Kind::Const:
            // (S + v(n-N))/n = v + (S - vN)/n
            out.kind = SeqTail::Kind::Hyp;
            out.a = S - t.v * Rat(static_cast<int>(N));
            out.b = t.v;
            out.s = Rat(0);
            if (out.a.is_zero() && out.b.is_zero()) out = SeqTail{};
            break;
        case SeqTail::Kind::Hyp: {
            // (1/n)(S + sum_{k=N+1..n} (a/(k-s) + b))
            //   = b + (S - bN - a H(N,s))/n + a H(n,s)/n
            out.kind = SeqTail::Kind::Harmonic;
            double a = t.a.to_double(), b = t.b.to_double(), s = t.s.to_double();
            out.h_a = a;
            out.h_b = b;
            out.h_sigma = s;
            out.h_s = 0;
            out.h_c = S.to_double() - b * static_cast<double>(N) -
                      a * harmonic_shifted(static_cast<double>(N), s);
            break;
        }
        case SeqTail::Kind::Harmonic:
            throw Error(ErrorCode::UnsupportedForm,
                        "averaging an already-averaged sequence is not closed form");
    }
    return SeqFn(std::move(head), out);
}

AnyFn cesaro_apply(const AnyFn& f) {
    if (std::holds_alternative<PiecewiseFn>(f)) return cesaro_apply(std::get<PiecewiseFn>(f));
    return cesaro_apply(std::get<SeqFn>(f));
}

EvalResult cx_norm(const AnyFn& f, const SpaceSpec& base, double tol) {
    require_same_domain(domain_of(f), base.domain());
    return norm(cesaro_apply(f), base, tol);
}

// hook used by norm() for SpaceKind::Cesaro
EvalResult cesaro_space_norm(const AnyFn& f, const SpaceSpec& base, double tol) {
    return cx_norm(f, base, tol);
}

double c_at_zero(const PiecewiseFn& f) {
    PiecewiseFn g = f.abs();
    for (const auto& p : g.pieces()) {
        if (p.lo.sign() != 0) break;
        switch (p.kind) {
            case PieceKind::Const:
                return p.p0.to_double();
            case PieceKind::Power: {
                if (p.p1 <= Rat(-1))
                    throw Error(ErrorCode::NotLocallyIntegrable,
                                "power singularity of order <= -1");
                double al = p.p1.to_double();
                if (p.p2.is_zero() && !p.mirror) {
                    if (al > 0) return 0.0;
                    return kInf;  // alpha in (-1,0): average blows up
                }
                // shifted or mirrored power with arg > 0 at 0: value limit
                return p.value(0.0) >= 0 ? p.limit_left() : p.limit_left();
            }
            case PieceKind::Hyp:
                return p.limit_left();
            default:
                throw Error(ErrorCode::UnsupportedForm, "internal piece at the origin");
        }
    }
    return 0.0;
}

EvalResult bound_probe(const SpaceSpec& base, const std::vector<AnyFn>& family, double tol) {
    if (family.empty()) throw Error(ErrorCode::InvalidFunction, "empty probe family");
    EvalResult best = EvalResult::make_exact(0.0);
    for (const auto& f : family) {
        EvalResult den = norm(f, base, tol);
        if (den.value == 0 || den.is_inf())
            throw Error(ErrorCode::InvalidFunction, "probe family member has norm 0 or inf");
        EvalResult num = cx_norm(f, base, tol);
        if (num.is_inf()) return EvalResult::infinite();
        double r = num.value / den.value;
        double err = (num.err_bound + num.value * den.err_bound / den.value) / den.value;
        if (r > best.value) best = EvalResult{r, num.exact && den.exact, err, 0};
    }
    return best;
}

} // namespace rispaces
