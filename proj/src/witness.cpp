#include <cmath>
#include <sstream>

#include "rispaces/ideal.hpp"

namespace rispaces {

namespace {

// the generating profile must be a single constant on (0, inf)
Rat flat_height(const PiecewiseFn& f) {
    const auto& ps = f.pieces();
    if (f.domain() != Domain::HalfLine || ps.size() != 1 || ps[0].kind != PieceKind::Const ||
        !ps[0].hi.is_inf() || ps[0].p0.sign() <= 0)
        throw Error(ErrorCode::UnsupportedForm,
                    "disjoint-blocks construction needs f = c * chi_(0,inf)");
    return ps[0].p0;
}

} // namespace

WitnessFamily build_witness_disjoint_blocks(const PiecewiseFn& f, int k) {
    if (k < 1) throw Error(ErrorCode::InvalidFunction, "k >= 1");
    Rat c = flat_height(f);
    WitnessFamily fam;
    fam.construction = "disjoint-blocks";
    fam.profile = f;
    for (int i = 0; i < k; ++i) {
        WitnessMember m;
        // blocks (j, j+1) for j = i+1, i+1+k, i+1+2k, ... (omega_j = j);
        // the finite part keeps the first few blocks
        std::vector<Piece> fin;
        const int horizon = 4;
        for (int r = 0; r < horizon; ++r) {
            int j = i + 1 + r * k;
            fin.push_back(Piece::constant(Rat(j), XRat(Rat(j + 1)), c));
        }
        m.finite_part = PiecewiseFn(Domain::HalfLine, std::move(fin));
        // infinitely many unit blocks: the rearrangement is c * chi_(0,inf)
        m.rearrangement = f;
        m.rearrangement_exact = true;
        m.norm_defect = 0;
        std::ostringstream os;
        os << "blocks (j, j+1), j = " << (i + 1) << " mod " << k;
        m.note = os.str();
        fam.members.push_back(std::move(m));
    }
    return fam;
}

WitnessFamily build_witness_marcinkiewicz(const Rat& theta, const Rat& a, int k) {
    if (k < 1) throw Error(ErrorCode::InvalidFunction, "k >= 1");
    if (!(theta.sign() > 0 && theta < Rat(1)))
        throw Error(ErrorCode::UnsupportedForm,
                    "construction needs phi(t) = t^theta with 0 < theta < 1");
    if (a.sign() <= 0) throw Error(ErrorCode::InvalidFunction, "a > 0");
    // psi(t) = t / phi(t) = t^(1-theta), psi' = (1-theta) t^(-theta);
    // member i restricts psi' chi_(0,a) to scale bands (s_{m+1}, s_m],
    // s_m = a 10^(-mu m(m+1)), assigned round robin
    const long mu = 3;
    const int depth = 9;  // deepest band stays well above double underflow
    Rat coeff = Rat(1) - theta;
    auto s_of = [&](int m) {
        Rat scale = 1;
        Rat ten = Rat(1, 10);
        long e = mu * static_cast<long>(m) * (m + 1);
        for (long i = 0; i < e; ++i) scale *= ten;
        return a * scale;
    };
    WitnessFamily fam;
    fam.construction = "marcinkiewicz";
    fam.profile = PiecewiseFn(Domain::HalfLine,
                              {Piece::power(Rat(0), XRat(a), coeff, -theta)});
    for (int i = 0; i < k; ++i) {
        WitnessMember m;
        std::vector<Piece> fin;
        double defect = 1;
        for (int r = i; r <= depth; r += k) {
            Rat hi = s_of(r), lo = s_of(r + 1);
            fin.push_back(Piece::power(lo, XRat(hi), coeff, -theta));
            // ratio at t = s_r - s_{r+1}:
            //   (1-rr)^(theta-1) (1 - rr^(1-theta)) >= 1 - rr^(1-theta)
            double rr = (lo / hi).to_double();
            double band = 1 - std::pow(rr, 1.0 - theta.to_double());
            defect = std::min(defect, 1 - band);
        }
        std::sort(fin.begin(), fin.end(),
                  [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
        if (fin.empty())
            throw Error(ErrorCode::InvalidFunction, "k exceeds the available band depth");
        m.finite_part = PiecewiseFn(Domain::HalfLine, std::move(fin));
        m.rearrangement_exact = false;
        m.norm_defect = defect;
        std::ostringstream os;
        os << "scale bands m = " << i << " mod " << k << " of psi' chi_(0," << a.str() << ")";
        m.note = os.str();
        fam.members.push_back(std::move(m));
    }
    return fam;
}

WitnessFamily build_witness_flat_lorentz(const QuasiConcaveFn& phi, int k) {
    if (std::isinf(phi.phi_inf()))
        throw Error(ErrorCode::UnsupportedForm, "construction needs phi(inf) < inf");
    Rat inv = Rat(1) / Rat::from_double(phi.phi_inf());
    PiecewiseFn f(Domain::HalfLine, {Piece::constant(Rat(0), XRat::inf(), inv)});
    WitnessFamily fam = build_witness_disjoint_blocks(f, k);
    fam.construction = "flat-lorentz";
    return fam;
}

namespace {

// union of the members' block structure for a subset, as the exact
// rearrangement when every member carries one
bool subset_rearrangement(const WitnessFamily& fam, unsigned mask, PiecewiseFn& out) {
    bool any = false;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        if (!(mask & (1u << i))) continue;
        if (!fam.members[i].rearrangement_exact) return false;
        any = true;
    }
    if (!any) return false;
    // disjoint restrictions of one flat profile with infinite total measure
    // rearrange back to the profile itself
    out = fam.profile;
    return true;
}

// certified norm bracket of the union of members in `mask`
EvalResult member_union_norm(const WitnessFamily& fam, unsigned mask, const SpaceSpec& X,
                             double tol) {
    PiecewiseFn exact_r;
    if (subset_rearrangement(fam, mask, exact_r)) {
        return norm(AnyFn(exact_r), X, tol);
    }
    // scale-band members: the union is dominated by the profile (upper) and
    // contains each member's bands (lower via the recorded defect)
    EvalResult up = norm(AnyFn(fam.profile), X, tol);
    double defect = 1;
    std::vector<PiecewiseFn> parts;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        if (!(mask & (1u << i))) continue;
        defect = std::min(defect, fam.members[i].norm_defect);
        parts.push_back(fam.members[i].finite_part);
    }
    double lo = up.value * (1 - defect);
    double mid = 0.5 * (lo + up.value);
    return EvalResult::make_numeric(mid, 0.5 * (up.value - lo) + up.err_bound);
}

} // namespace

CheckReport verify_witness(const WitnessFamily& fam, const SpaceSpec& X, double tol) {
    CheckReport rep;
    rep.id = "witness-" + fam.construction;
    const std::size_t k = fam.members.size();

    // pairwise disjoint supports (interval overlap on the finite parts plus
    // the block patterns by construction)
    bool disjoint = true;
    for (std::size_t i = 0; i < k && disjoint; ++i) {
        for (std::size_t j = i + 1; j < k && disjoint; ++j) {
            for (const auto& pi : fam.members[i].finite_part.pieces()) {
                if (pi.is_zero()) continue;
                for (const auto& pj : fam.members[j].finite_part.pieces()) {
                    if (pj.is_zero()) continue;
                    Rat lo = std::max(pi.lo, pj.lo);
                    XRat hi = min(pi.hi, pj.hi);
                    if (XRat(lo) < hi) {
                        disjoint = false;
                        break;
                    }
                }
                if (!disjoint) break;
            }
        }
    }
    rep.add_bool_clause("supports pairwise disjoint", disjoint);

    for (std::size_t i = 0; i < k; ++i) {
        EvalResult n = member_union_norm(fam, 1u << i, X, tol);
        std::ostringstream os;
        os << "member " << (i + 1) << " norm = 1";
        rep.add_clause(os.str(), n, 1.0, tol);
    }

    if (k <= 10) {
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            if ((mask & (mask - 1)) == 0) continue;  // singletons done above
            EvalResult n = member_union_norm(fam, mask, X, tol);
            std::ostringstream os;
            os << "partial sum mask=" << mask << " norm = 1";
            rep.add_clause(os.str(), n, 1.0, tol);
        }
    } else {
        unsigned mask = 0;
        for (std::size_t i = 0; i < k; ++i) {
            mask |= 1u << i;
            if (i == 0) continue;
            EvalResult n = member_union_norm(fam, mask, X, tol);
            std::ostringstream os;
            os << "prefix sum through member " << (i + 1) << " norm = 1";
            rep.add_clause(os.str(), n, 1.0, tol);
        }
    }

    rep.flags.push_back(
        "finite-k projection of the infinite construction; verdicts are numerically "
        "consistent with, never proofs of, the full isometry");
    rep.verdict = rep.overall ? "family passes the finite-k isometry checks"
                              : "family fails a finite-k check";
    return rep;
}

EvalResult witness_truncation_gap(const WitnessFamily& fam, const SpaceSpec& X, long m,
                                  double tol) {
    if (m < 2) throw Error(ErrorCode::InvalidFunction, "m >= 2");
    if (fam.construction == "marcinkiewicz")
        throw Error(ErrorCode::UnsupportedForm,
                    "truncation gap applies to the flat constructions");
    // sum of all members equals the profile a.e. on (1, inf); against the
    // truncation profile*chi_(1/m, m) the difference is
    //   profile on (1/m, 1) and on (m, inf)
    Rat c = flat_height(fam.profile);
    PiecewiseFn diff(Domain::HalfLine,
                     {Piece::constant(Rat(1, static_cast<int>(m)), XRat(Rat(1)), c),
                      Piece::constant(Rat(static_cast<int>(m)), XRat::inf(), c)});
    return norm(AnyFn(diff), X, tol);
}

} // namespace rispaces
