#ifndef RISPACES_IDEAL_HPP
#define RISPACES_IDEAL_HPP

#include <string>
#include <vector>

#include "rispaces/cesaro.hpp"
#include "rispaces/spaces.hpp"

namespace rispaces {

// Outcome of one clause of a criterion check.
struct Clause {
    std::string description;
    EvalResult computed;
    double target = 0;
    double tol = 0;
    bool pass = false;
};

struct CheckReport {
    std::string id;
    std::vector<Clause> clauses;
    std::vector<std::string> flags;  // recorded assumptions and warnings
    std::string verdict;
    bool overall = true;

    void add_clause(const std::string& desc, EvalResult computed, double target, double tol);
    void add_bool_clause(const std::string& desc, bool ok);
};

enum class DistPath { LimitFormula, DeJongeClosedForm, TrivialIdeal };
const char* dist_path_name(DistPath p);

// dist(f, X_a) with the n-schedule of windowed norms that produced it.
struct DistResult {
    double value = 0;
    double err_bound = 0;
    DistPath path = DistPath::LimitFormula;
    std::vector<std::pair<long, double>> partials;  // (n, s_n)
};

DistResult dist_oc(const AnyFn& f, const SpaceSpec& X, double tol = 1e-6);
bool is_order_continuous(const AnyFn& f, const SpaceSpec& X, double tol = 1e-6);

// ||f||_X = dist(f, X_a) = 1 within tol: the unit-sphere distance witness.
CheckReport hudzik_check(const AnyFn& f, const SpaceSpec& X, double tol = 1e-6);

// hudzik clauses plus || f* chi_((0,a) u (b,inf)) ||_CX = 1.
CheckReport cesaro_copy_check(const AnyFn& f, const Rat& a, const XRat& b, const SpaceSpec& X,
                              double tol = 1e-6, bool require_bound_rule = false);

// trivial-ideal route: C(f)(0+) = 1 and ||f||_CX = ||id: X -> L_inf||.
CheckReport trivial_ideal_copy_check(const PiecewiseFn& f, const SpaceSpec& X,
                                     double tol = 1e-6);

// dist(sup{f,g}, X_a) = max{dist(f,X_a), dist(g,X_a)} on one pair.
CheckReport am_property_probe(const PiecewiseFn& f, const PiecewiseFn& g, const SpaceSpec& X,
                              double tol = 1e-6);

// single-instance check of ||F(C|f|)||_X <= M ||F(|f|)||_X.
CheckReport modular_domination_check(const OrliczFn& F, const SpaceSpec& baseX, const AnyFn& f,
                                     double M, double tol = 1e-6);

// membership of x in (CX)_a decided through C(|x|) in X_a.
bool discrete_oc_membership(const SeqFn& x, const SpaceSpec& baseX, double tol = 1e-6);

// rule table: spaces on which the averaging operator is known bounded
enum class BoundRule { Bounded, Unknown };
BoundRule cesaro_bound_rule(const SpaceSpec& X);

// ---------------------------------------------------------------------------
// witness constructions

struct WitnessMember {
    // explicit restriction of the member to a finite horizon (exact pieces)
    PiecewiseFn finite_part;
    // exact rearrangement of the full (infinite) member when available
    PiecewiseFn rearrangement;
    bool rearrangement_exact = false;
    // certified defect: the full member norm lies in [1 - defect, 1] * scale
    double norm_defect = 0;
    std::string note;
};

struct WitnessFamily {
    std::string construction;  // disjoint-blocks | marcinkiewicz | flat-lorentz
    std::vector<WitnessMember> members;
    PiecewiseFn profile;       // the generating function (f or psi' chi)
    double scale = 1;          // expected member norm
};

// f must be c * chi_(0,inf); members restrict f to unit blocks over
// arithmetic progressions of indices.
WitnessFamily build_witness_disjoint_blocks(const PiecewiseFn& f, int k);
// phi(t) = t^theta with 0 < theta < 1; members restrict psi' chi_(0,a) to
// disjoint super-geometric scale bands.
WitnessFamily build_witness_marcinkiewicz(const Rat& theta, const Rat& a, int k);
// Lorentz generator with phi(inf) < inf; blocks of chi_(0,inf)/phi(inf).
WitnessFamily build_witness_flat_lorentz(const QuasiConcaveFn& phi, int k);

// disjointness, member norms, and partial-sum norms (all subsets when
// k <= 10, otherwise prefixes).
CheckReport verify_witness(const WitnessFamily& fam, const SpaceSpec& X, double tol = 1e-6);

// || sum of all members - profile * chi_(1/m, m) ||_X (the truncation
// inequality of the converse criterion); exact piecewise difference.
EvalResult witness_truncation_gap(const WitnessFamily& fam, const SpaceSpec& X, long m,
                                  double tol = 1e-6);

} // namespace rispaces

#endif
