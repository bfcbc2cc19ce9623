#ifndef RISPACES_PIECEWISE_HPP
#define RISPACES_PIECEWISE_HPP

#include <optional>
#include <string>
#include <vector>

#include "rispaces/domain.hpp"
#include "rispaces/rational.hpp"

namespace rispaces {

// Analytic piece kinds. Const/Hyp/Power form the public closure class; the
// Ces* kinds are internal-only carriers for Cesaro images of Hyp and Power
// pieces (they support evaluation and integration but not the exact
// rearrangement layer).
enum class PieceKind { Const, Hyp, Power, CesPow, CesLog };

struct Piece {
    Rat lo;
    XRat hi;
    PieceKind kind = PieceKind::Const;

    // Const : value = p0
    // Hyp   : value = p0 / arg + p1,     arg = mirror ? (p2 - t) : (t - p2)
    // Power : value = p0 * arg^p1
    Rat p0, p1, p2;
    bool mirror = false;

    // CesPow: value = d_b + d_k / t + d_c * (t - d_s)^d_beta / t
    // CesLog: value = d_b + d_k / t + d_c * ln(t - d_s) / t
    double d_b = 0, d_k = 0, d_c = 0, d_beta = 0, d_s = 0;

    static Piece constant(Rat lo, XRat hi, Rat c);
    static Piece hyp(Rat lo, XRat hi, Rat a, Rat b, Rat s = 0, bool mirror = false);
    static Piece power(Rat lo, XRat hi, Rat c, Rat alpha, Rat s = 0, bool mirror = false);

    bool is_public_kind() const { return kind != PieceKind::CesPow && kind != PieceKind::CesLog; }
    bool is_zero() const { return kind == PieceKind::Const && p0.is_zero(); }

    double value(double t) const;
    // Exact value at a rational point, when the piece arithmetic stays
    // rational (Const always; Hyp always; Power with integer exponent).
    std::optional<Rat> value_exact(const Rat& t) const;

    // Interior points where the derivative changes sign, sorted; between
    // consecutive returned points (and the endpoints) the piece is monotone.
    std::vector<double> interior_turning_points() const;

    // One-sided limits at the piece boundaries (+inf allowed).
    double limit_left() const;   // t -> lo+
    double limit_right() const;  // t -> hi- (or t -> inf)

    // Signed integral over (u, v) within the piece, +/-inf when divergent.
    double integral(double u, double v) const;
    // Integral of |value|^p over (u, v); closed form where available,
    // otherwise falls back to certified bracketing (err reported).
    void abs_pow_integral(double p, double u, double v,
                          double& val, double& err) const;

    // Roots of |value| = y strictly inside (u, v), ascending.
    std::vector<double> abs_level_crossings(double y, double u, double v) const;

    std::string describe() const;
};

// A measurable function on (0,1) or (0,infty) given as finitely many analytic
// pieces. Pieces are contiguous starting at 0; on the half line the last
// piece may extend to +infinity (the tail rule). Zero regions are explicit
// Const-0 pieces.
class PiecewiseFn {
public:
    PiecewiseFn() : domain_(Domain::HalfLine) {}
    // Pieces may be sparse (gaps are filled with zeros) but must be ordered
    // and non-overlapping. Throws InvalidFunction otherwise.
    PiecewiseFn(Domain domain, std::vector<Piece> pieces);

    static PiecewiseFn zero(Domain d);
    static PiecewiseFn indicator(Domain d, const Rat& a, const XRat& b, const Rat& height = 1);

    Domain domain() const { return domain_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    // Measure of the underlying interval: 1 or +inf.
    XRat domain_measure() const;

    double eval(double t) const;
    std::optional<Rat> eval_exact(const Rat& t) const;

    PiecewiseFn abs() const;
    PiecewiseFn scale(const Rat& c) const;
    bool is_nonneg() const;
    // All pieces Const (after abs the function is a step function); the
    // exact rearrangement layer applies.
    bool is_step() const;
    bool has_internal_pieces() const;

    // Essential sup of |f|; exact rational when representable.
    double sup_abs() const;
    std::optional<Rat> sup_abs_exact() const;
    XRat support_measure() const;

    // f * chi_{(0,a) cup (b,inf)} and f * chi_{(a,b)}.
    PiecewiseFn window(const Rat& a, const XRat& b) const;
    PiecewiseFn complement_window(const Rat& a, const XRat& b) const;

    // min(f, c) pointwise for c >= 0 (applied to |f|-like nonneg functions).
    PiecewiseFn truncate_above(const Rat& c) const;
    // Pointwise max of two nonnegative functions on the same domain.
    static PiecewiseFn pointwise_max(const PiecewiseFn& f, const PiecewiseFn& g);
    // f - g pointwise (crossing points become breakpoints).
    static PiecewiseFn pointwise_sub(const PiecewiseFn& f, const PiecewiseFn& g);

    // Sum of functions with disjoint supports (overlap is an error).
    static PiecewiseFn disjoint_sum(const std::vector<PiecewiseFn>& parts);

    std::string describe() const;

private:
    void normalize();
    Domain domain_;
    std::vector<Piece> pieces_;
};

// Tail rule of a sequence beyond the explicit head. Harmonic is internal
// (discrete Cesaro images of Hyp tails): with m = n - h_s,
//   value(n) = h_b + (h_c + h_a * H(m, h_sigma)) / m,
// where H(m, sigma) = sum_{k<=m} 1/(k - sigma).
struct SeqTail {
    enum class Kind { Zero, Const, Hyp, Harmonic } kind = Kind::Zero;
    Rat v;        // Const value (>= 0)
    Rat a, b, s;  // Hyp: value = a/(n-s) + b, b >= 0
    double h_a = 0, h_b = 0, h_c = 0, h_s = 0, h_sigma = 0;

    double value(long n) const;
    std::optional<Rat> value_exact(long n) const;
    double limit() const;
};

// A sequence x_1, x_2, ... with a finite explicit head and a tail rule.
class SeqFn {
public:
    SeqFn() = default;
    SeqFn(std::vector<Rat> head, SeqTail tail);

    static SeqFn unit(long n);  // e_n
    static SeqFn ones();        // chi_N

    const std::vector<Rat>& head() const { return head_; }
    const SeqTail& tail() const { return tail_; }
    long head_size() const { return static_cast<long>(head_.size()); }

    double value(long n) const;  // n >= 1
    std::optional<Rat> value_exact(long n) const;

    SeqFn abs() const;
    bool is_exact() const { return tail_.kind != SeqTail::Kind::Harmonic; }
    double sup_abs() const;
    double tail_limit_abs() const;
    XRat support_count() const;

    // x * chi_{(0,a) cup (b,inf)} over indices.
    SeqFn window(const Rat& a, const XRat& b) const;
    SeqFn complement_window(const Rat& a, const XRat& b) const;

    // Ensure the head covers indices 1..n (materializing tail values).
    SeqFn with_head_through(long n) const;

    std::string describe() const;

private:
    std::vector<Rat> head_;
    SeqTail tail_;
};

// Shifted harmonic number H(n,s) = sum_{k=1..n} 1/(k-s), s < 1, with the
// asymptotic digamma expansion for large n (abs error <= 1e-14).
double harmonic_shifted(double n, double s);

} // namespace rispaces

#endif
