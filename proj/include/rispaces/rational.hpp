#ifndef RISPACES_RATIONAL_HPP
#define RISPACES_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace rispaces {

// Exact rational scalar. Breakpoints, step heights and generator parameters
// live in this type so that the step-function layer is exact end to end.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(int n) : v_(n) {}
    Rat(long n) : v_(static_cast<long int>(n)) {}
    Rat(long long n) : v_(static_cast<double>(0)) { v_ = from_ll(n); }
    Rat(int num, int den);
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "p/q", integers, and plain decimal strings ("1.25", "-0.5e2").
    static Rat parse(const std::string& text);
    // Exact binary value of the double (doubles are dyadic rationals).
    static Rat from_double(double x);

    double to_double() const { return v_.get_d(); }
    std::string str() const;

    bool is_integer() const { return v_.get_den() == 1; }
    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    Rat abs() const { return Rat(mpq_class(::abs(v_))); }

    long num_long() const { return v_.get_num().get_si(); }
    long den_long() const { return v_.get_den().get_si(); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) { v_ /= o.v_; return *this; }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    static mpq_class from_ll(long long n);
    mpq_class v_;
};

// Rational extended with +infinity. Used for measures, norms of indicators,
// tail interval endpoints and distribution values.
class XRat {
public:
    XRat() : fin_(), inf_(false) {}
    XRat(const Rat& r) : fin_(r), inf_(false) {}
    XRat(int n) : fin_(n), inf_(false) {}
    static XRat inf() { XRat x; x.inf_ = true; return x; }

    bool is_inf() const { return inf_; }
    const Rat& finite() const { return fin_; }
    double to_double() const;
    std::string str() const { return inf_ ? "inf" : fin_.str(); }

    XRat operator+(const XRat& o) const;
    XRat operator-(const Rat& o) const;

    friend bool operator==(const XRat& a, const XRat& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.fin_ == b.fin_;
    }
    friend bool operator<(const XRat& a, const XRat& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.fin_ < b.fin_;
    }
    friend bool operator<=(const XRat& a, const XRat& b) { return a == b || a < b; }
    friend bool operator>(const XRat& a, const XRat& b) { return b < a; }
    friend bool operator>=(const XRat& a, const XRat& b) { return b <= a; }

private:
    Rat fin_;
    bool inf_;
};

inline XRat min(const XRat& a, const XRat& b) { return a < b ? a : b; }
inline XRat max(const XRat& a, const XRat& b) { return a < b ? b : a; }

} // namespace rispaces

#endif
