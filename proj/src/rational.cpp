#include "rispaces/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "rispaces/errors.hpp"

namespace rispaces {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DomainMismatch: return "DomainMismatch";
        case ErrorCode::UnboundedRearrangement: return "UnboundedRearrangement";
        case ErrorCode::NotLocallyIntegrable: return "NotLocallyIntegrable";
        case ErrorCode::InvalidGenerator: return "InvalidGenerator";
        case ErrorCode::InvalidFunction: return "InvalidFunction";
        case ErrorCode::NotEmbedded: return "NotEmbedded";
        case ErrorCode::NotTrivialIdeal: return "NotTrivialIdeal";
        case ErrorCode::UnsupportedForm: return "UnsupportedForm";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::Unclassifiable: return "Unclassifiable";
        case ErrorCode::InfiniteModular: return "InfiniteModular";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Error";
}

Rat::Rat(int num, int den) : v_(num, den) {
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    v_.canonicalize();
}

mpq_class Rat::from_ll(long long n) {
    mpq_class q;
    if (n >= std::numeric_limits<long>::min() && n <= std::numeric_limits<long>::max()) {
        q = static_cast<long int>(n);
    } else {
        mpz_class z;
        mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
        q = z;
        if (n < 0) q = -q;
    }
    return q;
}

Rat Rat::from_double(double x) {
    if (!std::isfinite(x)) throw Error(ErrorCode::ParseError, "non-finite scalar");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);
    return Rat(q);
}

namespace {

// Decimal (optionally with exponent) to exact rational.
Rat parse_decimal(const std::string& s) {
    std::string digits;
    long exp10 = 0;
    bool neg = false, any = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        digits += s[i];
        any = true;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            digits += s[i];
            --exp10;
            any = true;
        }
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
        if (i >= s.size()) throw Error(ErrorCode::ParseError, "bad exponent in '" + s + "'");
        long e = 0;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i)
            e = e * 10 + (s[i] - '0');
        exp10 += eneg ? -e : e;
    }
    if (!any || i != s.size())
        throw Error(ErrorCode::ParseError, "bad scalar literal '" + s + "'");
    if (digits.empty()) digits = "0";
    mpz_class mant(digits, 10);
    mpq_class q(mant);
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    if (exp10 >= 0) q *= mpq_class(pow10);
    else q /= mpq_class(pow10);
    if (neg) q = -q;
    q.canonicalize();
    return Rat(q);
}

} // namespace

Rat Rat::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rat num = parse_decimal(text.substr(0, slash));
        Rat den = parse_decimal(text.substr(slash + 1));
        if (den.is_zero()) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
        return num / den;
    }
    return parse_decimal(text);
}

std::string Rat::str() const {
    return v_.get_str();
}

double XRat::to_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : fin_.to_double();
}

XRat XRat::operator+(const XRat& o) const {
    if (inf_ || o.inf_) return XRat::inf();
    return XRat(fin_ + o.fin_);
}

XRat XRat::operator-(const Rat& o) const {
    if (inf_) return XRat::inf();
    return XRat(fin_ - o);
}

} // namespace rispaces
