#include "daestruct/rational.hpp"

#include "daestruct/errors.hpp"

#include <cctype>
#include <sstream>

namespace daestruct {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw Error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(long num, long den) {
    return make_rational(Integer(num), Integer(den));
}

Rational rational_from_string(const std::string& s) {
    std::string t;
    t.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw Error("empty rational literal");
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(t));
        Integer num(t.substr(0, slash));
        Integer den(t.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::invalid_argument&) {
        throw Error("malformed rational literal '" + s + "'");
    }
}

std::string rational_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string rational_to_decimal(const Rational& q, int digits) {
    if (q == 0) return "0";
    if (digits < 1) digits = 1;
    Integer num = q.get_num();
    Integer den = q.get_den();
    bool neg = num < 0;
    if (neg) num = -num;

    auto extract = [&](long shift) {
        // round-to-nearest of num * 10^shift / den (ties away from zero)
        Integer pow, scaledNum = num, scaledDen = den;
        mpz_ui_pow_ui(pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
        (shift >= 0 ? scaledNum : scaledDen) *= pow;
        Integer quo, rem;
        mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), scaledNum.get_mpz_t(), scaledDen.get_mpz_t());
        if (Integer(rem * 2) >= scaledDen) quo += 1;
        return quo;
    };

    // sizeinbase can overestimate by one for either operand, and rounding can
    // carry into an extra digit; adjust the shift until the mantissa has
    // exactly `digits` digits.
    long exp10 = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
                 static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
    long shift = digits - exp10;
    Integer quo = extract(shift);
    for (int guard = 0; guard < 4; ++guard) {
        long len = static_cast<long>(quo.get_str().size());
        if (len == digits) break;
        shift += digits - len;
        quo = extract(shift);
    }

    std::string ds = quo.get_str();
    long e = static_cast<long>(ds.size()) - 1 - shift; // exponent of the leading digit
    while (ds.size() > 1 && ds.back() == '0') ds.pop_back();
    std::ostringstream out;
    if (neg) out << '-';
    out << ds.substr(0, 1);
    if (ds.size() > 1) out << '.' << ds.substr(1);
    out << 'e' << (e >= 0 ? "+" : "") << e;
    return out.str();
}

Rational round_to_dyadic(const Rational& q, unsigned bits) {
    Integer scaledNum = q.get_num() << bits;
    Integer den = q.get_den();
    Integer quo, rem;
    mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), scaledNum.get_mpz_t(), den.get_mpz_t());
    if (Integer(rem * 2) >= den) quo += 1;
    Integer two_bits = Integer(1) << bits;
    return make_rational(quo, two_bits);
}

double rational_to_double(const Rational& q) {
    return q.get_d();
}

Rational pow10_inv(unsigned exp10) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, exp10);
    return make_rational(Integer(1), p);
}

} // namespace daestruct
