#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace ghostline {

using Int = std::int64_t;

// Raised for any parameter outside the documented domain.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// floor(a / b) and ceil(a / b) for b > 0 and any sign of a.
inline Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }
inline Int mod_pos(Int a, Int b) { return a - b * floor_div(a, b); }

bool is_prime(Int p);

// A rational number or +infinity.
class ExtRat {
public:
    ExtRat() = default;
    ExtRat(long v) : q_(v) {}
    ExtRat(int v) : q_(v) {}
    ExtRat(long long v) : q_(static_cast<long>(v)) {}
    ExtRat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    static ExtRat infinity() {
        ExtRat r;
        r.inf_ = true;
        return r;
    }

    bool is_inf() const { return inf_; }
    bool is_finite() const { return !inf_; }
    // Throws on +inf.
    const mpq_class& value() const;

    ExtRat& operator+=(const ExtRat& o);
    friend ExtRat operator+(ExtRat a, const ExtRat& b) { return a += b; }
    // finite - finite, or inf - finite; anything minus inf is rejected.
    friend ExtRat operator-(const ExtRat& a, const ExtRat& b);
    // Scaling by a nonnegative integer; 0 * inf = 0.
    friend ExtRat operator*(Int m, const ExtRat& a);

    friend bool operator==(const ExtRat& a, const ExtRat& b);
    friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

    friend ExtRat min(const ExtRat& a, const ExtRat& b) { return a <= b ? a : b; }

    // "num/den" or "inf".
    std::string str() const;
    static ExtRat parse(const std::string& s);

private:
    bool inf_ = false;
    mpq_class q_;
};

// num / den in lowest terms, den != 0.
inline mpq_class frac(Int num, Int den) {
    mpq_class q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

std::string rat_str(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

// Largest e with p^e | m; 0 maps to +inf.
ExtRat vp_int(const mpz_class& m, Int p);
ExtRat vp_int(Int m, Int p);
// Same as vp_int for m != 0, without the prime check.
int vp_small(Int m, Int p);

Int digit_sum(const mpz_class& m, Int p);
Int digit_sum(Int m, Int p);

// Sum of v_p(i) for m1 < i <= m2.
Int sum_vp_range(Int m1, Int m2, Int p);

// Largest e with p^e <= x, for x >= 1.
int floor_log(Int x, Int p);

}  // namespace ghostline
