#include "ghostline/valuation.hpp"

#include <cctype>

namespace ghostline {

bool is_prime(Int p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

const mpq_class& ExtRat::value() const {
    if (inf_) throw std::domain_error("ExtRat: value of +inf");
    return q_;
}

ExtRat& ExtRat::operator+=(const ExtRat& o) {
    if (inf_) return *this;
    if (o.inf_) {
        inf_ = true;
        q_ = 0;
        return *this;
    }
    q_ += o.q_;
    return *this;
}

ExtRat operator-(const ExtRat& a, const ExtRat& b) {
    if (b.inf_) throw std::domain_error("ExtRat: subtracting +inf");
    if (a.inf_) return a;
    return ExtRat(mpq_class(a.q_ - b.q_));
}

ExtRat operator*(Int m, const ExtRat& a) {
    if (m < 0) throw std::domain_error("ExtRat: negative scalar");
    if (m == 0) return ExtRat(0);
    if (a.inf_) return a;
    return ExtRat(mpq_class(a.q_ * mpz_class(static_cast<long>(m))));
}

bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.q_ == b.q_;
}

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ && b.inf_) return std::strong_ordering::equal;
    if (a.inf_) return std::strong_ordering::greater;
    if (b.inf_) return std::strong_ordering::less;
    int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string rat_str(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(const std::string& s) {
    auto bad = [&] { return ParameterError("malformed rational '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    auto digits_ok = [](const std::string& t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
    if (num[0] == '+') num = num.substr(1);
    mpz_class d(den);
    if (d == 0) throw ParameterError("zero denominator in '" + s + "'");
    mpq_class q(mpz_class(num), d);
    q.canonicalize();
    return q;
}

std::string ExtRat::str() const { return inf_ ? "inf" : rat_str(q_); }

ExtRat ExtRat::parse(const std::string& s) {
    if (s == "inf") return infinity();
    return ExtRat(parse_rational(s));
}

static void require_prime(Int p) {
    if (!is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not prime");
}

ExtRat vp_int(const mpz_class& m, Int p) {
    require_prime(p);
    if (m == 0) return ExtRat::infinity();
    mpz_class pz(static_cast<long>(p));
    mpz_class x = abs(m);
    long e = 0;
    while (mpz_divisible_p(x.get_mpz_t(), pz.get_mpz_t())) {
        x /= pz;
        ++e;
    }
    return ExtRat(e);
}

ExtRat vp_int(Int m, Int p) {
    require_prime(p);
    if (m == 0) return ExtRat::infinity();
    return ExtRat(static_cast<long>(vp_small(m, p)));
}

int vp_small(Int m, Int p) {
    int e = 0;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    return e;
}

Int digit_sum(const mpz_class& m, Int p) {
    require_prime(p);
    if (m < 0) throw ParameterError("digit_sum of a negative integer");
    mpz_class x = m, pz(static_cast<long>(p)), r;
    Int s = 0;
    while (x > 0) {
        mpz_fdiv_qr(x.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t());
        s += r.get_si();
    }
    return s;
}

Int digit_sum(Int m, Int p) {
    if (m < 0) throw ParameterError("digit_sum of a negative integer");
    Int s = 0;
    while (m > 0) {
        s += m % p;
        m /= p;
    }
    return s;
}

Int sum_vp_range(Int m1, Int m2, Int p) {
    require_prime(p);
    if (m1 < 0 || m2 < 0) throw ParameterError("sum_vp_range: negative bound");
    if (m1 >= m2) throw ParameterError("sum_vp_range: need m1 < m2");
    return ((m2 - digit_sum(m2, p)) - (m1 - digit_sum(m1, p))) / (p - 1);
}

int floor_log(Int x, Int p) {
    int e = 0;
    Int pe = 1;
    while (pe <= x / p) {
        pe *= p;
        ++e;
    }
    return e;
}

}  // namespace ghostline
