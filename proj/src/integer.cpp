#include "eqh/integer.hpp"

#include <limits>
#include <stdexcept>

namespace eqh {

namespace {

bool fits_int64(const mpz_class& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

}  // namespace

Integer::Integer(const std::string& text) {
    mpz_class v;
    if (v.set_str(text, 10) != 0) throw std::invalid_argument("not an integer: " + text);
    assign(v);
}

void Integer::assign(const mpz_class& v) {
    static_assert(sizeof(long) == sizeof(int64_t));
    if (fits_int64(v)) {
        s_ = v.get_si();
        b_.reset();
    } else {
        b_ = v;
        s_ = 0;
    }
}

mpz_class Integer::to_mpz() const {
    if (b_) return *b_;
    return mpz_class(static_cast<long>(s_));
}

int64_t Integer::to_int64() const {
    if (b_) throw std::overflow_error("integer does not fit in 64 bits");
    return s_;
}

std::string Integer::str() const {
    if (b_) return b_->get_str();
    return std::to_string(s_);
}

int Integer::sign() const {
    if (b_) return sgn(*b_);
    return (s_ > 0) - (s_ < 0);
}

Integer Integer::negate_slow() const {
    Integer r;
    r.assign(-to_mpz());
    return r;
}

Integer& Integer::add_slow(const Integer& o) {
    assign(to_mpz() + o.to_mpz());
    return *this;
}

Integer& Integer::sub_slow(const Integer& o) {
    assign(to_mpz() - o.to_mpz());
    return *this;
}

Integer& Integer::mul_slow(const Integer& o) {
    assign(to_mpz() * o.to_mpz());
    return *this;
}

Integer& Integer::operator/=(const Integer& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (!b_ && !o.b_ && !(s_ == std::numeric_limits<int64_t>::min() && o.s_ == -1)) {
        s_ /= o.s_;
        return *this;
    }
    mpz_class q;
    mpz_class a = to_mpz(), b = o.to_mpz();
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    assign(q);
    return *this;
}

Integer& Integer::operator%=(const Integer& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (!b_ && !o.b_) {
        if (o.s_ == -1) s_ = 0;
        else s_ %= o.s_;
        return *this;
    }
    mpz_class r;
    mpz_class a = to_mpz(), b = o.to_mpz();
    mpz_tdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    assign(r);
    return *this;
}

int Integer::compare_slow(const Integer& a, const Integer& b) {
    int c = cmp(a.to_mpz(), b.to_mpz());
    return (c > 0) - (c < 0);
}

size_t Integer::hash() const {
    if (!b_) return std::hash<int64_t>{}(s_);
    return std::hash<std::string>{}(b_->get_str(16));
}

Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

Integer gcd(const Integer& a, const Integer& b) {
    if (a.is_small() && b.is_small()) {
        uint64_t x = a.small() < 0 ? 0 - static_cast<uint64_t>(a.small()) : a.small();
        uint64_t y = b.small() < 0 ? 0 - static_cast<uint64_t>(b.small()) : b.small();
        while (y) {
            uint64_t t = x % y;
            x = y;
            y = t;
        }
        if (x <= static_cast<uint64_t>(std::numeric_limits<int64_t>::max()))
            return Integer(static_cast<long long>(x));
    }
    mpz_class g;
    mpz_class x = a.to_mpz(), y = b.to_mpz();
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return Integer(g);
}

Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r.sign() < 0) r += abs(m);
    return r;
}

Integer div_floor(const Integer& a, const Integer& m) {
    Integer q = a / m;
    if ((a % m).sign() != 0 && ((a.sign() < 0) != (m.sign() < 0))) q -= 1;
    return q;
}

Integer xgcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
    Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (!r1.is_zero()) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        Integer s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        Integer t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0.sign() < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    x = s0;
    y = t0;
    return r0;
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.str(); }

}  // namespace eqh
