#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <climits>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

namespace eqh {

// Signed integer of unbounded size. Values that fit in int64 stay inline;
// anything larger is promoted to a GMP integer and demoted again when it shrinks.
class Integer {
public:
    Integer() = default;
    Integer(int v) : s_(v) {}
    Integer(long v) : s_(v) {}
    Integer(long long v) : s_(static_cast<int64_t>(v)) {}
    explicit Integer(const mpz_class& v) { assign(v); }
    explicit Integer(const std::string& text);

    bool is_small() const { return !b_; }
    int64_t small() const { return s_; }
    mpz_class to_mpz() const;
    // Throws std::overflow_error if the value does not fit.
    int64_t to_int64() const;
    std::string str() const;

    bool is_zero() const { return !b_ && s_ == 0; }
    int sign() const;
    bool is_unit() const { return !b_ && (s_ == 1 || s_ == -1); }

    Integer operator-() const {
        if (!b_ && s_ != INT64_MIN) return Integer(static_cast<long long>(-s_));
        return negate_slow();
    }
    Integer& operator+=(const Integer& o) {
        int64_t r;
        if (!b_ && !o.b_ && !__builtin_add_overflow(s_, o.s_, &r)) {
            s_ = r;
            return *this;
        }
        return add_slow(o);
    }
    Integer& operator-=(const Integer& o) {
        int64_t r;
        if (!b_ && !o.b_ && !__builtin_sub_overflow(s_, o.s_, &r)) {
            s_ = r;
            return *this;
        }
        return sub_slow(o);
    }
    Integer& operator*=(const Integer& o) {
        int64_t r;
        if (!b_ && !o.b_ && !__builtin_mul_overflow(s_, o.s_, &r)) {
            s_ = r;
            return *this;
        }
        return mul_slow(o);
    }
    // Truncating division and remainder, as for built-in integers.
    Integer& operator/=(const Integer& o);
    Integer& operator%=(const Integer& o);

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
    friend Integer operator/(Integer a, const Integer& b) { return a /= b; }
    friend Integer operator%(Integer a, const Integer& b) { return a %= b; }

    friend int compare(const Integer& a, const Integer& b) {
        if (!a.b_ && !b.b_) return (a.s_ > b.s_) - (a.s_ < b.s_);
        return compare_slow(a, b);
    }
    friend bool operator==(const Integer& a, const Integer& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Integer& a, const Integer& b) { return compare(a, b) != 0; }
    friend bool operator<(const Integer& a, const Integer& b) { return compare(a, b) < 0; }
    friend bool operator>(const Integer& a, const Integer& b) { return compare(a, b) > 0; }
    friend bool operator<=(const Integer& a, const Integer& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const Integer& a, const Integer& b) { return compare(a, b) >= 0; }

    size_t hash() const;

private:
    void assign(const mpz_class& v);
    Integer negate_slow() const;
    Integer& add_slow(const Integer& o);
    Integer& sub_slow(const Integer& o);
    Integer& mul_slow(const Integer& o);
    static int compare_slow(const Integer& a, const Integer& b);

    int64_t s_ = 0;
    std::optional<mpz_class> b_;
};

Integer abs(const Integer& a);
Integer gcd(const Integer& a, const Integer& b);
// Floor-mod into [0, |m|) for m != 0.
Integer mod_floor(const Integer& a, const Integer& m);
// Floor division.
Integer div_floor(const Integer& a, const Integer& m);
// Extended gcd: g = a*x + b*y, g >= 0.
Integer xgcd(const Integer& a, const Integer& b, Integer& x, Integer& y);

std::ostream& operator<<(std::ostream& os, const Integer& v);

}  // namespace eqh

template <>
struct std::hash<eqh::Integer> {
    size_t operator()(const eqh::Integer& v) const { return v.hash(); }
};
