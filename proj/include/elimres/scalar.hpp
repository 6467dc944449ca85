#pragma once

// Exact coefficient fields: arbitrary-precision rationals and prime fields.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "elimres/error.hpp"

namespace elimres {

/// Canonical rational number backed by GMP. The denominator is always
/// positive and coprime to the numerator.
class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    explicit Rational(const mpz_class& n) : v_(n) {}
    Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
        if (den == 0) throw UsageError("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Accepts "n" or "n/d" with optional leading sign.
    static Rational parse(std::string_view text) {
        std::string s(text);
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(mpz_class(s));
            return Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
        } catch (const std::invalid_argument&) {
            throw UsageError("invalid rational literal '" + s + "'");
        }
    }

    const mpq_class& value() const noexcept { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const noexcept { return sgn(v_) == 0; }
    bool is_one() const noexcept { return v_ == 1; }
    int sign() const noexcept { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("division by zero");
        return Rational(mpq_class(1) / v_);
    }

    Rational pow(unsigned long e) const {
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), e);
        mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), e);
        return Rational(n, d);
    }

    std::string to_string() const { return v_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

    std::size_t hash() const {
        auto limb = [](mpz_srcptr z) -> std::size_t {
            return mpz_size(z) ? static_cast<std::size_t>(mpz_getlimbn(z, 0)) ^ (mpz_sgn(z) < 0 ? 0x9e3779b9u : 0u) : 0u;
        };
        return limb(v_.get_num_mpz_t()) * 31u + limb(v_.get_den_mpz_t());
    }

    /// Factor c such that every x/c is an integer, the integers are coprime
    /// and the first one is positive.
    static Rational normalizer(std::span<const Rational> coeffs) {
        if (coeffs.empty()) return Rational(1);
        mpz_class g = 0, l = 1;
        for (const auto& c : coeffs) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.v_.get_num_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.v_.get_den_mpz_t());
        }
        Rational r(g, l);
        return coeffs.front().sign() < 0 ? -r : r;
    }

private:
    mpq_class v_;
};

/// Element of a prime field F_p with the modulus carried along.
///
/// A value built from a plain integer has modulus 0 ("literal") and adopts
/// the modulus of whatever it is combined with. This lets generic code write
/// `F(1)` or `F(-1)` without knowing p.
class ModInt {
public:
    ModInt() = default;
    ModInt(long n) : v_(n), p_(0) {}  // NOLINT(google-explicit-constructor)
    ModInt(long n, std::uint32_t p) : p_(p) {
        if (p < 2) throw UsageError("prime field modulus must be at least 2");
        v_ = reduce(n, p);
    }

    static bool is_prime(std::uint32_t p) {
        if (p < 2) return false;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    static ModInt parse(std::string_view text, std::uint32_t p) {
        std::string s(text);
        auto slash = s.find('/');
        auto to_mod = [p](const std::string& part) {
            mpz_class z;
            try {
                z = mpz_class(part);
            } catch (const std::invalid_argument&) {
                throw UsageError("invalid integer literal '" + part + "'");
            }
            mpz_class r;
            mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
            return ModInt(static_cast<long>(r.get_ui()), p);
        };
        if (slash == std::string::npos) return to_mod(s);
        return to_mod(s.substr(0, slash)) / to_mod(s.substr(slash + 1));
    }

    std::uint32_t modulus() const noexcept { return p_; }
    /// Residue in [0, p) (or the raw literal value when p is unset).
    std::int64_t residue() const noexcept { return v_; }

    bool is_zero() const noexcept { return v_ == 0; }
    bool is_one() const noexcept { return v_ == 1; }
    int sign() const noexcept { return v_ == 0 ? 0 : 1; }

    ModInt inverse() const {
        if (is_zero()) throw std::domain_error("division by zero");
        if (p_ == 0) {
            if (v_ == 1 || v_ == -1) return *this;
            throw std::domain_error("inverse of a modulus-free literal");
        }
        // Fermat: v^(p-2)
        return pow(p_ - 2);
    }

    ModInt pow(std::uint64_t e) const {
        ModInt base = *this, acc(1, p_ ? p_ : 2);
        if (p_ == 0) {
            std::int64_t r = 1;
            for (std::uint64_t i = 0; i < e; ++i) r *= v_;
            return ModInt(r);
        }
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    std::string to_string() const { return std::to_string(v_); }

    ModInt operator-() const {
        if (p_ == 0) return ModInt(-v_);
        return ModInt(v_ == 0 ? 0 : static_cast<long>(p_ - v_), p_);
    }
    ModInt& operator+=(const ModInt& o) { return combine(o, [](auto a, auto b) { return a + b; }); }
    ModInt& operator-=(const ModInt& o) { return combine(o, [](auto a, auto b) { return a - b; }); }
    ModInt& operator*=(const ModInt& o) { return combine(o, [](auto a, auto b) { return a * b; }); }
    ModInt& operator/=(const ModInt& o) {
        if (o.is_zero()) throw std::domain_error("division by zero");
        if (p_ == 0 && o.p_ == 0) {
            if (v_ % o.v_ != 0) throw std::domain_error("inexact division of modulus-free literals");
            v_ /= o.v_;
            return *this;
        }
        std::uint32_t p = p_ ? p_ : o.p_;
        ModInt inv = ModInt(o.v_, p).inverse();
        return *this *= inv;
    }
    friend ModInt operator+(ModInt a, const ModInt& b) { return a += b; }
    friend ModInt operator-(ModInt a, const ModInt& b) { return a -= b; }
    friend ModInt operator*(ModInt a, const ModInt& b) { return a *= b; }
    friend ModInt operator/(ModInt a, const ModInt& b) { return a /= b; }
    friend bool operator==(const ModInt& a, const ModInt& b) {
        if (a.p_ == b.p_) return a.v_ == b.v_;
        std::uint32_t p = a.p_ ? a.p_ : b.p_;
        if (a.p_ && b.p_) return false;
        return reduce(a.v_, p) == reduce(b.v_, p);
    }

    std::size_t hash() const { return std::hash<std::int64_t>{}(v_); }

    /// Dividing by the first (leading) coefficient makes a polynomial monic.
    static ModInt normalizer(std::span<const ModInt> coeffs) {
        if (coeffs.empty()) return ModInt(1);
        return coeffs.front();
    }

private:
    static std::int64_t reduce(std::int64_t n, std::uint32_t p) {
        std::int64_t r = n % static_cast<std::int64_t>(p);
        return r < 0 ? r + p : r;
    }

    template <class Op>
    ModInt& combine(const ModInt& o, Op op) {
        if (p_ == 0 && o.p_ == 0) {
            v_ = op(v_, o.v_);
            return *this;
        }
        if (p_ != 0 && o.p_ != 0 && p_ != o.p_) throw UsageError("mixing elements of different prime fields");
        std::uint32_t p = p_ ? p_ : o.p_;
        std::int64_t a = reduce(v_, p), b = reduce(o.v_, p);
        v_ = reduce(op(a, b), p);
        p_ = p;
        return *this;
    }

    std::int64_t v_ = 0;
    std::uint32_t p_ = 0;
};

/// What the polynomial kernel needs from a coefficient type.
template <class F>
concept Field = requires(F a, const F& b, std::span<const F> s) {
    { F(1) };
    { a + b } -> std::convertible_to<F>;
    { a - b } -> std::convertible_to<F>;
    { a * b } -> std::convertible_to<F>;
    { a / b } -> std::convertible_to<F>;
    { -a } -> std::convertible_to<F>;
    { a == b } -> std::convertible_to<bool>;
    { b.is_zero() } -> std::convertible_to<bool>;
    { b.is_one() } -> std::convertible_to<bool>;
    { b.to_string() } -> std::convertible_to<std::string>;
    { b.hash() } -> std::convertible_to<std::size_t>;
    { F::normalizer(s) } -> std::convertible_to<F>;
};

static_assert(Field<Rational>);
static_assert(Field<ModInt>);

/// Lifts an integer into F, using `like` to pick the prime modulus.
template <Field F>
F scalar_like(long n, const F& like);

template <>
inline Rational scalar_like<Rational>(long n, const Rational&) { return Rational(n); }

template <>
inline ModInt scalar_like<ModInt>(long n, const ModInt& like) {
    return like.modulus() ? ModInt(n, like.modulus()) : ModInt(n);
}

}  // namespace elimres
