#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "relcell/error.hpp"

namespace relcell {

// Ground field: the rationals or F_p with p < 2^31.
class FieldSpec {
public:
    enum class Kind { Rationals, PrimeField };

    static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }
    static FieldSpec prime(std::int64_t p);

    Kind kind() const { return kind_; }
    bool is_prime() const { return kind_ == Kind::PrimeField; }
    std::uint32_t p() const { return p_; }
    // 0 for the rationals.
    std::uint32_t characteristic() const { return p_; }

    std::string to_string() const;
    static FieldSpec parse(const std::string& s);

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_;
    }
    friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return !(a == b); }

private:
    FieldSpec(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
    Kind kind_ = Kind::Rationals;
    std::uint32_t p_ = 0;
};

bool is_prime_number(std::int64_t n);

// Canonical exact scalar. Rationals are reduced with positive denominator,
// residues live in [0,p).
class Scalar {
public:
    Scalar() : field_(FieldSpec::rationals()), v_(mpq_class(0)) {}
    Scalar(FieldSpec f, std::int64_t value);
    Scalar(FieldSpec f, const mpq_class& q);

    static Scalar zero(FieldSpec f) { return Scalar(f, 0); }
    static Scalar one(FieldSpec f) { return Scalar(f, 1); }
    static Scalar parse(FieldSpec f, const std::string& s);

    const FieldSpec& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    // Residue for F_p, numerator over denominator for the rationals.
    std::int64_t residue() const { return std::get<std::int64_t>(v_); }
    const mpq_class& rational() const { return std::get<mpq_class>(v_); }
    // Exact integer value; throws Unsupported for non-integral rationals.
    std::int64_t to_int64() const;

    std::string to_string() const;

    friend Scalar add(const Scalar& a, const Scalar& b);
    friend Scalar mul(const Scalar& a, const Scalar& b);
    friend Scalar neg(const Scalar& a);
    friend Scalar inv(const Scalar& a);

    Scalar& operator+=(const Scalar& o) { return *this = add(*this, o); }
    Scalar& operator-=(const Scalar& o) { return *this = add(*this, neg(o)); }
    Scalar& operator*=(const Scalar& o) { return *this = mul(*this, o); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return add(a, b); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return add(a, neg(b)); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) { return mul(a, b); }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return mul(a, inv(b)); }
    friend Scalar operator-(const Scalar& a) { return neg(a); }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

private:
    FieldSpec field_;
    std::variant<std::int64_t, mpq_class> v_;
};

Scalar add(const Scalar& a, const Scalar& b);
Scalar mul(const Scalar& a, const Scalar& b);
Scalar neg(const Scalar& a);
Scalar inv(const Scalar& a);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

Scalar factorial_mod(std::int64_t k, FieldSpec f);
// Generalized binomial prod_{i<k}(top-i)/k!. Over F_p requires k < p.
Scalar binomial_mod(std::int64_t top, std::int64_t k, FieldSpec f);

}  // namespace relcell
