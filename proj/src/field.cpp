#include "relcell/field.hpp"

#include <ostream>

namespace relcell {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::Unsupported: return "Unsupported";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::NotUnital: return "NotUnital";
        case ErrorKind::NonIntegralMultiplicity: return "NonIntegralMultiplicity";
        case ErrorKind::InconsistentCoefficients: return "InconsistentCoefficients";
        case ErrorKind::DependsOnUV: return "DependsOnUV";
        case ErrorKind::RouteMismatch: return "RouteMismatch";
        case ErrorKind::ReciprocityFailure: return "ReciprocityFailure";
        case ErrorKind::NotPrimitive: return "NotPrimitive";
        case ErrorKind::InvalidSpec: return "InvalidSpec";
        case ErrorKind::UnsupportedCharacteristic: return "UnsupportedCharacteristic";
        case ErrorKind::SizeLimit: return "SizeLimit";
        case ErrorKind::FastpathMismatch: return "FastpathMismatch";
        case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
        case ErrorKind::Parse: return "Parse";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

bool is_prime_number(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(std::int64_t p) {
    if (p >= (std::int64_t(1) << 31) || !is_prime_number(p))
        throw Error(ErrorKind::Unsupported, "F_p needs a prime p < 2^31, got " + std::to_string(p));
    return FieldSpec(Kind::PrimeField, static_cast<std::uint32_t>(p));
}

std::string FieldSpec::to_string() const {
    return is_prime() ? "F" + std::to_string(p_) : "Q";
}

FieldSpec FieldSpec::parse(const std::string& s) {
    if (s == "Q" || s == "QQ" || s == "rationals") return rationals();
    std::string t = s;
    if (!t.empty() && (t[0] == 'F' || t[0] == 'f')) t = t.substr(1);
    if (t.rfind("p=", 0) == 0) t = t.substr(2);
    try {
        std::size_t pos = 0;
        long long p = std::stoll(t, &pos);
        if (pos == t.size()) return prime(p);
    } catch (const std::logic_error&) {
    }
    throw Error(ErrorKind::Parse, "bad field spec '" + s + "'");
}

namespace {

std::int64_t reduce(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return r < 0 ? r + p : r;
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1;
    b %= p;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

void check_same(const Scalar& a, const Scalar& b) {
    if (a.field() != b.field())
        throw Error(ErrorKind::FieldMismatch, a.field().to_string() + " vs " + b.field().to_string());
}

}  // namespace

Scalar::Scalar(FieldSpec f, std::int64_t value) : field_(f) {
    if (f.is_prime())
        v_ = reduce(value, f.p());
    else
        v_ = mpq_class(static_cast<long>(value));
}

Scalar::Scalar(FieldSpec f, const mpq_class& q) : field_(f) {
    if (!f.is_prime()) {
        mpq_class c = q;
        c.canonicalize();
        v_ = c;
        return;
    }
    mpz_class p(static_cast<unsigned long>(f.p()));
    mpz_class num = q.get_num() % p;
    mpz_class den = q.get_den() % p;
    if (num < 0) num += p;
    if (den < 0) den += p;
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "denominator divisible by p");
    std::int64_t n = num.get_si(), d = den.get_si();
    v_ = n * pow_mod(d, f.p() - 2, f.p()) % f.p();
}

Scalar Scalar::parse(FieldSpec f, const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw Error(ErrorKind::Parse, "bad scalar '" + s + "'");
    if (q.get_den() == 0) throw Error(ErrorKind::DivisionByZero, s);
    return Scalar(f, q);
}

bool Scalar::is_zero() const {
    if (field_.is_prime()) return std::get<std::int64_t>(v_) == 0;
    return sgn(std::get<mpq_class>(v_)) == 0;
}

bool Scalar::is_one() const {
    if (field_.is_prime()) return std::get<std::int64_t>(v_) == 1;
    return std::get<mpq_class>(v_) == 1;
}

std::int64_t Scalar::to_int64() const {
    if (field_.is_prime()) return std::get<std::int64_t>(v_);
    const mpq_class& q = std::get<mpq_class>(v_);
    if (q.get_den() != 1 || !q.get_num().fits_slong_p())
        throw Error(ErrorKind::Unsupported, "not a machine integer: " + q.get_str());
    return q.get_num().get_si();
}

std::string Scalar::to_string() const {
    if (field_.is_prime()) return std::to_string(std::get<std::int64_t>(v_));
    return std::get<mpq_class>(v_).get_str();
}

Scalar add(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    Scalar r = a;
    if (a.field_.is_prime()) {
        std::int64_t s = std::get<std::int64_t>(a.v_) + std::get<std::int64_t>(b.v_);
        if (s >= static_cast<std::int64_t>(a.field_.p())) s -= a.field_.p();
        r.v_ = s;
    } else {
        r.v_ = mpq_class(std::get<mpq_class>(a.v_) + std::get<mpq_class>(b.v_));
    }
    return r;
}

Scalar mul(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    Scalar r = a;
    if (a.field_.is_prime())
        r.v_ = std::get<std::int64_t>(a.v_) * std::get<std::int64_t>(b.v_) % a.field_.p();
    else
        r.v_ = mpq_class(std::get<mpq_class>(a.v_) * std::get<mpq_class>(b.v_));
    return r;
}

Scalar neg(const Scalar& a) {
    Scalar r = a;
    if (a.field_.is_prime()) {
        std::int64_t v = std::get<std::int64_t>(a.v_);
        r.v_ = v == 0 ? 0 : a.field_.p() - v;
    } else {
        r.v_ = mpq_class(-std::get<mpq_class>(a.v_));
    }
    return r;
}

Scalar inv(const Scalar& a) {
    if (a.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    Scalar r = a;
    if (a.field_.is_prime())
        r.v_ = pow_mod(std::get<std::int64_t>(a.v_), a.field_.p() - 2, a.field_.p());
    else
        r.v_ = mpq_class(1 / std::get<mpq_class>(a.v_));
    return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.field_ != b.field_) return false;
    if (a.field_.is_prime()) return std::get<std::int64_t>(a.v_) == std::get<std::int64_t>(b.v_);
    return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar factorial_mod(std::int64_t k, FieldSpec f) {
    if (k < 0) throw Error(ErrorKind::Unsupported, "negative factorial");
    if (!f.is_prime()) {
        mpz_class r;
        mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
        return Scalar(f, mpq_class(r));
    }
    if (k >= static_cast<std::int64_t>(f.p())) return Scalar::zero(f);
    std::int64_t r = 1;
    for (std::int64_t i = 2; i <= k; ++i) r = r * i % f.p();
    return Scalar(f, r);
}

Scalar binomial_mod(std::int64_t top, std::int64_t k, FieldSpec f) {
    if (k < 0) throw Error(ErrorKind::Unsupported, "negative binomial index");
    if (f.is_prime() && k >= static_cast<std::int64_t>(f.p()))
        throw Error(ErrorKind::Unsupported, "k! not invertible over " + f.to_string());
    Scalar num = Scalar::one(f);
    for (std::int64_t i = 0; i < k; ++i) num *= Scalar(f, top - i);
    return num * inv(factorial_mod(k, f));
}

}  // namespace relcell
