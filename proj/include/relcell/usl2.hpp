#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relcell/cell.hpp"

namespace relcell {

// Dense elements of u(sl2) over F_p in the PBW basis F^x H^y E^z, index (x*p+y)*p+z.
// Multiplication is built from right multiplication by the generators only, so
// it is independent of the closed product formula used for the cell basis.
class PBWAlgebra {
public:
    explicit PBWAlgebra(int p);

    int p() const { return p_; }
    FieldSpec field() const { return f_; }
    std::size_t dim() const { return static_cast<std::size_t>(p_) * p_ * p_; }
    std::size_t index(int x, int y, int z) const { return (static_cast<std::size_t>(x) * p_ + y) * p_ + z; }

    Vector zero() const { return Vector(dim(), Scalar::zero(f_)); }
    Vector one() const { return monomial(0, 0, 0); }
    Vector monomial(int x, int y, int z) const;
    Vector E() const { return monomial(0, 0, 1); }
    Vector F() const { return monomial(1, 0, 0); }
    Vector H() const { return monomial(0, 1, 0); }
    // 1_lambda = -prod_{mu != lambda} (H - mu)
    Vector weight_idempotent(int lambda) const;
    // F^S 1_lambda E^T
    Vector cell_element(int lambda, int S, int T) const;

    Vector times_E(const Vector& x) const;
    Vector times_F(const Vector& x) const;
    Vector times_H(const Vector& x) const;
    Vector multiply(const Vector& a, const Vector& b) const;
    Vector add(const Vector& a, const Vector& b) const;
    Vector scale(const Vector& a, const Scalar& s) const;

    // Coordinates in the cell basis, index (lambda*p+S)*p+T.
    Vector to_cell(const Vector& x) const;
    Vector from_cell(const Vector& c) const;

private:
    using Raw = std::vector<std::int64_t>;
    Raw raw(const Vector& v) const;
    Vector cooked(const Raw& r) const;
    Raw raw_times_E(const Raw& x) const;
    Raw raw_times_F(const Raw& x) const;
    Raw raw_times_H(const Raw& x) const;
    Raw raw_multiply(const Raw& a, const Raw& b) const;
    // Polynomials in H with H^p = H, coefficient k of H^k.
    Raw poly_mul(const Raw& a, const Raw& b) const;
    Raw idempotent_poly(int lambda) const;

    int p_;
    FieldSpec f_;
};

struct USl2 {
    int p = 3;
    CellDatum datum;
    Element E, F, H;
    std::vector<Element> idempotents;  // 1_lambda

    std::size_t index(int lambda, int S, int T) const {
        return (static_cast<std::size_t>(lambda) * p + S) * p + T;
    }
};

// Throws UnsupportedCharacteristic for p = 2, InvalidSpec for non-primes.
USl2 build_usl2(int p, Exec ex = Exec::Parallel);

// Closed-form product of cell basis elements.
SparseVec usl2_product(int p, int lambda, int S, int T, int mu, int U, int V);

// A word in E, F, H powers and weight idempotents, e.g. "E^2 F 1_1 H".
struct Letter {
    char kind;  // 'E', 'F', 'H' or '1'
    int value;  // exponent, or the weight for '1'
};
std::vector<Letter> parse_word(const std::string& s);
// Product of the word, expressed in the cell basis.
Element normal_order(const USl2& u, const std::vector<Letter>& word);

struct ChiZeroReport {
    std::size_t products = 0;
    std::size_t truncated_terms = 0;  // terms dropped because an exponent reached p
    bool labels_in_X = true;
    bool E_pow_p_zero = true;
    bool F_pow_p_zero = true;
    bool truncation_matches_pbw = true;
    bool ok() const { return labels_in_X && E_pow_p_zero && F_pow_p_zero && truncation_matches_pbw; }
};
ChiZeroReport verify_chi_zero_boundary(const USl2& u);

}  // namespace relcell
