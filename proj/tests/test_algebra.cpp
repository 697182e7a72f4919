#include <doctest.h>

#include "relcell/algebra.hpp"

using namespace relcell;

namespace {

// 2x2 matrix units E_ij, index 2*i+j, star = transpose.
AlgebraTable matrix_units(FieldSpec f, Exec ex = Exec::Serial) {
    std::vector<BasisLabel> labels;
    std::vector<std::size_t> st;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            labels.push_back({"M", std::to_string(i), std::to_string(j)});
            st.push_back(2 * j + i);
        }
    ProductFn fn = [f](std::size_t a, std::size_t b) {
        SparseVec v;
        if (a % 2 == b / 2) v.emplace_back(2 * (a / 2) + b % 2, Scalar::one(f));
        return v;
    };
    return AlgebraTable(f, labels, st, fn, ex);
}

// K[x]/(x^2) with basis 1, x.
AlgebraTable dual_numbers(FieldSpec f) {
    std::vector<BasisLabel> labels{{"a", "0", "0"}, {"a", "0", "1"}};
    std::vector<SparseVec> t(4);
    t[0] = {{0, Scalar::one(f)}};
    t[1] = {{1, Scalar::one(f)}};
    t[2] = {{1, Scalar::one(f)}};
    return AlgebraTable::from_table(f, labels, {0, 1}, t);
}

}  // namespace

TEST_CASE("matrix units multiply and involve") {
    auto f = FieldSpec::rationals();
    auto A = matrix_units(f);
    auto e12 = Element::basis(f, 1), e21 = Element::basis(f, 2);
    CHECK(multiply(e12, e21, A) == Element::basis(f, 0));
    CHECK(multiply(e21, e21, A).is_zero());
    CHECK(star(e12, A) == e21);
    CHECK(is_idempotent(Element::basis(f, 3), A));
    auto one = unit_element(A, {Element::basis(f, 0), Element::basis(f, 3)});
    CHECK(one.size() == 2);
    CHECK_THROWS_AS(unit_element(A, {Element::basis(f, 0)}), Error);
    CHECK(A.index_of("M", "1", "0") == 2);
    CHECK_THROWS_AS(A.index_of("M", "2", "0"), Error);
}

TEST_CASE("serial and parallel materialization agree") {
    auto f = FieldSpec::prime(5);
    auto a = matrix_units(f, Exec::Serial), b = matrix_units(f, Exec::Parallel);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(a.product(i, j) == b.product(i, j));
}

TEST_CASE("json round trip") {
    auto f = FieldSpec::prime(3);
    auto A = matrix_units(f);
    auto B = AlgebraTable::from_json(A.to_json());
    CHECK(B.dim() == 4);
    CHECK(B.field() == f);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(B.star(i) == A.star(i));
        for (std::size_t j = 0; j < 4; ++j) CHECK(B.product(i, j) == A.product(i, j));
    }
    CHECK_THROWS_AS(AlgebraTable::from_json(nlohmann::json::parse(R"({"field":"Q"})")), Error);
}

TEST_CASE("left ideals and composition factors") {
    auto f = FieldSpec::rationals();
    auto A = matrix_units(f);
    auto P = left_ideal_module(A, Element::basis(f, 0));
    CHECK(P.dim == 2);
    CHECK(respects_multiplication(P, A));
    // simple and projective: End = K
    CHECK(hom_space(P, P, A).size() == 1);
    auto mult = composition_multiplicities(P, {P}, {1}, A);
    CHECK(mult == std::vector<std::int64_t>{1});
    auto R = left_ideal_module(A, unit_element(A, {Element::basis(f, 0), Element::basis(f, 3)}));
    CHECK(composition_multiplicities(R, {P}, {1}, A) == std::vector<std::int64_t>{2});
}

TEST_CASE("dual numbers: radical and multiplicity two") {
    auto f = FieldSpec::rationals();
    auto A = dual_numbers(f);
    auto R = left_ideal_module(A, Element::basis(f, 0));
    CHECK(R.dim == 2);
    // the trivial module x -> 0
    RepModule L{f, 1, {Matrix::from_ints(f, {{1}}), Matrix::from_ints(f, {{0}})}};
    CHECK(respects_multiplication(L, A));
    auto rad = radical_of_module(R, {L}, A);
    CHECK(rad.cols() == 1);
    CHECK(composition_multiplicities(R, {L}, {1}, A) == std::vector<std::int64_t>{2});
    CHECK(hom_space(R, R, A).size() == 2);
}
