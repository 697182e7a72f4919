#include <doctest.h>

#include "relcell/annular.hpp"
#include "relcell/parallel.hpp"
#include "relcell/usl2.hpp"
#include "relcell/zigzag.hpp"

using namespace relcell;

namespace {

bool same_table(const AlgebraTable& a, const AlgebraTable& b) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (a.product(i, j) != b.product(i, j)) return false;
    return true;
}

}  // namespace

TEST_CASE("for_each_index rethrows") {
    CHECK_THROWS_AS(for_each_index(50, Exec::Parallel,
                                   [](std::size_t i) {
                                       if (i == 17) throw Error(ErrorKind::Internal, "x");
                                   }),
                    Error);
    std::vector<int> v(100, 0);
    for_each_index(v.size(), Exec::Parallel, [&](std::size_t i) { v[i] = static_cast<int>(i) * 2; });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i) * 2);
    CHECK(max_threads() >= 1);
}

TEST_CASE("materialized tables agree") {
    CHECK(same_table(*build_zigzag(QuiverSpec::parse("zigzag:cycL:4"), FieldSpec::rationals(), Exec::Serial).datum.alg,
                     *build_zigzag(QuiverSpec::parse("zigzag:cycL:4"), FieldSpec::rationals(), Exec::Parallel).datum.alg));
    CHECK(same_table(*build_usl2(5, Exec::Serial).datum.alg, *build_usl2(5, Exec::Parallel).datum.alg));
    CHECK(same_table(*build_annular(2, FieldSpec::rationals(), Exec::Serial).datum.alg,
                     *build_annular(2, FieldSpec::rationals(), Exec::Parallel).datum.alg));
}

TEST_CASE("verification reports agree") {
    auto u = build_usl2(3);
    VerifyOptions s, p;
    s.exec = Exec::Serial;
    p.exec = Exec::Parallel;
    CHECK(verify_cell_datum(u.datum, s).to_json() == verify_cell_datum(u.datum, p).to_json());
    auto bad = with_reversed_order(u.datum, 0);
    CHECK(verify_cell_datum(bad, s).to_json() == verify_cell_datum(bad, p).to_json());
    auto A = build_annular(2);
    CHECK(verify_cell_datum(A.datum, s).to_json() == verify_cell_datum(A.datum, p).to_json());
}

TEST_CASE("simple sets and decompositions agree") {
    auto A = build_annular(2);
    auto a = simple_set(A.datum, Exec::Serial), b = simple_set(A.datum, Exec::Parallel);
    CHECK(a.X0 == b.X0);
    CHECK(a.dims == b.dims);
    CHECK(decomposition_matrix(A.datum, a, Exec::Serial) == decomposition_matrix(A.datum, b, Exec::Parallel));
    CHECK(frobenius_gram(A, Exec::Serial) == frobenius_gram(A, Exec::Parallel));
}
