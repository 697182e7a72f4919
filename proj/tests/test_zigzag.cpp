#include <doctest.h>

#include "relcell/zigzag.hpp"

using namespace relcell;

namespace {

// Independent oracle: c_ij = dim e_i R e_j, counted from the path basis.
Matrix cartan_by_paths(const Zigzag& z) {
    const int n = z.spec.n;
    Matrix C(FieldSpec::rationals(), n, n);
    std::vector<std::vector<std::int64_t>> c(n, std::vector<std::int64_t>(n, 0));
    for (const auto& p : z.paths) c[z.rw.end(p) - 1][p.start - 1] += 1;
    return Matrix::from_ints(FieldSpec::rationals(), c);
}

Matrix cartan_of(const CellDatum& d) {
    auto ss = simple_set(d);
    auto D = decomposition_matrix(d, ss);
    return cartan_matrix(d, ss, D).C;
}

}  // namespace

TEST_CASE("spec parsing and validation") {
    CHECK(QuiverSpec::parse("zigzag:A:3").variant == QuiverVariant::LineA);
    CHECK(QuiverSpec::parse("zigzag:cycL:5").n == 5);
    CHECK_THROWS_AS(QuiverSpec::parse("zigzag:A:2"), Error);
    CHECK_THROWS_AS(QuiverSpec::parse("zigzag:cycS:2"), Error);
    CHECK_THROWS_AS(QuiverSpec::parse("zigzag:B:3"), Error);
    CHECK_THROWS_AS(QuiverSpec::parse("zigzag:A:x"), Error);
    CHECK(QuiverSpec::parse("zigzag:cycS:4").to_string() == "zigzag:cycS:4");
}

TEST_CASE("rewriting is confluent on all short words") {
    for (auto s : {"zigzag:A:3", "zigzag:A:4", "zigzag:cycS:3", "zigzag:cycS:4", "zigzag:cycL:3"}) {
        ZigzagRewriter rw(QuiverSpec::parse(s));
        const int n = rw.spec().n;
        for (int v = 1; v <= n; ++v)
            for (int len = 0; len <= 5; ++len)
                for (int mask = 0; mask < (1 << len); ++mask) {
                    Path p{v, ""};
                    for (int k = 0; k < len; ++k) p.steps += (mask >> k) & 1 ? '+' : '-';
                    if (!rw.valid(p)) continue;
                    auto nf = rw.irreducible_descendants(p);
                    CHECK_MESSAGE(nf.size() == 1, s << " " << rw.format(p));
                }
    }
}

TEST_CASE("path parsing and formatting") {
    ZigzagRewriter rw(QuiverSpec::parse("zigzag:cycS:3"));
    CHECK(rw.format(rw.parse("(1|2|1)")) == "(1|2|1)");
    CHECK(rw.format(rw.parse("e2")) == "e2");
    CHECK(rw.parse("(3|1)").steps == "+");
    CHECK(rw.parse("(1|3|1)").steps == "-+");
    ZigzagRewriter line(QuiverSpec::parse("zigzag:A:3"));
    CHECK_THROWS_AS(line.parse("(1|3)"), Error);
    CHECK_THROWS_AS(line.parse("(1|2"), Error);
}

TEST_CASE("dimensions") {
    CHECK(build_zigzag(QuiverSpec::parse("zigzag:A:3")).paths.size() == 10);
    CHECK(build_zigzag(QuiverSpec::parse("zigzag:A:4")).paths.size() == 14);
    CHECK(build_zigzag(QuiverSpec::parse("zigzag:cycS:3")).paths.size() == 12);
    CHECK(build_zigzag(QuiverSpec::parse("zigzag:cycL:3")).paths.size() == 27);
    CHECK(build_zigzag(QuiverSpec::parse("zigzag:cycL:4")).paths.size() == 64);
}

TEST_CASE("engine Cartan matrix equals the path-count oracle") {
    for (auto s : {"zigzag:A:3", "zigzag:A:4", "zigzag:A:5", "zigzag:cycS:3", "zigzag:cycS:4", "zigzag:cycS:5",
                   "zigzag:cycL:3", "zigzag:cycL:4"}) {
        auto z = build_zigzag(QuiverSpec::parse(s));
        auto rep = verify_cell_datum(z.datum);
        REQUIRE_MESSAGE(rep.all_pass(), s);
        CHECK_MESSAGE(equal_up_to_simultaneous_permutation(cartan_of(z.datum), cartan_by_paths(z)), s);
    }
}

TEST_CASE("Cartan matrices for n = 3") {
    auto q = FieldSpec::rationals();
    auto A3 = build_zigzag(QuiverSpec::parse("zigzag:A:3"));
    CHECK(equal_up_to_simultaneous_permutation(cartan_of(A3.datum),
                                               Matrix::from_ints(q, {{2, 1, 0}, {1, 2, 1}, {0, 1, 2}})));
    auto R = build_zigzag(QuiverSpec::parse("zigzag:cycS:3"));
    CHECK(equal_up_to_simultaneous_permutation(cartan_of(R.datum),
                                               Matrix::from_ints(q, {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}})));
    auto Rp = build_zigzag(QuiverSpec::parse("zigzag:cycL:3"));
    CHECK(cartan_of(Rp.datum) == Matrix::from_ints(q, {{3, 3, 3}, {3, 3, 3}, {3, 3, 3}}));
}

TEST_CASE("the line with one vertex is the ground field") {
    auto z = build_zigzag(QuiverSpec::parse("zigzag:A:1"));
    CHECK(z.paths.size() == 1);
    auto ss = simple_set(z.datum);
    CHECK(is_semisimple(ss));
}

TEST_CASE("alternate idempotent datum") {
    auto z = alternate_idempotent_datum();
    CHECK(z.datum.E.size() == 3);
    CHECK(verify_cell_datum(z.datum).all_pass());
    auto q = FieldSpec::rationals();
    CHECK(equal_up_to_simultaneous_permutation(cartan_of(z.datum),
                                               Matrix::from_ints(q, {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}})));
}

TEST_CASE("multiplying paths") {
    auto z = build_zigzag(QuiverSpec::parse("zigzag:A:3"));
    auto x = multiply_paths(z, z.rw.parse("(1|2)"), z.rw.parse("(2|1)"));
    REQUIRE(x.size() == 1);
    CHECK(z.rw.format(z.paths[x.terms().begin()->first]) == "(1|2|1)");
    // (2|1|2) = (2|3|2) in C(A3)
    auto y = multiply_paths(z, z.rw.parse("(2|1)"), z.rw.parse("(1|2)"));
    auto w = multiply_paths(z, z.rw.parse("(2|3)"), z.rw.parse("(3|2)"));
    CHECK(y == w);
    CHECK(multiply_paths(z, z.rw.parse("(1|2)"), z.rw.parse("(2|3)")).is_zero());
}
