#include <doctest.h>

#include <set>

#include "relcell/zigzag.hpp"

using namespace relcell;

namespace {

const Zigzag& A3() {
    static Zigzag z = build_zigzag(QuiverSpec::parse("zigzag:A:3"));
    return z;
}

const Zigzag& cycS3() {
    static Zigzag z = build_zigzag(QuiverSpec::parse("zigzag:cycS:3"));
    return z;
}

}  // namespace

TEST_CASE("axioms hold on the line") {
    auto rep = verify_cell_datum(A3().datum);
    CHECK(rep.all_pass());
    std::set<std::string> names;
    for (const auto& a : rep.axioms) names.insert(a.axiom);
    for (auto n : {"a:bijection", "b:star-labels", "b:anti-involution", "c:idempotents", "c:orders",
                   "c:idem-props-1", "c:idem-props-2", "d:mult-left", "d:mult-right"})
        CHECK_MESSAGE(names.count(n) == 1, n);
    auto j = rep.to_json();
    CHECK(j.is_array());
}

TEST_CASE("reversing an order breaks the datum and names a witness") {
    for (const Zigzag* z : {&A3(), &cycS3()}) {
        for (std::size_t e = 0; e < z->datum.E.size(); ++e) {
            auto bad = with_reversed_order(z->datum, e);
            auto rep = verify_cell_datum(bad);
            if (bad.hasse(e).empty()) continue;  // nothing to reverse
            CHECK_FALSE(rep.all_pass());
            bool witnessed = false;
            for (const auto& a : rep.axioms)
                if (!a.pass && !a.witness.empty()) witnessed = true;
            CHECK(witnessed);
        }
    }
}

TEST_CASE("a non-bijective C is reported") {
    CellDatum d = A3().datum;
    REQUIRE(d.C.size() >= 2);
    d.C[0][0][0] = d.C[1][0][0];
    auto rep = verify_cell_datum(d);
    REQUIRE(rep.find("a:bijection") != nullptr);
    CHECK_FALSE(rep.find("a:bijection")->pass);
    CHECK_THROWS_AS(basis_coords(d), Error);
}

TEST_CASE("cell modules are modules and Gram matrices are symmetric") {
    for (const Zigzag* z : {&A3(), &cycS3()}) {
        const auto& d = z->datum;
        for (std::size_t l = 0; l < d.X.size(); ++l) {
            auto m = cell_module(d, l);
            CHECK(m.dim == d.M[l].size());
            CHECK(respects_multiplication(m, *d.alg));
            auto g = gram_matrix(d, l);
            CHECK(g == transpose(g));
        }
    }
}

TEST_CASE("serial and parallel module actions agree") {
    const auto& d = cycS3().datum;
    for (std::size_t l = 0; l < d.X.size(); ++l) {
        auto a = cell_module(d, l, Exec::Serial);
        auto b = cell_module(d, l, Exec::Parallel);
        REQUIRE(a.action.size() == b.action.size());
        for (std::size_t k = 0; k < a.action.size(); ++k) CHECK(a.action[k] == b.action[k]);
    }
}

TEST_CASE("simples, decomposition and reciprocity on the line") {
    const auto& d = A3().datum;
    auto ss = simple_set(d);
    CHECK(ss.X0.size() == 3);
    for (auto e : ss.end_dims) CHECK(e == 1);
    auto D = decomposition_matrix(d, ss);
    CHECK(D.rows() == d.X.size());
    CHECK(D.cols() == 3);
    auto cr = cartan_matrix(d, ss, D);
    CHECK(cr.C == matmul(transpose(D), D));
    CHECK(cr.psd);
    CHECK(cr.det == Scalar(FieldSpec::rationals(), 4));
    CHECK_FALSE(is_semisimple(ss));

    std::set<std::size_t> hit;
    for (const auto& e : d.primitives) hit.insert(match_primitive_idempotent(d, ss, e));
    CHECK(hit.size() == d.primitives.size());
}

TEST_CASE("core subalgebras are again cellular") {
    const auto& d = cycS3().datum;
    for (std::size_t e = 0; e < d.E.size(); ++e) {
        auto core = core_subalgebra(d, e);
        CHECK(core.alg->dim() < d.alg->dim());
        CHECK(verify_cell_datum(core).all_pass());
    }
}

TEST_CASE("analysis report") {
    auto j = analysis_report(A3().datum);
    for (auto k : {"axioms", "X0", "simple_dims", "D", "C", "reciprocity_ok", "semisimple"})
        CHECK_MESSAGE(j.contains(k), k);
    CHECK(j["reciprocity_ok"].get<bool>());
    CHECK_FALSE(j["semisimple"].get<bool>());
}

TEST_CASE("sampled checks agree with exhaustive ones") {
    VerifyOptions sampled;
    sampled.exhaustive_dim = 0;
    sampled.samples = 500;
    CHECK(verify_cell_datum(cycS3().datum, sampled).all_pass());
    auto bad = with_reversed_order(cycS3().datum, 0);
    VerifyOptions full;
    CHECK(verify_cell_datum(bad, full).all_pass() == verify_cell_datum(bad, sampled).all_pass());
}
