#include <doctest.h>

#include <cstdlib>

#include "relcell/family.hpp"

using namespace relcell;

namespace {

ErrorKind kind_of(const std::string& spec, std::size_t max_dim = kDefaultMaxDim) {
    try {
        build_family(spec, max_dim);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("max dim precedence") {
    unsetenv("RELCELL_MAX_DIM");
    CHECK(resolve_max_dim(std::nullopt) == kDefaultMaxDim);
    setenv("RELCELL_MAX_DIM", "50", 1);
    CHECK(resolve_max_dim(std::nullopt) == 50);
    CHECK(resolve_max_dim(300) == 300);
    setenv("RELCELL_MAX_DIM", "lots", 1);
    CHECK_THROWS_AS(resolve_max_dim(std::nullopt), Error);
    unsetenv("RELCELL_MAX_DIM");
}

TEST_CASE("family specs") {
    CHECK(build_family("zigzag:A:3").kind == FamilyKind::Zigzag);
    CHECK(build_family("zigzag:cycS:3:alt").datum().E.size() == 3);
    CHECK(build_family("usl2:p=3").datum().alg->dim() == 27);
    CHECK(build_family("annular:n=1").datum().alg->dim() == 8);
    CHECK(kind_of("zigzag:A:2") == ErrorKind::InvalidSpec);
    CHECK(kind_of("zigzag:A:3:alt") == ErrorKind::InvalidSpec);
    CHECK(kind_of("usl2:p=2") == ErrorKind::UnsupportedCharacteristic);
    CHECK(kind_of("usl2:q=3") == ErrorKind::InvalidSpec);
    CHECK(kind_of("usl2:p=3x") == ErrorKind::InvalidSpec);
    CHECK(kind_of("klein:4") == ErrorKind::InvalidSpec);
    CHECK(kind_of("usl2:p=5", 100) == ErrorKind::SizeLimit);
    CHECK(kind_of("annular:n=2", 100) == ErrorKind::SizeLimit);
    CHECK(kind_of("zigzag:cycL:5", 100) == ErrorKind::SizeLimit);
}

TEST_CASE("format and parse round trip") {
    for (auto spec : {"zigzag:A:3", "zigzag:cycL:3", "usl2:p=3", "annular:n=1", "annular:n=2"}) {
        auto fam = build_family(spec);
        const auto& alg = *fam.datum().alg;
        for (std::size_t i = 0; i < alg.dim(); ++i) {
            auto b = Element::basis(alg.field(), i);
            CHECK_MESSAGE(fam.parse(fam.format(b)) == b, spec << " " << fam.format(b));
        }
    }
}

TEST_CASE("formatting sums and scalars") {
    auto fam = build_family("usl2:p=3");
    auto x = fam.parse("E F");
    CHECK(fam.format(x).find("F^0 1_") != std::string::npos);
    CHECK(fam.format(Element(x.field())) == "0");
    auto z = build_family("zigzag:A:3");
    CHECK(z.parse("(1|2|3)").is_zero());
}
