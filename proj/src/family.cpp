#include "relcell/family.hpp"

#include <cstdlib>

namespace relcell {

std::size_t resolve_max_dim(std::optional<std::size_t> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("RELCELL_MAX_DIM")) {
        try {
            std::size_t pos = 0;
            long long v = std::stoll(env, &pos);
            if (pos == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw Error(ErrorKind::InvalidSpec, std::string("RELCELL_MAX_DIM is not a positive integer: ") + env);
    }
    return kDefaultMaxDim;
}

namespace {

int parse_param(const std::string& spec, const std::string& prefix) {
    auto k = spec.find(':');
    std::string rest = spec.substr(k + 1);
    if (rest.rfind(prefix, 0) != 0) throw Error(ErrorKind::InvalidSpec, "expected '" + prefix + "' in '" + spec + "'");
    rest = rest.substr(prefix.size());
    try {
        std::size_t pos = 0;
        int v = std::stoi(rest, &pos);
        if (pos != rest.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::InvalidSpec, "bad number in '" + spec + "'");
    }
}

void guard(const std::string& spec, std::size_t dim, std::size_t max_dim) {
    if (dim > max_dim)
        throw Error(ErrorKind::SizeLimit, spec + " has dimension " + std::to_string(dim) + " > limit " +
                                              std::to_string(max_dim));
}

}  // namespace

const CellDatum& Family::datum() const {
    switch (kind) {
        case FamilyKind::Zigzag: return zigzag->datum;
        case FamilyKind::USl2: return usl2->datum;
        case FamilyKind::Annular: return annular->datum;
    }
    throw Error(ErrorKind::Internal, "unknown family");
}

std::string Family::format_basis(std::size_t i) const {
    switch (kind) {
        case FamilyKind::Zigzag: return zigzag->rw.format(zigzag->paths.at(i));
        case FamilyKind::USl2: {
            const auto& l = usl2->datum.alg->label(i);
            return "F^" + l.S + " 1_" + l.lambda + " E^" + l.T;
        }
        case FamilyKind::Annular: return annular->format(i);
    }
    throw Error(ErrorKind::Internal, "unknown family");
}

std::string Family::format(const Element& x) const {
    if (x.is_zero()) return "0";
    std::string s;
    for (const auto& [i, c] : x.terms()) {
        if (!s.empty()) s += " + ";
        if (!c.is_one()) s += c.to_string() + "*";
        std::string b = format_basis(i);
        s += (!c.is_one() && kind == FamilyKind::USl2) ? "(" + b + ")" : b;
    }
    return s;
}

Element Family::parse(const std::string& s) const {
    const auto& alg = *datum().alg;
    switch (kind) {
        case FamilyKind::Zigzag: {
            auto p = zigzag->rw.normal_form(zigzag->rw.parse(s));
            if (!p) return Element(alg.field());
            return Element::basis(alg.field(), zigzag->index_of(*p));
        }
        case FamilyKind::USl2: return normal_order(*usl2, parse_word(s));
        case FamilyKind::Annular: return Element::basis(alg.field(), annular->parse(s));
    }
    throw Error(ErrorKind::Internal, "unknown family");
}

Family build_family(const std::string& spec, std::size_t max_dim, Exec ex) {
    Family fam;
    fam.spec = spec;
    if (spec.rfind("zigzag:", 0) == 0) {
        fam.kind = FamilyKind::Zigzag;
        bool alt = spec.size() > 4 && spec.compare(spec.size() - 4, 4, ":alt") == 0;
        auto q = QuiverSpec::parse(alt ? spec.substr(0, spec.size() - 4) : spec);
        if (alt) {
            if (q.variant != QuiverVariant::CycleShort || q.n != 3)
                throw Error(ErrorKind::InvalidSpec, "the alternate datum exists for zigzag:cycS:3 only");
            fam.zigzag = std::make_shared<Zigzag>(alternate_idempotent_datum());
        } else {
            // basis sizes: 4n-2 for A, 4n for cycS, n^3 for cycL
            const std::size_t n = q.n;
            std::size_t bound = q.variant == QuiverVariant::CycleLong ? n * n * n : 4 * n;
            guard(spec, bound, max_dim);
            fam.zigzag = std::make_shared<Zigzag>(build_zigzag(q, FieldSpec::rationals(), ex));
        }
    } else if (spec.rfind("usl2:", 0) == 0) {
        fam.kind = FamilyKind::USl2;
        int p = parse_param(spec, "p=");
        if (p >= 2 && p <= 2000) guard(spec, std::size_t(p) * p * p, max_dim);
        fam.usl2 = std::make_shared<USl2>(build_usl2(p, ex));
    } else if (spec.rfind("annular:", 0) == 0) {
        fam.kind = FamilyKind::Annular;
        int n = parse_param(spec, "n=");
        fam.annular = std::make_shared<Annular>(build_annular(n, FieldSpec::rationals(), ex, max_dim));
    } else {
        throw Error(ErrorKind::InvalidSpec, "unknown family '" + spec + "'");
    }
    return fam;
}

}  // namespace relcell
