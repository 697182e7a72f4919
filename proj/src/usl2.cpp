#include "relcell/usl2.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <random>
#include <sstream>

namespace relcell {

namespace {

std::int64_t md(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

}  // namespace

PBWAlgebra::PBWAlgebra(int p) : p_(p), f_(FieldSpec::prime(p)) {}

PBWAlgebra::Raw PBWAlgebra::raw(const Vector& v) const {
    if (v.size() != dim()) throw Error(ErrorKind::ShapeMismatch, "PBW vector of wrong length");
    Raw r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = v[i].residue();
    return r;
}

Vector PBWAlgebra::cooked(const Raw& r) const {
    Vector v;
    v.reserve(r.size());
    for (auto x : r) v.emplace_back(f_, x);
    return v;
}

PBWAlgebra::Raw PBWAlgebra::poly_mul(const Raw& a, const Raw& b) const {
    Raw r(p_, 0);
    for (int i = 0; i < p_; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < p_; ++j) {
            if (!b[j]) continue;
            int k = i + j;
            if (k >= p_) k -= p_ - 1;
            r[k] = (r[k] + a[i] * b[j]) % p_;
        }
    }
    return r;
}

PBWAlgebra::Raw PBWAlgebra::idempotent_poly(int lambda) const {
    Raw r(p_, 0);
    r[0] = p_ - 1;
    for (int mu = 0; mu < p_; ++mu) {
        if (mu == lambda) continue;
        Raw lin(p_, 0);
        lin[0] = md(-mu, p_);
        lin[1] = 1;
        r = poly_mul(r, lin);
    }
    return r;
}

Vector PBWAlgebra::monomial(int x, int y, int z) const {
    Raw r(dim(), 0);
    if (x < p_ && z < p_) r[index(x, y, z)] = 1;
    return cooked(r);
}

Vector PBWAlgebra::weight_idempotent(int lambda) const { return cell_element(lambda, 0, 0); }

Vector PBWAlgebra::cell_element(int lambda, int S, int T) const {
    Raw r(dim(), 0);
    auto poly = idempotent_poly(md(lambda, p_));
    for (int y = 0; y < p_; ++y) r[index(S, y, T)] = poly[y];
    return cooked(r);
}

PBWAlgebra::Raw PBWAlgebra::raw_times_E(const Raw& x) const {
    Raw r(dim(), 0);
    for (int a = 0; a < p_; ++a)
        for (int b = 0; b < p_; ++b)
            for (int c = 0; c + 1 < p_; ++c) r[index(a, b, c + 1)] = x[index(a, b, c)];
    return r;
}

// F^a H^b E^c H = F^a H^b (H - 2c) E^c
PBWAlgebra::Raw PBWAlgebra::raw_times_H(const Raw& x) const {
    Raw r(dim(), 0);
    for (int a = 0; a < p_; ++a)
        for (int c = 0; c < p_; ++c) {
            Raw poly(p_), lin(p_, 0);
            for (int b = 0; b < p_; ++b) poly[b] = x[index(a, b, c)];
            lin[0] = md(-2 * c, p_);
            lin[1] = 1;
            poly = poly_mul(poly, lin);
            for (int b = 0; b < p_; ++b) r[index(a, b, c)] = (r[index(a, b, c)] + poly[b]) % p_;
        }
    return r;
}

// F^a H^b E^c F = F^{a+1} (H-2)^b E^c + c F^a H^b (H - c + 1) E^{c-1}
PBWAlgebra::Raw PBWAlgebra::raw_times_F(const Raw& x) const {
    Raw r(dim(), 0);
    Raw shift(p_, 0);
    shift[0] = md(-2, p_);
    shift[1] = 1;
    for (int a = 0; a < p_; ++a)
        for (int c = 0; c < p_; ++c) {
            Raw poly(p_);
            bool any = false;
            for (int b = 0; b < p_; ++b) {
                poly[b] = x[index(a, b, c)];
                any = any || poly[b];
            }
            if (!any) continue;
            if (a + 1 < p_) {
                // substitute H -> H - 2
                Raw sub(p_, 0), pw(p_, 0);
                pw[0] = 1;
                for (int b = 0; b < p_; ++b) {
                    if (poly[b])
                        for (int k = 0; k < p_; ++k) sub[k] = (sub[k] + poly[b] * pw[k]) % p_;
                    pw = poly_mul(pw, shift);
                }
                for (int b = 0; b < p_; ++b) r[index(a + 1, b, c)] = (r[index(a + 1, b, c)] + sub[b]) % p_;
            }
            if (c > 0) {
                Raw lin(p_, 0);
                lin[0] = md(1 - c, p_);
                lin[1] = 1;
                auto q = poly_mul(poly, lin);
                for (int b = 0; b < p_; ++b)
                    r[index(a, b, c - 1)] = (r[index(a, b, c - 1)] + c * q[b]) % p_;
            }
        }
    return r;
}

PBWAlgebra::Raw PBWAlgebra::raw_multiply(const Raw& a, const Raw& b) const {
    Raw r(dim(), 0);
    // a * F^x H^y E^z, built by right multiplication; cache a*F^x.
    Raw ax = a;
    for (int x = 0; x < p_; ++x) {
        Raw axy = ax;
        for (int y = 0; y < p_; ++y) {
            Raw axyz = axy;
            for (int z = 0; z < p_; ++z) {
                auto c = b[index(x, y, z)];
                if (c)
                    for (std::size_t i = 0; i < dim(); ++i) r[i] = (r[i] + c * axyz[i]) % p_;
                if (z + 1 < p_) axyz = raw_times_E(axyz);
            }
            if (y + 1 < p_) axy = raw_times_H(axy);
        }
        if (x + 1 < p_) ax = raw_times_F(ax);
    }
    return r;
}

Vector PBWAlgebra::times_E(const Vector& x) const { return cooked(raw_times_E(raw(x))); }
Vector PBWAlgebra::times_F(const Vector& x) const { return cooked(raw_times_F(raw(x))); }
Vector PBWAlgebra::times_H(const Vector& x) const { return cooked(raw_times_H(raw(x))); }
Vector PBWAlgebra::multiply(const Vector& a, const Vector& b) const {
    return cooked(raw_multiply(raw(a), raw(b)));
}

Vector PBWAlgebra::add(const Vector& a, const Vector& b) const {
    Vector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vector PBWAlgebra::scale(const Vector& a, const Scalar& s) const {
    Vector r = a;
    for (auto& x : r) x *= s;
    return r;
}

// F^S H^b E^T = sum_lambda lambda^b F^S 1_lambda E^T
Vector PBWAlgebra::to_cell(const Vector& x) const {
    Raw r(dim(), 0);
    for (int S = 0; S < p_; ++S)
        for (int b = 0; b < p_; ++b)
            for (int T = 0; T < p_; ++T) {
                auto c = x[index(S, b, T)].residue();
                if (!c) continue;
                for (int l = 0; l < p_; ++l) {
                    std::int64_t pw = 1;
                    for (int k = 0; k < b; ++k) pw = pw * l % p_;
                    auto& slot = r[index(l, S, T)];
                    slot = (slot + c * pw) % p_;
                }
            }
    return cooked(r);
}

Vector PBWAlgebra::from_cell(const Vector& c) const {
    Raw r(dim(), 0);
    for (int l = 0; l < p_; ++l) {
        auto poly = idempotent_poly(l);
        for (int S = 0; S < p_; ++S)
            for (int T = 0; T < p_; ++T) {
                auto k = c[index(l, S, T)].residue();
                if (!k) continue;
                for (int y = 0; y < p_; ++y) r[index(S, y, T)] = (r[index(S, y, T)] + k * poly[y]) % p_;
            }
    }
    return cooked(r);
}

SparseVec usl2_product(int p, int lambda, int S, int T, int mu, int U, int V) {
    FieldSpec f = FieldSpec::prime(p);
    SparseVec out;
    if (md(lambda + 2 * U - mu - 2 * T, p) != 0) return out;
    std::vector<std::pair<std::size_t, std::int64_t>> acc;
    for (int j = 0; j <= std::min(T, U); ++j) {
        int s2 = S + U - j, t2 = T + V - j;
        if (s2 >= p || t2 >= p) continue;
        std::int64_t c = 1;
        for (int i = 0; i < j; ++i) c = c * (U - i) % p * (T - i) % p;
        c = c * binomial_mod(T - U + mu, j, f).residue() % p;
        if (!c) continue;
        int nu = static_cast<int>(md(lambda + 2 * (U - j), p));
        acc.emplace_back((static_cast<std::size_t>(nu) * p + s2) * p + t2, c);
    }
    std::sort(acc.begin(), acc.end());
    for (auto& [i, c] : acc) {
        if (!out.empty() && out.back().first == i) {
            out.back().second += Scalar(f, c);
            if (out.back().second.is_zero()) out.pop_back();
        } else {
            out.emplace_back(i, Scalar(f, c));
        }
    }
    return out;
}

USl2 build_usl2(int p, Exec ex) {
    if (p == 2) throw Error(ErrorKind::UnsupportedCharacteristic, "u(sl2) needs an odd prime, got 2");
    if (p < 2 || !is_prime_number(p)) throw Error(ErrorKind::InvalidSpec, "u(sl2) needs a prime, got " + std::to_string(p));
    if (p > 31) throw Error(ErrorKind::SizeLimit, "u(sl2) with p > 31");
    FieldSpec f = FieldSpec::prime(p);
    // The chains nu, nu+2, ... must exhaust X.
    {
        std::vector<char> seen(p, 0);
        for (int k = 0; k < p; ++k) seen[md(2 * k, p)] = 1;
        for (char s : seen)
            if (!s) throw Error(ErrorKind::Internal, "2 does not generate Z/p");
    }
    USl2 u;
    u.p = p;
    std::vector<BasisLabel> labels;
    std::vector<std::size_t> st;
    for (int l = 0; l < p; ++l)
        for (int S = 0; S < p; ++S)
            for (int T = 0; T < p; ++T) {
                labels.push_back({std::to_string(l), std::to_string(S), std::to_string(T)});
                st.push_back(u.index(l, T, S));
            }
    const std::size_t pp = static_cast<std::size_t>(p);
    ProductFn fn = [p, pp](std::size_t i, std::size_t j) {
        int l = static_cast<int>(i / (pp * pp)), S = static_cast<int>(i / pp % pp), T = static_cast<int>(i % pp);
        int m = static_cast<int>(j / (pp * pp)), U = static_cast<int>(j / pp % pp), V = static_cast<int>(j % pp);
        return usl2_product(p, l, S, T, m, U, V);
    };
    auto alg = std::make_shared<AlgebraTable>(f, labels, st, fn, ex);

    u.E = Element(f);
    u.F = Element(f);
    u.H = Element(f);
    for (int m = 0; m < p; ++m) {
        u.E.add_term(u.index(m, 0, 1), Scalar::one(f));
        u.F.add_term(u.index(m, 1, 0), Scalar::one(f));
        u.H.add_term(u.index(m, 0, 0), Scalar(f, m));
        u.idempotents.push_back(Element::basis(f, u.index(m, 0, 0)));
    }
    std::vector<Element> gens{u.E, u.F};
    for (const auto& e : u.idempotents) gens.push_back(e);
    alg->set_generators(gens);

    CellDatum& d = u.datum;
    d.name = "usl2:p=" + std::to_string(p);
    d.alg = alg;
    std::vector<std::string> M;
    for (int k = 0; k < p; ++k) {
        d.X.push_back(std::to_string(k));
        M.push_back(std::to_string(k));
    }
    d.M.assign(p, M);
    d.fill_C_from_labels();
    for (int nu = 0; nu < p; ++nu) {
        d.E.push_back(u.idempotents[nu]);
        d.E_names.push_back("1_" + std::to_string(nu));
        // bottom to top: nu+2(p-1), ..., nu+2, nu
        std::vector<std::vector<char>> o(p, std::vector<char>(p, 0));
        for (int a = p - 1; a >= 0; --a)
            for (int b = a - 1; b >= 0; --b) o[md(nu + 2 * a, p)][md(nu + 2 * b, p)] = 1;
        d.orders.push_back(o);
    }
    for (int l = 0; l < p; ++l) {
        std::vector<std::size_t> e;
        for (int S = 0; S < p; ++S) e.push_back(static_cast<std::size_t>(md(l - 2 * S, p)));
        d.eps.push_back(e);
    }
    return u;
}

std::vector<Letter> parse_word(const std::string& s) {
    std::vector<Letter> out;
    std::size_t i = 0;
    auto number = [&](std::size_t& k) {
        std::size_t start = k;
        bool negative = k < s.size() && s[k] == '-';
        if (negative) ++k;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == start + (negative ? 1 : 0)) throw Error(ErrorKind::Parse, "expected a number in word '" + s + "'");
        return std::stoi(s.substr(start, k - start));
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
            ++i;
            continue;
        }
        if (c == 'E' || c == 'F' || c == 'H') {
            ++i;
            int e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                e = number(i);
                if (e < 0) throw Error(ErrorKind::Parse, "negative exponent in '" + s + "'");
            }
            out.push_back({c, e});
        } else if (c == '1' && i + 1 < s.size() && s[i + 1] == '_') {
            i += 2;
            out.push_back({'1', number(i)});
        } else {
            throw Error(ErrorKind::Parse, std::string("unexpected '") + c + "' in word '" + s + "'");
        }
    }
    return out;
}

Element normal_order(const USl2& u, const std::vector<Letter>& word) {
    PBWAlgebra pbw(u.p);
    Vector x = pbw.one();
    for (const auto& L : word) {
        if (L.kind == '1') {
            x = pbw.multiply(x, pbw.weight_idempotent(static_cast<int>(md(L.value, u.p))));
            continue;
        }
        for (int k = 0; k < L.value; ++k)
            x = L.kind == 'E' ? pbw.times_E(x) : L.kind == 'F' ? pbw.times_F(x) : pbw.times_H(x);
    }
    return Element::from_dense(pbw.field(), pbw.to_cell(x));
}

ChiZeroReport verify_chi_zero_boundary(const USl2& u) {
    const int p = u.p;
    const auto& alg = *u.datum.alg;
    PBWAlgebra pbw(p);
    ChiZeroReport rep;
    // Exhaustive for p <= 5; the PBW cross-check is capped for larger p.
    const std::size_t pbw_budget = p <= 5 ? static_cast<std::size_t>(-1) : 150;
    std::size_t pbw_used = 0;
    std::vector<Vector> cell_pbw(alg.dim());
    auto pbw_of = [&](std::size_t i) -> const Vector& {
        if (cell_pbw[i].empty()) {
            int l = static_cast<int>(i) / (p * p), S = static_cast<int>(i) / p % p, T = static_cast<int>(i) % p;
            cell_pbw[i] = pbw.cell_element(l, S, T);
        }
        return cell_pbw[i];
    };
    for (int l = 0; l < p; ++l)
        for (int S = 0; S < p; ++S)
            for (int T = 0; T < p; ++T)
                for (int m = 0; m < p; ++m)
                    for (int U = 0; U < p; ++U)
                        for (int V = 0; V < p; ++V) {
                            if (md(l + 2 * U - m - 2 * T, p) != 0) continue;
                            ++rep.products;
                            std::size_t dropped = 0;
                            for (int j = 0; j <= std::min(T, U); ++j)
                                if (S + U - j >= p || T + V - j >= p) ++dropped;
                            rep.truncated_terms += dropped;
                            auto prod = usl2_product(p, l, S, T, m, U, V);
                            for (const auto& [k, c] : prod)
                                if (k >= alg.dim()) rep.labels_in_X = false;
                            if (dropped && pbw_used < pbw_budget) {
                                ++pbw_used;
                                auto i = u.index(l, S, T), j = u.index(m, U, V);
                                auto want = pbw.to_cell(pbw.multiply(pbw_of(i), pbw_of(j)));
                                if (Element::from_sparse(pbw.field(), prod) != Element::from_dense(pbw.field(), want))
                                    rep.truncation_matches_pbw = false;
                            }
                        }
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        Element xe = Element::basis(pbw.field(), i), xf = xe;
        for (int k = 0; k < p && !xe.is_zero(); ++k) xe = multiply(u.E, xe, alg);
        for (int k = 0; k < p && !xf.is_zero(); ++k) xf = multiply(u.F, xf, alg);
        if (!xe.is_zero()) rep.E_pow_p_zero = false;
        if (!xf.is_zero()) rep.F_pow_p_zero = false;
    }
    return rep;
}

}  // namespace relcell
