#include "relcell/cell.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace relcell {

std::size_t CellDatum::label_index(const std::string& lambda) const {
    auto it = std::find(X.begin(), X.end(), lambda);
    if (it == X.end()) throw Error(ErrorKind::Parse, "unknown label " + lambda);
    return static_cast<std::size_t>(it - X.begin());
}

std::vector<std::pair<std::size_t, std::size_t>> CellDatum::hasse(std::size_t e) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t n = X.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (!below(e, a, b)) continue;
            bool cover = true;
            for (std::size_t c = 0; c < n && cover; ++c)
                if (below(e, a, c) && below(e, c, b)) cover = false;
            if (cover) out.emplace_back(a, b);
        }
    return out;
}

void CellDatum::fill_C_from_labels() {
    C.assign(X.size(), {});
    for (std::size_t l = 0; l < X.size(); ++l) {
        std::size_t m = M[l].size();
        C[l].assign(m, std::vector<std::size_t>(m));
        for (std::size_t s = 0; s < m; ++s)
            for (std::size_t t = 0; t < m; ++t) C[l][s][t] = alg->index_of(X[l], M[l][s], M[l][t]);
    }
}

std::vector<Coord> basis_coords(const CellDatum& d) {
    const std::size_t n = d.alg->dim();
    std::vector<Coord> out(n);
    std::vector<bool> seen(n, false);
    std::size_t count = 0;
    for (std::size_t l = 0; l < d.C.size(); ++l)
        for (std::size_t s = 0; s < d.C[l].size(); ++s)
            for (std::size_t t = 0; t < d.C[l][s].size(); ++t) {
                std::size_t i = d.C[l][s][t];
                if (i >= n || seen[i])
                    throw Error(ErrorKind::Internal, "C not injective at " + d.X[l] + "," + d.M[l][s] + "," + d.M[l][t]);
                seen[i] = true;
                out[i] = {l, s, t};
                ++count;
            }
    if (count != n) throw Error(ErrorKind::Internal, "C misses " + std::to_string(n - count) + " basis elements");
    return out;
}

bool VerifyReport::all_pass() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.pass; });
}

const AxiomResult* VerifyReport::find(const std::string& axiom) const {
    for (const auto& a : axioms)
        if (a.axiom == axiom) return &a;
    return nullptr;
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& a : axioms) {
        nlohmann::json e{{"axiom", a.axiom}, {"pass", a.pass}};
        if (!a.pass) e["witness"] = a.witness;
        j.push_back(e);
    }
    return j;
}

namespace {

std::string cname(const CellDatum& d, std::size_t l, std::size_t s, std::size_t t) {
    return "C^" + d.X[l] + "_{" + d.M[l][s] + "," + d.M[l][t] + "}";
}

std::string bname(const CellDatum& d, const std::vector<Coord>& co, std::size_t i) {
    return cname(d, co[i].l, co[i].s, co[i].t);
}

// Pairs (i,j) to test: all when dim is small, a seeded sample otherwise.
std::vector<std::pair<std::size_t, std::size_t>> pair_sample(std::size_t n, const VerifyOptions& opt) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (n <= opt.exhaustive_dim) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out.emplace_back(i, j);
        return out;
    }
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> u(0, n - 1);
    for (std::size_t k = 0; k < opt.samples; ++k) out.emplace_back(u(rng), u(rng));
    return out;
}

// r_a(S', S) for label l read off a * C^l_{S,T}. With check_all_t every T is
// compared; the first discrepancy goes to *why.
std::optional<Matrix> extract_r(const CellDatum& d, const std::vector<Coord>& co, std::size_t a, std::size_t l,
                                bool check_all_t, std::string* why) {
    const AlgebraTable& alg = *d.alg;
    const std::size_t m = d.M[l].size();
    Matrix r(alg.field(), m, m);
    std::size_t tmax = check_all_t ? m : std::min<std::size_t>(m, 1);
    for (std::size_t t = 0; t < tmax; ++t) {
        Matrix rt(alg.field(), m, m);
        for (std::size_t s = 0; s < m; ++s) {
            for (const auto& [k, c] : alg.product(a, d.C[l][s][t])) {
                if (co[k].l != l) continue;
                if (co[k].t != t) {
                    if (why)
                        *why = "a=" + bname(d, co, a) + " times " + cname(d, l, s, t) + " has term " + bname(d, co, k) +
                               " with a different right index";
                    return std::nullopt;
                }
                rt(co[k].s, s) = c;
            }
        }
        if (t == 0) {
            r = rt;
        } else if (rt != r) {
            if (why)
                *why = "coefficients r_a for a=" + bname(d, co, a) + " on label " + d.X[l] + " differ between T=" +
                       d.M[l][0] + " and T=" + d.M[l][t];
            return std::nullopt;
        }
    }
    return r;
}

}  // namespace

VerifyReport verify_cell_datum(const CellDatum& d, const VerifyOptions& opt) {
    VerifyReport rep;
    const AlgebraTable& alg = *d.alg;
    const FieldSpec f = alg.field();
    const std::size_t n = alg.dim();
    auto add = [&](std::string name, std::string witness) {
        rep.axioms.push_back({std::move(name), witness.empty(), witness});
    };

    // (a)
    std::vector<Coord> co;
    try {
        if (d.M.size() != d.X.size() || d.C.size() != d.X.size() || d.eps.size() != d.X.size())
            throw Error(ErrorKind::Internal, "X, M, C, eps sizes disagree");
        co = basis_coords(d);
        add("a:bijection", "");
    } catch (const Error& e) {
        add("a:bijection", e.what());
        return rep;
    }

    // (b)
    {
        std::string w;
        for (std::size_t i = 0; i < n && w.empty(); ++i) {
            auto [l, s, t] = co[i];
            if (alg.star(i) != d.C[l][t][s]) w = "star(" + bname(d, co, i) + ") is " + bname(d, co, alg.star(i));
            else if (alg.star(alg.star(i)) != i) w = "star not involutive on " + bname(d, co, i);
        }
        add("b:star-labels", w);
    }
    {
        auto pairs = pair_sample(n, opt);
        std::vector<std::string> ws(pairs.size());
        for_each_index(pairs.size(), opt.exec, [&](std::size_t k) {
            auto [i, j] = pairs[k];
            Element lhs = star(Element::from_sparse(f, alg.product(i, j)), alg);
            Element rhs = Element::from_sparse(f, alg.product(alg.star(j), alg.star(i)));
            if (lhs != rhs) ws[k] = "star(xy) != star(y)star(x) for x=" + bname(d, co, i) + ", y=" + bname(d, co, j);
        });
        auto it = std::find_if(ws.begin(), ws.end(), [](const std::string& s) { return !s.empty(); });
        add("b:anti-involution", it == ws.end() ? "" : *it);
    }

    // (c)
    {
        std::string w;
        for (std::size_t e = 0; e < d.E.size() && w.empty(); ++e) {
            if (!is_idempotent(d.E[e], alg)) w = d.E_names[e] + " is not idempotent";
            else if (star(d.E[e], alg) != d.E[e]) w = d.E_names[e] + " is not star-fixed";
            for (std::size_t e2 = 0; e2 < d.E.size() && w.empty(); ++e2)
                if (e2 != e && !multiply(d.E[e], d.E[e2], alg).is_zero())
                    w = d.E_names[e] + " and " + d.E_names[e2] + " are not orthogonal";
        }
        add("c:idempotents", w);
    }
    {
        std::string w;
        const std::size_t nx = d.X.size();
        if (d.orders.size() != d.E.size()) w = "one order per idempotent required";
        for (std::size_t e = 0; e < d.orders.size() && w.empty(); ++e) {
            for (std::size_t a = 0; a < nx && w.empty(); ++a) {
                if (d.below(e, a, a)) w = "order of " + d.E_names[e] + " is reflexive at " + d.X[a];
                for (std::size_t b = 0; b < nx && w.empty(); ++b) {
                    if (!d.below(e, a, b)) continue;
                    for (std::size_t c = 0; c < nx && w.empty(); ++c)
                        if (d.below(e, b, c) && !d.below(e, a, c))
                            w = "order of " + d.E_names[e] + " not transitive: " + d.X[a] + " < " + d.X[b] + " < " +
                                d.X[c];
                }
            }
        }
        add("c:orders", w);
    }
    {
        std::string w;
        for (std::size_t l = 0; l < d.X.size() && w.empty(); ++l) {
            if (d.eps[l].size() != d.M[l].size()) w = "eps map missing entries for " + d.X[l];
            for (auto e : d.eps[l])
                if (e >= d.E.size()) w = "eps map out of range for " + d.X[l];
        }
        for (std::size_t e = 0; e < d.E.size() && w.empty(); ++e)
            for (std::size_t i = 0; i < n && w.empty(); ++i) {
                Element b = Element::basis(f, i);
                Element p = multiply(d.E[e], b, alg);
                bool owns = d.eps[co[i].l][co[i].s] == e;
                if (owns ? p != b : !p.is_zero())
                    w = d.E_names[e] + " * " + bname(d, co, i) + " = " + format_element(p, alg);
            }
        add("c:idem-props-2", w);
    }
    {
        // eps R eps is spanned by the basis elements with eps_S = eps_T = eps.
        std::vector<std::pair<std::size_t, std::size_t>> jobs;  // (e, a)
        for (std::size_t e = 0; e < d.E.size(); ++e)
            for (std::size_t a = 0; a < n; ++a)
                if (d.eps[co[a].l][co[a].s] == e && d.eps[co[a].l][co[a].t] == e) jobs.emplace_back(e, a);
        std::vector<std::size_t> targets(n);
        for (std::size_t i = 0; i < n; ++i) targets[i] = i;
        if (n > opt.exhaustive_dim * 2) {
            std::mt19937_64 rng(opt.seed + 1);
            std::shuffle(targets.begin(), targets.end(), rng);
            targets.resize(std::min<std::size_t>(n, 64));
        }
        std::vector<std::string> ws(jobs.size());
        for_each_index(jobs.size(), opt.exec, [&](std::size_t k) {
            auto [e, a] = jobs[k];
            for (auto i : targets) {
                for (const auto& [r, c] : alg.product(a, i)) {
                    if (!d.below_eq(e, co[r].l, co[i].l)) {
                        ws[k] = bname(d, co, a) + " * " + bname(d, co, i) + " has term " + bname(d, co, r) +
                                " outside R(<=_" + d.E_names[e] + " " + d.X[co[i].l] + ")";
                        return;
                    }
                }
            }
        });
        auto it = std::find_if(ws.begin(), ws.end(), [](const std::string& s) { return !s.empty(); });
        add("c:idem-props-1", it == ws.end() ? "" : *it);
    }

    // (d): left multiplication, then the star-flipped right version with the same scalars.
    {
        std::vector<std::size_t> as(n);
        for (std::size_t i = 0; i < n; ++i) as[i] = i;
        if (n > 2 * opt.exhaustive_dim) {
            std::mt19937_64 rng(opt.seed + 2);
            std::shuffle(as.begin(), as.end(), rng);
            as.resize(std::min<std::size_t>(n, 96));
        }
        const std::size_t nx = d.X.size();
        // r[a][l], only filled for sampled a and for star(a) of sampled a.
        std::vector<std::vector<std::optional<Matrix>>> rtab(n);
        std::vector<std::string> wl(n), wr(n);
        std::vector<std::size_t> need = as;
        for (auto a : as) need.push_back(alg.star(a));
        std::sort(need.begin(), need.end());
        need.erase(std::unique(need.begin(), need.end()), need.end());
        for_each_index(need.size(), opt.exec, [&](std::size_t k) {
            std::size_t a = need[k];
            rtab[a].resize(nx);
            for (std::size_t l = 0; l < nx; ++l) {
                std::string why;
                rtab[a][l] = extract_r(d, co, a, l, true, &why);
                if (!rtab[a][l] && wl[a].empty()) wl[a] = why;
            }
            for (std::size_t i = 0; i < n && wl[a].empty(); ++i) {
                auto [l, s, t] = co[i];
                std::size_t et = d.eps[l][t];
                for (const auto& [r, c] : alg.product(a, i)) {
                    if (co[r].l == l) continue;
                    if (!d.below(et, co[r].l, l) || d.eps[co[r].l][co[r].t] != et) {
                        wl[a] = bname(d, co, a) + " * " + bname(d, co, i) + " has term " + bname(d, co, r) +
                                " outside R(<_" + d.E_names[et] + " " + d.X[l] + ")" + d.E_names[et];
                        break;
                    }
                }
            }
        });
        std::string wleft;
        for (auto a : need)
            if (!wl[a].empty()) {
                wleft = wl[a];
                break;
            }
        add("d:mult-left", wleft);

        std::string wright;
        if (wleft.empty()) {
            for_each_index(as.size(), opt.exec, [&](std::size_t k) {
                std::size_t a = as[k];
                const auto& ra = rtab[alg.star(a)];
                for (std::size_t i = 0; i < n; ++i) {
                    auto [l, s, t] = co[i];
                    std::size_t es = d.eps[l][s];
                    Vector expect(d.M[l].size(), Scalar::zero(f));
                    for (std::size_t t2 = 0; t2 < d.M[l].size(); ++t2) expect[t2] = (*ra[l])(t2, t);
                    Vector got(d.M[l].size(), Scalar::zero(f));
                    for (const auto& [r, c] : alg.product(i, a)) {
                        if (co[r].l == l && co[r].s == s) {
                            got[co[r].t] = c;
                        } else if (co[r].l == l || !d.below(es, co[r].l, l) || d.eps[co[r].l][co[r].s] != es) {
                            wr[a] = bname(d, co, i) + " * " + bname(d, co, a) + " has term " + bname(d, co, r) +
                                    " outside " + d.E_names[es] + "R(<_" + d.E_names[es] + " " + d.X[l] + ")";
                            return;
                        }
                    }
                    if (got != expect) {
                        wr[a] = bname(d, co, i) + " * " + bname(d, co, a) + " does not use the scalars of star(a)";
                        return;
                    }
                }
            });
            for (auto a : as)
                if (!wr[a].empty()) {
                    wright = wr[a];
                    break;
                }
        } else {
            wright = "skipped: left version failed";
        }
        add("d:mult-right", wright);
    }
    return rep;
}

RepModule cell_module(const CellDatum& d, std::size_t l, Exec ex) {
    const AlgebraTable& alg = *d.alg;
    auto co = basis_coords(d);
    const std::size_t m = d.M[l].size();
    RepModule mod{alg.field(), m, std::vector<Matrix>(alg.dim())};
    std::vector<std::string> errs(alg.dim());
    for_each_index(alg.dim(), ex, [&](std::size_t a) {
        std::string why;
        auto r = extract_r(d, co, a, l, true, &why);
        if (!r) {
            errs[a] = why;
            return;
        }
        mod.action[a] = std::move(*r);
    });
    for (const auto& e : errs)
        if (!e.empty()) throw Error(ErrorKind::InconsistentCoefficients, e);
    return mod;
}

Matrix gram_matrix(const CellDatum& d, std::size_t l, std::uint64_t seed) {
    const AlgebraTable& alg = *d.alg;
    const std::size_t m = d.M[l].size();
    std::vector<std::pair<std::size_t, std::size_t>> uv;
    if (m <= 12) {
        for (std::size_t u = 0; u < m; ++u)
            for (std::size_t v = 0; v < m; ++v) uv.emplace_back(u, v);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> dist(0, m - 1);
        uv.emplace_back(0, 0);
        for (int k = 0; k < 24; ++k) uv.emplace_back(dist(rng), dist(rng));
    }
    std::optional<Matrix> first;
    for (auto [u, v] : uv) {
        Matrix g(alg.field(), m, m);
        std::size_t target = d.C[l][u][v];
        for (std::size_t s = 0; s < m; ++s)
            for (std::size_t t = 0; t < m; ++t) {
                Element p = multiply(Element::basis(alg.field(), d.C[l][u][s]),
                                     Element::basis(alg.field(), d.C[l][t][v]), alg);
                g(s, t) = p.coeff(target);
            }
        if (!first) {
            first = std::move(g);
        } else if (g != *first) {
            throw Error(ErrorKind::DependsOnUV, "Gram matrix of " + d.X[l] + " changes at (U,V)=(" + d.M[l][u] + "," +
                                                    d.M[l][v] + ")");
        }
    }
    return *first;
}

SimpleSet simple_set(const CellDatum& d, Exec ex) {
    SimpleSet ss;
    const std::size_t nx = d.X.size();
    ss.delta.resize(nx);
    ss.gram.resize(nx);
    std::vector<std::optional<RepModule>> L(nx);
    std::vector<std::size_t> ends(nx, 0);
    // Per-label work is independent.
    for_each_index(nx, ex, [&](std::size_t l) {
        ss.delta[l] = cell_module(d, l, Exec::Serial);
        ss.gram[l] = gram_matrix(d, l);
        if (ss.gram[l].is_zero()) return;
        Matrix rad = Matrix::from_columns(d.alg->field(), d.M[l].size(), nullspace_basis(ss.gram[l]));
        L[l] = quotient_module(ss.delta[l], rad);
        ends[l] = hom_space(*L[l], *L[l], *d.alg).size();
    });
    for (std::size_t l = 0; l < nx; ++l) {
        if (!L[l]) continue;
        ss.X0.push_back(l);
        ss.dims.push_back(L[l]->dim);
        ss.end_dims.push_back(ends[l]);
        ss.simples.push_back(std::move(*L[l]));
    }
    return ss;
}

std::size_t match_primitive_idempotent(const CellDatum& d, const SimpleSet& ss, const Element& e) {
    std::optional<std::size_t> hit;
    for (std::size_t k = 0; k < ss.simples.size(); ++k) {
        Matrix a = ss.simples[k].act(e);
        if (a.is_zero()) continue;
        if (hit) throw Error(ErrorKind::NotPrimitive, "acts nonzero on L(" + d.X[ss.X0[*hit]] + ") and L(" +
                                                          d.X[ss.X0[k]] + ")");
        if (rank(a) != ss.end_dims[k])
            throw Error(ErrorKind::NotPrimitive, "rank on L(" + d.X[ss.X0[k]] + ") exceeds dim End");
        hit = k;
    }
    if (!hit) throw Error(ErrorKind::NotPrimitive, "acts as zero on every simple");
    return *hit;
}

Matrix decomposition_matrix(const CellDatum& d, const SimpleSet& ss, Exec ex) {
    const AlgebraTable& alg = *d.alg;
    const std::size_t nx = d.X.size(), n0 = ss.X0.size();
    FieldSpec q = FieldSpec::rationals();
    std::vector<std::vector<std::int64_t>> rows(nx);
    for_each_index(nx, ex, [&](std::size_t mu) {
        rows[mu] = composition_multiplicities(ss.delta[mu], ss.simples, ss.end_dims, alg);
    });
    Matrix D(q, nx, n0);
    for (std::size_t mu = 0; mu < nx; ++mu)
        for (std::size_t k = 0; k < n0; ++k) D(mu, k) = Scalar(q, rows[mu][k]);

    for (std::size_t k = 0; k < n0; ++k) {
        std::size_t lam = ss.X0[k];
        if (rows[lam][k] != 1)
            throw Error(ErrorKind::Internal, "d_{" + d.X[lam] + "," + d.X[lam] + "} = " + std::to_string(rows[lam][k]));
        std::vector<std::size_t> active;
        for (std::size_t e = 0; e < d.E.size(); ++e)
            if (!ss.simples[k].act(d.E[e]).is_zero()) active.push_back(e);
        for (std::size_t mu = 0; mu < nx; ++mu) {
            if (mu == lam || rows[mu][k] == 0) continue;
            bool ok = std::any_of(active.begin(), active.end(), [&](std::size_t e) { return d.below(e, mu, lam); });
            if (!ok)
                throw Error(ErrorKind::Internal,
                            "d_{" + d.X[mu] + "," + d.X[lam] + "} nonzero but " + d.X[mu] + " is not below " + d.X[lam]);
        }
    }

    for (const auto& e : d.primitives) {
        std::size_t k = match_primitive_idempotent(d, ss, e);
        Element es = star(e, alg);
        for (std::size_t mu = 0; mu < nx; ++mu) {
            std::size_t r = rank(ss.delta[mu].act(es));
            if (r % ss.end_dims[k] != 0 || static_cast<std::int64_t>(r / ss.end_dims[k]) != rows[mu][k])
                throw Error(ErrorKind::RouteMismatch, "Delta(" + d.X[mu] + "): idempotent rank " + std::to_string(r) +
                                                          " vs multiplicity " + std::to_string(rows[mu][k]) +
                                                          " of L(" + d.X[ss.X0[k]] + ")");
        }
    }
    return D;
}

CartanResult cartan_matrix(const CellDatum& d, const SimpleSet& ss, const Matrix& D) {
    const AlgebraTable& alg = *d.alg;
    const std::size_t n0 = ss.X0.size();
    CartanResult res{matmul(transpose(D), D), false, {}, Scalar()};
    auto Ci = res.C.to_ints();
    auto row_str = [](const std::vector<std::int64_t>& v) {
        std::ostringstream os;
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        return os.str();
    };
    bool gens_only = alg.has_custom_generators();
    if (!d.primitives.empty()) {
        for (const auto& e : d.primitives) {
            std::size_t k = match_primitive_idempotent(d, ss, e);
            RepModule P = left_ideal_module(alg, e, gens_only);
            auto m = composition_multiplicities(P, ss.simples, ss.end_dims, alg);
            if (m != Ci[k])
                throw Error(ErrorKind::ReciprocityFailure,
                            "[P(" + d.X[ss.X0[k]] + ")] = " + row_str(m) + " but (D^T D) row is " + row_str(Ci[k]));
        }
    } else {
        for (std::size_t e = 0; e < d.E.size(); ++e) {
            RepModule P = left_ideal_module(alg, d.E[e], gens_only);
            auto m = composition_multiplicities(P, ss.simples, ss.end_dims, alg);
            std::vector<std::int64_t> expect(n0, 0);
            for (std::size_t k = 0; k < n0; ++k) {
                std::size_t r = rank(ss.simples[k].act(d.E[e]));
                if (r % ss.end_dims[k] != 0) throw Error(ErrorKind::NonIntegralMultiplicity, "dim eps L / dim End");
                std::int64_t mk = static_cast<std::int64_t>(r / ss.end_dims[k]);
                for (std::size_t j = 0; j < n0; ++j) expect[j] += mk * Ci[k][j];
            }
            if (m != expect)
                throw Error(ErrorKind::ReciprocityFailure,
                            "[R" + d.E_names[e] + "] = " + row_str(m) + " but D^T D predicts " + row_str(expect));
        }
    }
    res.psd = is_positive_semidefinite(res.C);
    res.leading_minors = leading_minors(res.C);
    res.det = determinant(res.C);
    return res;
}

bool is_semisimple(const SimpleSet& ss) {
    for (const auto& g : ss.gram)
        if (rank(g) != g.rows()) return false;
    return ss.X0.size() == ss.gram.size();
}

CellDatum core_subalgebra(const CellDatum& d, std::size_t e) {
    const AlgebraTable& alg = *d.alg;
    auto co = basis_coords(d);
    std::vector<std::size_t> keep;
    std::vector<std::size_t> remap(alg.dim(), SIZE_MAX);
    for (std::size_t i = 0; i < alg.dim(); ++i)
        if (d.eps[co[i].l][co[i].s] == e && d.eps[co[i].l][co[i].t] == e) {
            remap[i] = keep.size();
            keep.push_back(i);
        }
    std::vector<BasisLabel> labels;
    std::vector<std::size_t> st;
    for (auto i : keep) {
        labels.push_back(alg.label(i));
        st.push_back(remap[alg.star(i)]);
    }
    const std::size_t m = keep.size();
    std::vector<SparseVec> table(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            SparseVec v;
            for (const auto& [k, c] : alg.product(keep[a], keep[b])) {
                if (remap[k] == SIZE_MAX) throw Error(ErrorKind::Internal, "core not closed under multiplication");
                v.emplace_back(remap[k], c);
            }
            std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            table[a * m + b] = std::move(v);
        }
    CellDatum c;
    c.name = d.name + ":core(" + d.E_names[e] + ")";
    c.alg = std::make_shared<AlgebraTable>(AlgebraTable::from_table(alg.field(), labels, st, std::move(table)));
    std::vector<std::size_t> lmap;
    for (std::size_t l = 0; l < d.X.size(); ++l) {
        std::vector<std::string> Ml;
        for (std::size_t s = 0; s < d.M[l].size(); ++s)
            if (d.eps[l][s] == e) Ml.push_back(d.M[l][s]);
        if (Ml.empty()) continue;
        lmap.push_back(l);
        c.X.push_back(d.X[l]);
        c.M.push_back(Ml);
        c.eps.push_back(std::vector<std::size_t>(Ml.size(), 0));
    }
    c.fill_C_from_labels();
    Element ce(alg.field());
    for (const auto& [i, x] : d.E[e].terms()) {
        if (remap[i] == SIZE_MAX) throw Error(ErrorKind::Internal, "idempotent outside its core");
        ce.add_term(remap[i], x);
    }
    c.E = {ce};
    c.E_names = {d.E_names[e]};
    std::vector<std::vector<char>> ord(lmap.size(), std::vector<char>(lmap.size(), 0));
    for (std::size_t a = 0; a < lmap.size(); ++a)
        for (std::size_t b = 0; b < lmap.size(); ++b) ord[a][b] = d.orders[e][lmap[a]][lmap[b]];
    c.orders = {ord};
    return c;
}

CellDatum with_reversed_order(const CellDatum& d, std::size_t e) {
    CellDatum r = d;
    r.name = d.name + ":reversed(" + d.E_names[e] + ")";
    const std::size_t n = d.X.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) r.orders[e][a][b] = d.orders[e][b][a];
    return r;
}

nlohmann::json analysis_report(const CellDatum& d, const VerifyOptions& opt) {
    using nlohmann::json;
    json j;
    j["algebra"] = d.name;
    j["dim"] = d.alg->dim();
    j["field"] = d.alg->field().to_string();
    VerifyReport vr = verify_cell_datum(d, opt);
    j["axioms"] = vr.to_json();
    if (!vr.all_pass()) {
        j["reciprocity_ok"] = false;
        return j;
    }
    SimpleSet ss = simple_set(d, opt.exec);
    json x0 = json::array(), dims = json::object();
    for (std::size_t k = 0; k < ss.X0.size(); ++k) {
        x0.push_back(d.X[ss.X0[k]]);
        dims[d.X[ss.X0[k]]] = ss.dims[k];
    }
    j["X"] = d.X;
    j["X0"] = x0;
    j["simple_dims"] = dims;
    j["end_dims"] = ss.end_dims;
    Matrix D = decomposition_matrix(d, ss, opt.exec);
    j["D"] = D.to_ints();
    try {
        CartanResult cr = cartan_matrix(d, ss, D);
        j["C"] = cr.C.to_ints();
        j["reciprocity_ok"] = true;
        j["psd"] = cr.psd;
        j["det"] = cr.det.to_string();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ReciprocityFailure) throw;
        j["C"] = matmul(transpose(D), D).to_ints();
        j["reciprocity_ok"] = false;
        j["reciprocity_error"] = e.what();
    }
    j["semisimple"] = is_semisimple(ss);
    return j;
}

}  // namespace relcell
