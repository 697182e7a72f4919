#include "relcell/algebra.hpp"

#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace relcell {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// ---- Element ----

Element Element::basis(FieldSpec f, std::size_t i) {
    Element e(f);
    e.terms_.emplace(i, Scalar::one(f));
    return e;
}

Element Element::from_sparse(FieldSpec f, const SparseVec& v) {
    Element e(f);
    for (const auto& [i, c] : v) e.add_term(i, c);
    return e;
}

Scalar Element::coeff(std::size_t i) const {
    auto it = terms_.find(i);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void Element::add_term(std::size_t i, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(i, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Element& Element::operator+=(const Element& o) {
    if (terms_.empty()) field_ = o.field_;
    for (const auto& [i, c] : o.terms_) add_term(i, c);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    if (terms_.empty()) field_ = o.field_;
    for (const auto& [i, c] : o.terms_) add_term(i, -c);
    return *this;
}

Element Element::scaled(const Scalar& s) const {
    Element e(field_);
    if (s.is_zero()) return e;
    for (const auto& [i, c] : terms_) e.terms_.emplace(i, c * s);
    return e;
}

Vector Element::dense(std::size_t dim) const {
    Vector v(dim, Scalar::zero(field_));
    for (const auto& [i, c] : terms_) v.at(i) = c;
    return v;
}

Element Element::from_dense(FieldSpec f, const Vector& v) {
    Element e(f);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) e.terms_.emplace(i, v[i]);
    return e;
}

// ---- AlgebraTable ----

AlgebraTable::AlgebraTable(FieldSpec f, std::vector<BasisLabel> labels, std::vector<std::size_t> star,
                           ProductFn fn, Exec ex, std::size_t materialize_limit)
    : field_(f), labels_(std::move(labels)), star_(std::move(star)), fn_(std::move(fn)) {
    if (star_.size() != labels_.size()) throw Error(ErrorKind::ShapeMismatch, "star length");
    build_index();
    std::size_t n = dim();
    if (n <= materialize_limit) {
        table_.assign(n * n, {});
        for_each_index(n * n, ex, [&](std::size_t k) { table_[k] = fn_(k / n, k % n); });
    }
}

AlgebraTable AlgebraTable::from_table(FieldSpec f, std::vector<BasisLabel> labels, std::vector<std::size_t> star,
                                      std::vector<SparseVec> table) {
    AlgebraTable a;
    a.field_ = f;
    a.labels_ = std::move(labels);
    a.star_ = std::move(star);
    if (a.star_.size() != a.labels_.size() || table.size() != a.dim() * a.dim())
        throw Error(ErrorKind::ShapeMismatch, "table shape");
    a.table_ = std::move(table);
    a.build_index();
    return a;
}

void AlgebraTable::build_index() {
    index_.clear();
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (!index_.emplace(labels_[i].key(), i).second)
            throw Error(ErrorKind::Internal, "duplicate basis label " + labels_[i].key());
    }
    all_basis_.clear();
    for (std::size_t i = 0; i < labels_.size(); ++i) all_basis_.push_back(Element::basis(field_, i));
}

std::size_t AlgebraTable::index_of(const BasisLabel& l) const {
    auto it = index_.find(l.key());
    if (it == index_.end()) throw Error(ErrorKind::Parse, "unknown basis label " + l.key());
    return it->second;
}

SparseVec AlgebraTable::product(std::size_t i, std::size_t j) const {
    if (!table_.empty()) return table_[i * dim() + j];
    return fn_(i, j);
}

const std::vector<Element>& AlgebraTable::generators() const {
    return generators_.empty() ? all_basis_ : generators_;
}

nlohmann::json AlgebraTable::to_json() const {
    using nlohmann::json;
    json j;
    j["field"] = field_.to_string();
    json basis = json::array();
    for (const auto& l : labels_) basis.push_back({l.lambda, l.S, l.T});
    j["basis"] = basis;
    j["star"] = star_;
    json prods = json::array();
    for (std::size_t a = 0; a < dim(); ++a)
        for (std::size_t b = 0; b < dim(); ++b) {
            SparseVec v = product(a, b);
            if (v.empty()) continue;
            json terms = json::array();
            for (const auto& [k, c] : v) terms.push_back({k, c.to_string()});
            prods.push_back({a, b, terms});
        }
    j["products"] = prods;
    if (!generators_.empty()) {
        json gens = json::array();
        for (const auto& g : generators_) {
            json terms = json::array();
            for (const auto& [k, c] : g.terms()) terms.push_back({k, c.to_string()});
            gens.push_back(terms);
        }
        j["generators"] = gens;
    }
    return j;
}

AlgebraTable AlgebraTable::from_json(const nlohmann::json& j) {
    try {
        FieldSpec f = FieldSpec::parse(j.at("field").get<std::string>());
        std::vector<BasisLabel> labels;
        for (const auto& b : j.at("basis"))
            labels.push_back({b.at(0).get<std::string>(), b.at(1).get<std::string>(), b.at(2).get<std::string>()});
        auto star = j.at("star").get<std::vector<std::size_t>>();
        std::size_t n = labels.size();
        std::vector<SparseVec> table(n * n);
        for (const auto& p : j.at("products")) {
            std::size_t a = p.at(0), b = p.at(1);
            if (a >= n || b >= n) throw Error(ErrorKind::Parse, "product index out of range");
            SparseVec v;
            for (const auto& t : p.at(2)) v.emplace_back(t.at(0).get<std::size_t>(), Scalar::parse(f, t.at(1)));
            table[a * n + b] = std::move(v);
        }
        AlgebraTable alg = from_table(f, std::move(labels), std::move(star), std::move(table));
        if (j.contains("generators")) {
            std::vector<Element> gens;
            for (const auto& g : j["generators"]) {
                Element e(f);
                for (const auto& t : g) e.add_term(t.at(0).get<std::size_t>(), Scalar::parse(f, t.at(1)));
                gens.push_back(std::move(e));
            }
            alg.set_generators(std::move(gens));
        }
        return alg;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

// ---- element operations ----

Element multiply(const Element& a, const Element& b, const AlgebraTable& alg) {
    Element out(alg.field());
    for (const auto& [i, x] : a.terms())
        for (const auto& [j, y] : b.terms()) {
            Scalar xy = x * y;
            for (const auto& [k, c] : alg.product(i, j)) out.add_term(k, xy * c);
        }
    return out;
}

Element star(const Element& a, const AlgebraTable& alg) {
    Element out(alg.field());
    for (const auto& [i, c] : a.terms()) out.add_term(alg.star(i), c);
    return out;
}

bool is_idempotent(const Element& e, const AlgebraTable& alg) { return multiply(e, e, alg) == e; }

std::string format_element(const Element& a, const AlgebraTable& alg) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : a.terms()) {
        if (!first) os << " + ";
        first = false;
        if (!c.is_one()) os << c << "*";
        os << alg.label(i).key();
    }
    return os.str();
}

Element unit_element(const AlgebraTable& alg, const std::vector<Element>& E) {
    Element u(alg.field());
    for (const auto& e : E) u += e;
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        Element b = Element::basis(alg.field(), i);
        if (multiply(u, b, alg) != b || multiply(b, u, alg) != b)
            throw Error(ErrorKind::NotUnital, "sum of E fails on basis element " + alg.label(i).key());
    }
    return u;
}

// ---- modules ----

Matrix RepModule::act(const Element& a) const {
    if (generators_only) throw Error(ErrorKind::Unsupported, "module only carries generator actions");
    Matrix m(field, dim, dim);
    for (const auto& [i, c] : a.terms()) m = add(m, scale(action.at(i), c));
    return m;
}

bool respects_multiplication(const RepModule& m, const AlgebraTable& alg,
                             const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    auto check = [&](std::size_t i, std::size_t j) {
        Element p = Element::from_sparse(alg.field(), alg.product(i, j));
        return matmul(m.action[i], m.action[j]) == m.act(p);
    };
    if (pairs.empty()) {
        for (std::size_t i = 0; i < alg.dim(); ++i)
            for (std::size_t j = 0; j < alg.dim(); ++j)
                if (!check(i, j)) return false;
        return true;
    }
    for (auto [i, j] : pairs)
        if (!check(i, j)) return false;
    return true;
}

std::vector<Matrix> generator_actions(const RepModule& M, const AlgebraTable& alg) {
    if (M.generators_only) return M.action;
    std::vector<Matrix> out;
    for (const auto& g : alg.generators()) out.push_back(M.act(g));
    return out;
}

std::vector<Matrix> hom_space_from_actions(FieldSpec f, std::size_t m, std::size_t n, const std::vector<Matrix>& gM,
                                           const std::vector<Matrix>& gN) {
    const std::size_t nv = m * n;
    std::vector<Matrix> out;
    if (nv == 0) return out;
    // Reduced equation rows so far; generators are folded in batches.
    Matrix acc(f, 0, nv);
    Matrix batch(f, 0, nv);
    auto flush = [&]() {
        if (batch.rows() == 0) return;
        auto r = rref(vstack(acc, batch));
        Matrix keep(f, r.pivots.size(), nv);
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            for (std::size_t j = 0; j < nv; ++j) keep(i, j) = r.reduced(i, j);
        acc = std::move(keep);
        batch = Matrix(f, 0, nv);
    };
    for (std::size_t g = 0; g < gM.size(); ++g) {
        const Matrix& PM = gM[g];
        const Matrix& PN = gN[g];
        Matrix eq(f, n * m, nv);
        bool any = false;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = 0; c < m; ++c) {
                std::size_t row = a * m + c;
                for (std::size_t b = 0; b < m; ++b)
                    if (!PM(b, c).is_zero()) {
                        eq(row, a * m + b) += PM(b, c);
                        any = true;
                    }
                for (std::size_t d = 0; d < n; ++d)
                    if (!PN(a, d).is_zero()) {
                        eq(row, d * m + c) -= PN(a, d);
                        any = true;
                    }
            }
        if (!any) continue;
        batch = vstack(batch, eq);
        if (batch.rows() >= 4 * nv) flush();
    }
    flush();
    for (const auto& v : nullspace_basis(acc)) {
        Matrix X(f, n, m);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < m; ++b) X(a, b) = -v[a * m + b];
        out.push_back(std::move(X));
    }
    return out;
}

std::vector<Matrix> hom_space(const RepModule& M, const RepModule& N, const AlgebraTable& alg) {
    return hom_space_from_actions(alg.field(), M.dim, N.dim, generator_actions(M, alg), generator_actions(N, alg));
}

Matrix radical_of_module(const RepModule& M, const std::vector<RepModule>& simples, const AlgebraTable& alg) {
    Matrix stacked(M.field, 0, M.dim);
    for (const auto& L : simples)
        for (const auto& f : hom_space(M, L, alg)) stacked = vstack(stacked, f);
    return Matrix::from_columns(M.field, M.dim, nullspace_basis(stacked));
}

namespace {

// P = [B | standard complement], returns (P, P^{-1}).
std::pair<Matrix, Matrix> adapted_basis(const RepModule& M, const Matrix& B) {
    auto comp = complement_coordinates(B);
    if (B.cols() + comp.size() != M.dim) throw Error(ErrorKind::Internal, "submodule basis not independent");
    Matrix P(M.field, M.dim, M.dim);
    for (std::size_t i = 0; i < M.dim; ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) P(i, j) = B(i, j);
    for (std::size_t k = 0; k < comp.size(); ++k) P(comp[k], B.cols() + k) = Scalar::one(M.field);
    auto inv = left_inverse(P);
    if (!inv) throw Error(ErrorKind::Internal, "adapted basis singular");
    return {std::move(P), std::move(*inv)};
}

}  // namespace

std::vector<Matrix> restrict_actions(const RepModule& M, const Matrix& B) {
    const std::size_t r = B.cols();
    std::vector<Matrix> out;
    auto [P, Pinv] = adapted_basis(M, B);
    for (const auto& A : M.action) {
        Matrix Ap = matmul(Pinv, matmul(A, P));
        Matrix sub(M.field, r, r);
        for (std::size_t i = 0; i < M.dim; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                if (i >= r) {
                    if (!Ap(i, j).is_zero()) throw Error(ErrorKind::Internal, "subspace not invariant");
                } else {
                    sub(i, j) = Ap(i, j);
                }
            }
        out.push_back(std::move(sub));
    }
    return out;
}

RepModule submodule(const RepModule& M, const Matrix& B) {
    return RepModule{M.field, B.cols(), restrict_actions(M, B), M.generators_only};
}

RepModule quotient_module(const RepModule& M, const Matrix& B) {
    const std::size_t r = B.cols(), q = M.dim - r;
    RepModule Q{M.field, q, {}, M.generators_only};
    auto [P, Pinv] = adapted_basis(M, B);
    for (const auto& A : M.action) {
        Matrix Ap = matmul(Pinv, matmul(A, P));
        Matrix quo(M.field, q, q);
        for (std::size_t i = 0; i < M.dim; ++i)
            for (std::size_t j = 0; j < r; ++j)
                if (i >= r && !Ap(i, j).is_zero()) throw Error(ErrorKind::Internal, "subspace not invariant");
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < q; ++j) quo(i, j) = Ap(r + i, r + j);
        Q.action.push_back(std::move(quo));
    }
    return Q;
}

RepModule left_ideal_module(const AlgebraTable& alg, const Element& e, bool generators_only) {
    const std::size_t n = alg.dim();
    FieldSpec f = alg.field();
    std::vector<Element> be;
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < n; ++i) {
        be.push_back(multiply(Element::basis(f, i), e, alg));
        cols.push_back(be.back().dense(n));
    }
    auto piv = rref(Matrix::from_columns(f, n, cols)).pivots;
    std::vector<Vector> bcols;
    for (auto c : piv) bcols.push_back(cols[c]);
    Matrix B = Matrix::from_columns(f, n, bcols);
    auto L = left_inverse(B);
    if (!L) throw Error(ErrorKind::Internal, "left ideal basis");
    RepModule R{f, piv.size(), {}, generators_only};
    auto image = [&](const Element& a) {
        Matrix img(f, piv.size(), piv.size());
        for (std::size_t k = 0; k < piv.size(); ++k) {
            Vector x = matvec(*L, multiply(a, be[piv[k]], alg).dense(n));
            for (std::size_t i = 0; i < piv.size(); ++i) img(i, k) = x[i];
        }
        return img;
    };
    if (generators_only) {
        for (const auto& g : alg.generators()) R.action.push_back(image(g));
    } else {
        for (std::size_t a = 0; a < n; ++a) R.action.push_back(image(Element::basis(f, a)));
    }
    return R;
}

std::vector<std::int64_t> composition_multiplicities(const RepModule& M, const std::vector<RepModule>& simples,
                                                     const std::vector<std::size_t>& end_dims,
                                                     const AlgebraTable& alg) {
    if (end_dims.size() != simples.size()) throw Error(ErrorKind::ShapeMismatch, "end_dims");
    std::vector<std::int64_t> mult(simples.size(), 0);
    std::vector<std::vector<Matrix>> gL;
    for (const auto& L : simples) gL.push_back(generator_actions(L, alg));
    // Only generator matrices are carried through the radical series.
    RepModule cur{M.field, M.dim, generator_actions(M, alg)};
    while (cur.dim > 0) {
        std::size_t head_dim = 0;
        Matrix stacked(cur.field, 0, cur.dim);
        for (std::size_t k = 0; k < simples.size(); ++k) {
            auto homs = hom_space_from_actions(cur.field, cur.dim, simples[k].dim, cur.action, gL[k]);
            if (homs.size() % end_dims[k] != 0)
                throw Error(ErrorKind::NonIntegralMultiplicity,
                            "dim Hom = " + std::to_string(homs.size()) + ", dim End = " + std::to_string(end_dims[k]));
            std::size_t h = homs.size() / end_dims[k];
            mult[k] += static_cast<std::int64_t>(h);
            head_dim += h * simples[k].dim;
            for (const auto& f : homs) stacked = vstack(stacked, f);
        }
        if (head_dim == 0) throw Error(ErrorKind::Internal, "module with empty head; simples incomplete");
        Matrix rad = Matrix::from_columns(cur.field, cur.dim, nullspace_basis(stacked));
        if (rad.cols() + head_dim != cur.dim) throw Error(ErrorKind::Internal, "head dimension mismatch");
        cur = submodule(cur, rad);
    }
    return mult;
}

}  // namespace relcell
