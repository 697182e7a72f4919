#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "relcell/matrix.hpp"
#include "relcell/parallel.hpp"

namespace relcell {

// Cell-basis label C^lambda_{S,T}; all three parts are opaque tokens.
struct BasisLabel {
    std::string lambda, S, T;
    friend bool operator==(const BasisLabel& a, const BasisLabel& b) {
        return a.lambda == b.lambda && a.S == b.S && a.T == b.T;
    }
    std::string key() const { return lambda + "|" + S + "|" + T; }
};

// Sorted by index, no zero coefficients.
using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

class Element {
public:
    Element() = default;
    explicit Element(FieldSpec f) : field_(f) {}
    static Element basis(FieldSpec f, std::size_t i);
    static Element from_sparse(FieldSpec f, const SparseVec& v);

    const FieldSpec& field() const { return field_; }
    const std::map<std::size_t, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Scalar coeff(std::size_t i) const;

    void add_term(std::size_t i, const Scalar& c);
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    Element scaled(const Scalar& s) const;
    Vector dense(std::size_t dim) const;
    static Element from_dense(FieldSpec f, const Vector& v);

    friend bool operator==(const Element& a, const Element& b) {
        return a.field_ == b.field_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

private:
    FieldSpec field_ = FieldSpec::rationals();
    std::map<std::size_t, Scalar> terms_;
};

using ProductFn = std::function<SparseVec(std::size_t, std::size_t)>;

class AlgebraTable {
public:
    static constexpr std::size_t kMaterializeLimit = 256;

    // Materializes the table when dim <= materialize_limit, otherwise keeps fn.
    AlgebraTable(FieldSpec f, std::vector<BasisLabel> labels, std::vector<std::size_t> star, ProductFn fn,
                 Exec ex = Exec::Parallel, std::size_t materialize_limit = kMaterializeLimit);
    static AlgebraTable from_table(FieldSpec f, std::vector<BasisLabel> labels, std::vector<std::size_t> star,
                                   std::vector<SparseVec> table);

    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return labels_.size(); }
    const BasisLabel& label(std::size_t i) const { return labels_[i]; }
    const std::vector<BasisLabel>& labels() const { return labels_; }
    std::size_t star(std::size_t i) const { return star_[i]; }
    // Throws Parse if unknown.
    std::size_t index_of(const BasisLabel& l) const;
    std::size_t index_of(const std::string& lambda, const std::string& S, const std::string& T) const {
        return index_of(BasisLabel{lambda, S, T});
    }
    bool has_label(const BasisLabel& l) const { return index_.count(l.key()) > 0; }

    SparseVec product(std::size_t i, std::size_t j) const;
    bool is_materialized() const { return !table_.empty() || dim() == 0; }

    // Defaults to every basis element.
    const std::vector<Element>& generators() const;
    void set_generators(std::vector<Element> g) { generators_ = std::move(g); }
    bool has_custom_generators() const { return !generators_.empty(); }

    nlohmann::json to_json() const;
    static AlgebraTable from_json(const nlohmann::json& j);

private:
    AlgebraTable() = default;
    void build_index();

    FieldSpec field_ = FieldSpec::rationals();
    std::vector<BasisLabel> labels_;
    std::vector<std::size_t> star_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<SparseVec> table_;  // i * dim + j
    ProductFn fn_;
    std::vector<Element> generators_;
    std::vector<Element> all_basis_;
};

using AlgebraPtr = std::shared_ptr<const AlgebraTable>;

Element multiply(const Element& a, const Element& b, const AlgebraTable& alg);
Element star(const Element& a, const AlgebraTable& alg);
bool is_idempotent(const Element& e, const AlgebraTable& alg);
std::string format_element(const Element& a, const AlgebraTable& alg);

// Sum of E, checked as a two-sided identity on every basis element.
Element unit_element(const AlgebraTable& alg, const std::vector<Element>& E);

// Columns are vectors. action[i] is the matrix of basis element i.
struct RepModule {
    FieldSpec field = FieldSpec::rationals();
    std::size_t dim = 0;
    std::vector<Matrix> action;
    // When set, action[k] is the matrix of generator k instead of basis element k.
    bool generators_only = false;

    Matrix act(const Element& a) const;
};

// Checks rho(b_i) rho(b_j) = rho(b_i b_j) on the given index pairs (all pairs if empty).
bool respects_multiplication(const RepModule& m, const AlgebraTable& alg,
                             const std::vector<std::pair<std::size_t, std::size_t>>& pairs = {});

// Basis of {X : X rho_M(g) = rho_N(g) X for all generators g}, X is dim N x dim M.
std::vector<Matrix> hom_space(const RepModule& M, const RepModule& N, const AlgebraTable& alg);

// The same computation on precomputed generator matrices.
std::vector<Matrix> generator_actions(const RepModule& M, const AlgebraTable& alg);
std::vector<Matrix> hom_space_from_actions(FieldSpec f, std::size_t m, std::size_t n, const std::vector<Matrix>& gM,
                                           const std::vector<Matrix>& gN);

// Columns span the radical.
Matrix radical_of_module(const RepModule& M, const std::vector<RepModule>& simples, const AlgebraTable& alg);

// Action on the span of the columns of B; throws Internal if not invariant.
RepModule submodule(const RepModule& M, const Matrix& B);
RepModule quotient_module(const RepModule& M, const Matrix& B);

// Left ideal R*e as a module.
RepModule left_ideal_module(const AlgebraTable& alg, const Element& e, bool generators_only = false);

// Multiplicities of the given simples; end_dims[k] = dim End(simples[k]).
std::vector<std::int64_t> composition_multiplicities(const RepModule& M, const std::vector<RepModule>& simples,
                                                     const std::vector<std::size_t>& end_dims,
                                                     const AlgebraTable& alg);

}  // namespace relcell
