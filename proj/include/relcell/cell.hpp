#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relcell/algebra.hpp"

namespace relcell {

// (X, M, C, star, E, O, eps) over a structure-constant algebra.
struct CellDatum {
    std::string name;
    AlgebraPtr alg;
    std::vector<std::string> X;
    std::vector<std::vector<std::string>> M;
    // C[l][s][t] = basis index of C^{X[l]}_{M[l][s], M[l][t]}
    std::vector<std::vector<std::vector<std::size_t>>> C;
    std::vector<Element> E;
    std::vector<std::string> E_names;
    // orders[e][mu][lambda] != 0 iff mu is strictly below lambda under E[e]
    std::vector<std::vector<std::vector<char>>> orders;
    // eps[l][s] = index into E
    std::vector<std::vector<std::size_t>> eps;
    // Optional primitive idempotents, each with a name.
    std::vector<Element> primitives;
    std::vector<std::string> primitive_names;

    std::size_t label_index(const std::string& lambda) const;
    bool below(std::size_t e, std::size_t mu, std::size_t lambda) const { return orders[e][mu][lambda] != 0; }
    bool below_eq(std::size_t e, std::size_t mu, std::size_t lambda) const {
        return mu == lambda || below(e, mu, lambda);
    }
    // Hasse edges (mu, lambda) of orders[e].
    std::vector<std::pair<std::size_t, std::size_t>> hasse(std::size_t e) const;

    // Fills C from alg labels (X[l], M[l][s], M[l][t]); throws Parse when a label is missing.
    void fill_C_from_labels();
};

struct Coord {
    std::size_t l, s, t;
};
// coords[i] for basis index i; throws Internal if C is not a bijection.
std::vector<Coord> basis_coords(const CellDatum& d);

struct AxiomResult {
    std::string axiom;
    bool pass = true;
    std::string witness;
};

struct VerifyOptions {
    Exec exec = Exec::Parallel;
    // Pairwise checks are exhaustive up to this dimension, sampled above.
    std::size_t exhaustive_dim = 120;
    std::size_t samples = 20000;
    std::uint64_t seed = 1;
};

struct VerifyReport {
    std::vector<AxiomResult> axioms;
    bool all_pass() const;
    const AxiomResult* find(const std::string& axiom) const;
    nlohmann::json to_json() const;
};

VerifyReport verify_cell_datum(const CellDatum& d, const VerifyOptions& opt = {});

// Delta(lambda) with basis M(lambda); action[a](S', S) = r_a(S', S).
RepModule cell_module(const CellDatum& d, std::size_t l, Exec ex = Exec::Serial);

// entry(S,T) = coefficient of C^l_{U,V} in C^l_{U,S} C^l_{T,V}; all (U,V) checked up to 12, sampled above.
Matrix gram_matrix(const CellDatum& d, std::size_t l, std::uint64_t seed = 1);

struct SimpleSet {
    std::vector<std::size_t> X0;          // label indices
    std::vector<RepModule> delta;         // per label in X
    std::vector<Matrix> gram;             // per label in X
    std::vector<RepModule> simples;       // per X0 entry
    std::vector<std::size_t> dims;        // rank of Gram, per X0 entry
    std::vector<std::size_t> end_dims;    // dim End(L), per X0 entry
};

SimpleSet simple_set(const CellDatum& d, Exec ex = Exec::Parallel);

// Rows X, columns X0, over Q.
Matrix decomposition_matrix(const CellDatum& d, const SimpleSet& ss, Exec ex = Exec::Parallel);

struct CartanResult {
    Matrix C;
    bool psd = false;
    std::vector<Scalar> leading_minors;
    Scalar det;
};

// C = D^T D, validated against projective or R*eps multiplicities.
CartanResult cartan_matrix(const CellDatum& d, const SimpleSet& ss, const Matrix& D);

bool is_semisimple(const SimpleSet& ss);

// Index into ss.X0 of the unique simple on which e acts nonzero.
std::size_t match_primitive_idempotent(const CellDatum& d, const SimpleSet& ss, const Element& e);

CellDatum core_subalgebra(const CellDatum& d, std::size_t e);

// Full pipeline as JSON: {axioms, X0, simple_dims, D, C, reciprocity_ok, semisimple}.
nlohmann::json analysis_report(const CellDatum& d, const VerifyOptions& opt = {});

// Row/column labels preserved: copy of d with orders[e] replaced by its opposite.
CellDatum with_reversed_order(const CellDatum& d, std::size_t e);

}  // namespace relcell
