#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relcell/cell.hpp"

namespace relcell {

// Weights are strings over 'v' and '^' of length 2n.
using Weight = std::string;

struct Arc {
    int p = 1, q = 2;  // 1 <= p < q <= 2n
    bool wrap = false;

    friend bool operator==(const Arc& a, const Arc& b) { return a.p == b.p && a.q == b.q && a.wrap == b.wrap; }
};

class CupDiagram {
public:
    CupDiagram() = default;
    CupDiagram(int n, std::vector<Arc> arcs);  // throws InvalidSpec

    int n() const { return n_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    int partner(int pos) const { return partner_[pos]; }
    bool wraps_at(int pos) const { return wrap_[pos]; }
    // Index into arcs() of the arc through pos.
    int arc_at(int pos) const { return arc_of_[pos]; }
    bool all_staying() const;

    // "1-4,2-3"; '~' marks a wrapping arc.
    std::string to_string() const;
    static CupDiagram parse(int n, const std::string& s);

    friend bool operator==(const CupDiagram& a, const CupDiagram& b) { return a.n_ == b.n_ && a.arcs_ == b.arcs_; }
    friend bool operator!=(const CupDiagram& a, const CupDiagram& b) { return !(a == b); }

private:
    int n_ = 0;
    std::vector<Arc> arcs_;  // sorted by p
    std::vector<int> partner_, arc_of_;
    std::vector<char> wrap_;
};

// Positions covered by the arc's shadow, endpoints included or not.
std::vector<int> arc_coverage(int n, const Arc& a, bool closed);
// Disjoint, or one closed coverage inside the other's open coverage.
bool arcs_compatible(int n, const Arc& a, const Arc& b);

std::vector<Weight> all_weights(int n);  // lexicographic with v < ^
bool weight_less(const Weight& a, const Weight& b);
std::vector<CupDiagram> enumerate_cup_diagrams(int n);  // sorted by anticlockwise weight

bool orients(const CupDiagram& S, const Weight& w);
std::vector<Weight> orientations_of(const CupDiagram& S);
// lambda_S: every circle of S S* anticlockwise.
Weight anticlockwise_weight(const CupDiagram& S);
Weight flip(const Weight& w);

Weight rotate(const Weight& w);
CupDiagram rotate(const CupDiagram& S);
// Least k with rotate^k(S) of staying type.
int staying_shift(const CupDiagram& S);
// Strict dominance: prefix counts of v pointwise <=, not equal.
bool dominance_less(const Weight& mu, const Weight& lambda);
// mu strictly below lambda in the order attached to eps_S.
bool order_less(const CupDiagram& S, const Weight& mu, const Weight& lambda);

enum class CircleOrientation { None, Anticlockwise, Clockwise, Leftwards, Rightwards };

struct Circle {
    std::vector<int> vertices;  // positions 1..2n on the line
    int wrapping_arcs = 0;
    bool essential = false;
    CircleOrientation orientation = CircleOrientation::None;
};

// Components of S T*; oriented when a weight is given (throws InvalidSpec if it does not orient).
std::vector<Circle> circles(const CupDiagram& S, const CupDiagram& T, const std::optional<Weight>& w = std::nullopt);
std::string to_string(CircleOrientation o);

// Basis element C^lambda_{S,T} in diagram form.
struct ArcBasis {
    CupDiagram S;
    Weight lambda;
    CupDiagram T;
};

// Sum of weights nu of the terms C^nu_{S,V}; coefficients are counted.
struct SurgeryTerm {
    Weight nu;
    long coeff = 1;
};
// order: indices into T.arcs() giving the surgery order; empty means canonical.
std::vector<SurgeryTerm> surgery_product(const ArcBasis& a, const ArcBasis& b, const std::vector<int>& order = {});
// Every admissible order of surgeries for a product with T = U.
std::vector<std::vector<int>> admissible_orders(const CupDiagram& T);

struct Annular {
    int n = 1;
    std::vector<CupDiagram> cups;
    std::vector<Weight> weights;
    std::vector<ArcBasis> basis;
    CellDatum datum;

    std::size_t dim() const { return basis.size(); }
    std::size_t cup_index(const CupDiagram& S) const;
    std::size_t index_of(const ArcBasis& b) const;
    // "S|lambda|T"
    std::string format(std::size_t i) const;
    std::size_t parse(const std::string& s) const;
};

// Dimension without building.
std::size_t annular_dimension(int n);
// Throws SizeLimit when the dimension exceeds max_dim.
Annular build_annular(int n, FieldSpec f = FieldSpec::rationals(), Exec ex = Exec::Parallel,
                      std::size_t max_dim = 4096);

// Surgery product of basis elements i, j under a given order (empty means canonical).
Element annular_multiply(const Annular& a, std::size_t i, std::size_t j, const std::vector<int>& order = {});

// d(lambda, mu) = 1 iff the cup diagram with anticlockwise weight mu is oriented by lambda.
// Rows X, columns X0 (ss.X0 order). If generic is given, throws FastpathMismatch on disagreement.
Matrix decomposition_fastpath(const Annular& a, const std::vector<std::size_t>& X0,
                              const Matrix* generic = nullptr);

// Coefficient of C^{flip(lambda_S)}_{S,S} in C^lambda_{S,T} C^mu_{U,V} when S = V, else 0.
Scalar frobenius_form(const Annular& a, std::size_t i, std::size_t j);
Matrix frobenius_gram(const Annular& a, Exec ex = Exec::Parallel);

// dim of R e for e = eps_S, by counting basis b with b e = b.
std::size_t projective_dimension(const Annular& a, std::size_t cup);

}  // namespace relcell
