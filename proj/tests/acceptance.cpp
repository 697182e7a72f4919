// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "relcell/annular.hpp"
#include "relcell/family.hpp"

using namespace relcell;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Analysis {
    SimpleSet ss;
    Matrix D;
    CartanResult C;
};

Analysis analyse(const CellDatum& d) {
    Analysis a;
    a.ss = simple_set(d);
    a.D = decomposition_matrix(d, a.ss);
    a.C = cartan_matrix(d, a.ss, a.D);
    return a;
}

Matrix ints(const std::vector<std::vector<std::int64_t>>& rows) {
    return Matrix::from_ints(FieldSpec::rationals(), rows);
}

// Collects failure notes for one criterion.
struct Crit {
    std::ostringstream why;
    bool ok = true;
    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            why << " [" << what << "]";
        }
    }
};

int failures = 0;

void report(int n, const std::string& title, Crit& c, double secs) {
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " (" << secs << " s)";
    if (!c.ok) {
        std::cout << c.why.str();
        ++failures;
    }
    std::cout << std::endl;
}

void run(int n, const std::string& title, const std::function<void(Crit&)>& body) {
    Crit c;
    auto t0 = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.check(false, std::string("exception: ") + e.what());
    }
    report(n, title, c, seconds_since(t0));
}

const Family& fam(const std::string& spec) {
    static std::map<std::string, Family> cache;
    auto it = cache.find(spec);
    if (it == cache.end()) it = cache.emplace(spec, build_family(spec)).first;
    return it->second;
}

const Analysis& analysis(const std::string& spec) {
    static std::map<std::string, Analysis> cache;
    auto it = cache.find(spec);
    if (it == cache.end()) it = cache.emplace(spec, analyse(fam(spec).datum())).first;
    return it->second;
}

const std::vector<std::string> kSeven = {"zigzag:A:3", "zigzag:cycS:3", "zigzag:cycS:3:alt", "zigzag:cycL:3",
                                         "usl2:p=3",   "annular:n=1",   "annular:n=2"};

}  // namespace

int main() {
    run(1, "Cartan matrices up to simultaneous permutation, under 60 s", [](Crit& c) {
        auto t0 = Clock::now();
        const std::vector<std::pair<std::string, Matrix>> want = {
            {"zigzag:A:3", ints({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}})},
            {"zigzag:cycS:3", ints({{2, 1, 1}, {1, 2, 1}, {1, 1, 2}})},
            {"zigzag:cycL:3", ints({{3, 3, 3}, {3, 3, 3}, {3, 3, 3}})},
            {"usl2:p=3", ints({{2, 2, 0}, {2, 2, 0}, {0, 0, 1}})},
            {"annular:n=1", ints({{2, 2}, {2, 2}})},
            {"annular:n=2", ints({{4, 2, 2, 4, 2, 4},
                                  {2, 4, 4, 2, 4, 2},
                                  {2, 4, 4, 2, 4, 2},
                                  {4, 2, 2, 4, 2, 4},
                                  {2, 4, 4, 2, 4, 2},
                                  {4, 2, 2, 4, 2, 4}})}};
        for (const auto& [spec, M] : want)
            c.check(equal_up_to_simultaneous_permutation(analysis(spec).C.C, M), spec);
        c.check(seconds_since(t0) < 60.0, "runtime");
    });

    run(2, "decomposition matrices and C = D^T D", [](Crit& c) {
        const std::vector<std::pair<std::string, Matrix>> want = {
            {"zigzag:A:3", ints({{1, 0, 0}, {1, 1, 0}, {0, 1, 1}, {0, 0, 1}})},
            {"zigzag:cycS:3", ints({{1, 0, 1}, {1, 1, 0}, {0, 1, 1}})},
            {"zigzag:cycL:3", ints({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}})},
            {"usl2:p=3", ints({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}})}};
        for (const auto& [spec, M] : want) c.check(equal_up_to_row_col_permutation(analysis(spec).D, M), spec);
        for (const auto& spec : kSeven) {
            const auto& a = analysis(spec);
            c.check(a.C.C == matmul(transpose(a.D), a.D), "reciprocity " + spec);
        }
    });

    run(3, "dimensions", [](Crit& c) {
        for (int p : {3, 5, 7})
            c.check(fam("usl2:p=" + std::to_string(p)).datum().alg->dim() == std::size_t(p * p * p),
                    "usl2 p=" + std::to_string(p));
        c.check(fam("annular:n=2").datum().alg->dim() == 108, "K2");
        const auto& K3 = *fam("annular:n=3").annular;
        c.check(K3.dim() == 1664, "K3");
        std::set<std::size_t> pd;
        for (std::size_t s = 0; s < K3.cups.size(); ++s) pd.insert(projective_dimension(K3, s));
        c.check(pd == std::set<std::size_t>{80, 88}, "K3 projective dims");
    });

    run(4, "u(sl2) Gram matrices diag((S!)^2 binom(lambda,S)) mod p", [](Crit& c) {
        for (int p : {3, 5, 7}) {
            const auto& d = fam("usl2:p=" + std::to_string(p)).datum();
            auto f = FieldSpec::prime(p);
            for (int l = 0; l < p; ++l) {
                Matrix want(f, p, p);
                for (int S = 0; S < p; ++S) {
                    std::int64_t fact = 1, binom = 1;
                    for (int k = 1; k <= S; ++k) fact = fact * k % p;
                    for (int k = 0; k < S; ++k) binom = binom * (l - k) / (k + 1);
                    want(S, S) = Scalar(f, fact * fact % p * (binom % p));
                }
                c.check(gram_matrix(d, l) == want, "p=" + std::to_string(p) + " lambda=" + std::to_string(l));
            }
        }
        const auto& d3 = fam("usl2:p=3").datum();
        const std::vector<std::vector<std::int64_t>> diag{{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
        for (int l = 0; l < 3; ++l) {
            auto g = gram_matrix(d3, l);
            for (int S = 0; S < 3; ++S) c.check(g(S, S).residue() == diag[l][S], "p=3 table");
        }
    });

    run(5, "axioms hold on 7 data and fail with a witness on a reversed order", [](Crit& c) {
        for (const auto& spec : kSeven) c.check(verify_cell_datum(fam(spec).datum()).all_pass(), spec);
        const auto& d = fam("zigzag:A:3").datum();
        std::size_t e = 0;
        while (e < d.E.size() && d.hasse(e).empty()) ++e;
        auto rep = verify_cell_datum(with_reversed_order(d, e));
        bool witnessed = false;
        for (const auto& a : rep.axioms)
            if (!a.pass && !a.witness.empty()) witnessed = true;
        c.check(!rep.all_pass() && witnessed, "reversed order");
    });

    run(6, "surgery order-independence and associativity, under 10 min", [](Crit& c) {
        auto t0 = Clock::now();
        for (int n : {1, 2}) {
            const auto& A = *fam("annular:n=" + std::to_string(n)).annular;
            std::size_t bad = 0;
            for (std::size_t i = 0; i < A.dim(); ++i)
                for (std::size_t j = 0; j < A.dim(); ++j) {
                    if (A.basis[i].T != A.basis[j].S) continue;
                    auto ref = annular_multiply(A, i, j);
                    for (const auto& o : admissible_orders(A.basis[i].T))
                        if (annular_multiply(A, i, j, o) != ref) ++bad;
                }
            c.check(bad == 0, "order independence n=" + std::to_string(n));
        }
        const auto& K3 = *fam("annular:n=3").annular;
        std::mt19937_64 rng(2024);
        std::size_t bad = 0;
        for (int k = 0; k < 1000; ++k) {
            std::size_t i = rng() % K3.dim(), j;
            do j = rng() % K3.dim();
            while (K3.basis[j].S != K3.basis[i].T);
            auto orders = admissible_orders(K3.basis[i].T);
            if (annular_multiply(K3, i, j, orders[rng() % orders.size()]) != annular_multiply(K3, i, j)) ++bad;
        }
        c.check(bad == 0, "K3 random products");
        // Triples with matching middles; others multiply to zero on both sides.
        for (int n : {1, 2, 3}) {
            const auto& A = *fam("annular:n=" + std::to_string(n)).annular;
            const auto& alg = *A.datum.alg;
            auto f = alg.field();
            std::map<std::string, std::vector<std::size_t>> by_left;
            for (std::size_t i = 0; i < A.dim(); ++i) by_left[A.basis[i].S.to_string()].push_back(i);
            auto next = [&](std::size_t i) {
                const auto& v = by_left.at(A.basis[i].T.to_string());
                return v[rng() % v.size()];
            };
            std::size_t fails = 0, nonzero = 0;
            for (int k = 0; k < 10000; ++k) {
                std::size_t i = rng() % A.dim(), j = next(i), l = next(j);
                auto x = Element::basis(f, i), y = Element::basis(f, j), z = Element::basis(f, l);
                auto lhs = multiply(multiply(x, y, alg), z, alg);
                if (lhs != multiply(x, multiply(y, z, alg), alg)) ++fails;
                nonzero += !lhs.is_zero();
            }
            c.check(fails == 0, "associativity n=" + std::to_string(n));
            c.check(nonzero > 0, "associativity n=" + std::to_string(n) + " only saw zero products");
        }
        c.check(seconds_since(t0) < 600.0, "runtime");
    });

    run(7, "Frobenius form nondegenerate on K1, K2; no algebra is semisimple", [](Crit& c) {
        for (int n : {1, 2}) {
            const auto& A = *fam("annular:n=" + std::to_string(n)).annular;
            c.check(rank(frobenius_gram(A)) == A.dim(), "sigma n=" + std::to_string(n));
        }
        for (const auto& spec : kSeven) c.check(!is_semisimple(analysis(spec).ss), spec);
    });

    run(8, "annular fastpath D and projective dimensions", [](Crit& c) {
        for (int n : {1, 2}) {
            const std::string spec = "annular:n=" + std::to_string(n);
            const auto& a = analysis(spec);
            try {
                decomposition_fastpath(*fam(spec).annular, a.ss.X0, &a.D);
            } catch (const Error&) {
                c.check(false, "fastpath " + spec);
            }
        }
        for (int n : {1, 2, 3}) {
            const auto& A = *fam("annular:n=" + std::to_string(n)).annular;
            for (std::size_t s = 0; s < A.cups.size(); ++s) {
                std::size_t want = 0;
                for (const auto& nu : orientations_of(A.cups[s]))
                    for (const auto& T : A.cups) want += orients(T, nu);
                c.check(projective_dimension(A, s) == want, "dim P n=" + std::to_string(n));
            }
        }
    });

    run(9, "End(Delta) is the field on X0; determinants of Cartan matrices", [](Crit& c) {
        for (const auto& spec : kSeven) {
            const auto& a = analysis(spec);
            const auto& alg = *fam(spec).datum().alg;
            for (auto l : a.ss.X0)
                c.check(hom_space(a.ss.delta[l], a.ss.delta[l], alg).size() == 1, "End " + spec);
        }
        for (auto spec : {"zigzag:cycL:3", "zigzag:cycL:4", "usl2:p=3", "usl2:p=5", "annular:n=1", "annular:n=2"})
            c.check(analysis(spec).C.det.is_zero(), std::string("det 0 ") + spec);
        for (int n = 3; n <= 6; ++n) {
            auto spec = "zigzag:A:" + std::to_string(n);
            auto det = analysis(spec).C.det;
            c.check(!det.is_zero() && det.rational() > 0, "det > 0 " + spec);
        }
    });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
