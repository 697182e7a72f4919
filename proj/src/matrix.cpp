#include "relcell/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace relcell {

Matrix::Matrix(FieldSpec f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(FieldSpec f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
    return m;
}

Matrix Matrix::from_ints(FieldSpec f, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(f, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw Error(ErrorKind::ShapeMismatch, "ragged rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(f, rows[i][j]);
    }
    return m;
}

Matrix Matrix::from_columns(FieldSpec f, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw Error(ErrorKind::ShapeMismatch, "column length");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Vector Matrix::row(std::size_t i) const {
    return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

Vector Matrix::column(std::size_t j) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::vector<std::vector<std::int64_t>> Matrix::to_ints() const {
    std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j).to_int64();
    return out;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "," : "") << "[";
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

// Elimination runs on raw residues or raw mpq values; Scalars are rebuilt at the end.
struct ModArith {
    using T = std::int64_t;
    std::int64_t p;
    T load(const Scalar& s) const { return s.residue(); }
    Scalar store(FieldSpec f, T v) const { return Scalar(f, v); }
    bool zero(T v) const { return v == 0; }
    T inv(T a) const {
        T r = 1, b = a, e = p - 2;
        while (e > 0) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    }
    T mul(T a, T b) const { return a * b % p; }
    // a - b*c
    T fms(T a, T b, T c) const {
        T r = (a - b * c % p) % p;
        return r < 0 ? r + p : r;
    }
    T neg(T a) const { return a == 0 ? 0 : p - a; }
    T one() const { return 1; }
};

struct RatArith {
    using T = mpq_class;
    T load(const Scalar& s) const { return s.rational(); }
    Scalar store(FieldSpec f, const T& v) const { return Scalar(f, v); }
    bool zero(const T& v) const { return sgn(v) == 0; }
    T inv(const T& a) const { return T(1 / a); }
    T mul(const T& a, const T& b) const { return T(a * b); }
    T fms(const T& a, const T& b, const T& c) const { return T(a - b * c); }
    T neg(const T& a) const { return T(-a); }
    T one() const { return T(1); }
};

template <class A>
RrefResult rref_impl(const Matrix& m, const A& ar) {
    using T = typename A::T;
    std::size_t R = m.rows(), C = m.cols();
    std::vector<T> a(R * C);
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) a[i * C + j] = ar.load(m(i, j));
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t s = r;
        while (s < R && ar.zero(a[s * C + c])) ++s;
        if (s == R) continue;
        if (s != r)
            for (std::size_t j = 0; j < C; ++j) std::swap(a[s * C + j], a[r * C + j]);
        T iv = ar.inv(a[r * C + c]);
        for (std::size_t j = c; j < C; ++j) a[r * C + j] = ar.mul(a[r * C + j], iv);
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || ar.zero(a[i * C + c])) continue;
            T f = a[i * C + c];
            for (std::size_t j = c; j < C; ++j)
                if (!ar.zero(a[r * C + j])) a[i * C + j] = ar.fms(a[i * C + j], f, a[r * C + j]);
        }
        piv.push_back(c);
        ++r;
    }
    Matrix out(m.field(), R, C);
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j)
            if (!ar.zero(a[i * C + j])) out(i, j) = ar.store(m.field(), a[i * C + j]);
    return {std::move(out), std::move(piv)};
}

template <class A>
Scalar det_impl(const Matrix& m, const A& ar) {
    using T = typename A::T;
    std::size_t n = m.rows();
    std::vector<T> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = ar.load(m(i, j));
    T d = ar.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t s = c;
        while (s < n && ar.zero(a[s * n + c])) ++s;
        if (s == n) return Scalar::zero(m.field());
        if (s != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[s * n + j], a[c * n + j]);
            d = ar.neg(d);
        }
        d = ar.mul(d, a[c * n + c]);
        T iv = ar.inv(a[c * n + c]);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (ar.zero(a[i * n + c])) continue;
            T f = ar.mul(a[i * n + c], iv);
            for (std::size_t j = c; j < n; ++j) a[i * n + j] = ar.fms(a[i * n + j], f, a[c * n + j]);
        }
    }
    return ar.store(m.field(), d);
}

}  // namespace

RrefResult rref(const Matrix& m) {
    if (m.field().is_prime()) return rref_impl(m, ModArith{m.field().p()});
    return rref_impl(m, RatArith{});
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> nullspace_basis(const Matrix& m) {
    auto [r, piv] = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<Vector> out;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        Vector v(m.cols(), Scalar::zero(m.field()));
        v[f] = -Scalar::one(m.field());
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = r(k, f);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
    if (b.size() != a.rows()) throw Error(ErrorKind::ShapeMismatch, "solve: rhs length");
    Matrix aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto [r, piv] = rref(aug);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    Vector x(a.cols(), Scalar::zero(a.field()));
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = r(k, a.cols());
    return x;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows() || a.field() != b.field())
        throw Error(ErrorKind::ShapeMismatch,
                    "matmul " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " by " +
                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    Matrix c(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
        }
    return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) throw Error(ErrorKind::ShapeMismatch, "matvec");
    Vector y(a.rows(), Scalar::zero(a.field()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero() && !x[j].is_zero()) y[i] += a(i, j) * x[j];
    return y;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.field(), m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

Matrix add(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::ShapeMismatch, "add");
    Matrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

Matrix scale(const Matrix& a, const Scalar& s) {
    Matrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
    return c;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw Error(ErrorKind::ShapeMismatch, "vstack");
    Matrix c(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
    return c;
}

Scalar determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "determinant of non-square");
    if (m.field().is_prime()) return det_impl(m, ModArith{m.field().p()});
    return det_impl(m, RatArith{});
}

std::vector<Scalar> leading_minors(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "minors of non-square");
    std::vector<Scalar> out;
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        Matrix s(m.field(), k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) s(i, j) = m(i, j);
        out.push_back(determinant(s));
    }
    return out;
}

bool is_positive_semidefinite(const Matrix& m) {
    if (m.field().is_prime()) throw Error(ErrorKind::Unsupported, "semidefiniteness needs Q");
    if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "psd of non-square");
    if (m != transpose(m)) return false;
    std::size_t n = m.rows();
    std::vector<mpq_class> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j).rational();
    for (std::size_t k = 0; k < n; ++k) {
        const mpq_class& d = a[k * n + k];
        if (sgn(d) < 0) return false;
        if (sgn(d) == 0) {
            for (std::size_t j = k + 1; j < n; ++j)
                if (sgn(a[k * n + j]) != 0) return false;
            continue;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (sgn(a[i * n + k]) == 0) continue;
            mpq_class f = a[i * n + k] / d;
            for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
        }
    }
    return true;
}

std::optional<Matrix> left_inverse(const Matrix& b) {
    std::size_t n = b.rows(), k = b.cols();
    // rref of [B | I]: the rows with pivots in the B-part give L.
    Matrix aug(b.field(), n, k + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug(i, j) = b(i, j);
        aug(i, k + i) = Scalar::one(b.field());
    }
    auto [r, piv] = rref(aug);
    if (piv.size() < k || (k > 0 && piv[k - 1] != k - 1)) return std::nullopt;
    Matrix l(b.field(), k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) l(i, j) = r(i, k + j);
    return l;
}

std::vector<std::size_t> complement_coordinates(const Matrix& b) {
    std::size_t n = b.rows(), k = b.cols();
    Matrix aug(b.field(), n, k + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug(i, j) = b(i, j);
        aug(i, k + i) = Scalar::one(b.field());
    }
    auto piv = rref(aug).pivots;
    std::vector<std::size_t> out;
    for (auto c : piv)
        if (c >= k) out.push_back(c - k);
    return out;
}

namespace {

bool simul_search(const Matrix& a, const Matrix& b, std::vector<std::size_t>& perm,
                  std::vector<bool>& used, std::size_t i) {
    std::size_t n = a.rows();
    if (i == n) return true;
    for (std::size_t c = 0; c < n; ++c) {
        if (used[c]) continue;
        bool ok = true;
        perm[i] = c;
        for (std::size_t j = 0; j <= i && ok; ++j)
            ok = a(i, j) == b(c, perm[j]) && a(j, i) == b(perm[j], c);
        if (!ok) continue;
        used[c] = true;
        if (simul_search(a, b, perm, used, i + 1)) return true;
        used[c] = false;
    }
    return false;
}

}  // namespace

bool equal_up_to_simultaneous_permutation(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) return false;
    std::vector<std::size_t> perm(a.rows());
    std::vector<bool> used(a.rows(), false);
    return simul_search(a, b, perm, used, 0);
}

bool equal_up_to_row_col_permutation(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto col_key = [](const Matrix& m, const std::vector<std::size_t>& rows, std::size_t j) {
        std::vector<std::string> k;
        for (auto r : rows) k.push_back(m(r, j).to_string());
        return k;
    };
    std::vector<std::size_t> idn(n);
    std::iota(idn.begin(), idn.end(), 0);
    std::vector<std::vector<std::string>> ca;
    for (std::size_t j = 0; j < a.cols(); ++j) ca.push_back(col_key(a, idn, j));
    std::sort(ca.begin(), ca.end());
    do {
        std::vector<std::vector<std::string>> cb;
        for (std::size_t j = 0; j < b.cols(); ++j) cb.push_back(col_key(b, perm, j));
        std::sort(cb.begin(), cb.end());
        if (ca == cb) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace relcell
