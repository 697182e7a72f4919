#include "relcell/zigzag.hpp"

#include <deque>
#include <map>
#include <sstream>

namespace relcell {

void QuiverSpec::validate() const {
    if (variant == QuiverVariant::LineA) {
        if (n < 1 || n == 2) throw Error(ErrorKind::InvalidSpec, "line quiver needs n = 1 or n >= 3, got " + std::to_string(n));
    } else if (n < 3) {
        throw Error(ErrorKind::InvalidSpec, "cyclic quiver needs n >= 3, got " + std::to_string(n));
    }
    if (n > 64) throw Error(ErrorKind::InvalidSpec, "n too large");
}

std::string QuiverSpec::to_string() const {
    const char* v = variant == QuiverVariant::LineA ? "A" : variant == QuiverVariant::CycleShort ? "cycS" : "cycL";
    return std::string("zigzag:") + v + ":" + std::to_string(n);
}

QuiverSpec QuiverSpec::parse(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3 || parts[0] != "zigzag") throw Error(ErrorKind::InvalidSpec, "bad zigzag spec '" + s + "'");
    QuiverSpec q;
    if (parts[1] == "A") q.variant = QuiverVariant::LineA;
    else if (parts[1] == "cycS") q.variant = QuiverVariant::CycleShort;
    else if (parts[1] == "cycL") q.variant = QuiverVariant::CycleLong;
    else throw Error(ErrorKind::InvalidSpec, "unknown zigzag variant '" + parts[1] + "'");
    try {
        std::size_t pos = 0;
        q.n = std::stoi(parts[2], &pos);
        if (pos != parts[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::InvalidSpec, "bad vertex count '" + parts[2] + "'");
    }
    q.validate();
    return q;
}

ZigzagRewriter::ZigzagRewriter(QuiverSpec spec) : spec_(spec) {
    spec_.validate();
    zero_run_ = spec_.variant == QuiverVariant::CycleLong ? spec_.n : 2;
}

int ZigzagRewriter::step(int v, char dir) const {
    int w = dir == '+' ? v + 1 : v - 1;
    if (spec_.cyclic()) return (w - 1 + spec_.n) % spec_.n + 1;
    return (w < 1 || w > spec_.n) ? 0 : w;
}

bool ZigzagRewriter::valid(const Path& p) const {
    if (p.start < 1 || p.start > spec_.n) return false;
    int v = p.start;
    for (char c : p.steps) {
        if (c != '+' && c != '-') return false;
        v = step(v, c);
        if (v == 0) return false;
    }
    return true;
}

std::vector<int> ZigzagRewriter::vertices(const Path& p) const {
    std::vector<int> vs{p.start};
    for (char c : p.steps) vs.push_back(step(vs.back(), c));
    return vs;
}

std::vector<std::optional<Path>> ZigzagRewriter::rewrites(const Path& p) const {
    std::vector<std::optional<Path>> out;
    const auto vs = vertices(p);
    const int len = p.length();
    const bool line = !spec_.cyclic();
    for (int k = 0; k < len; ++k) {
        if (k + zero_run_ <= len &&
            p.steps.compare(k, zero_run_, std::string(zero_run_, p.steps[k])) == 0)
            out.push_back(std::nullopt);
        // 2-cycles at a vertex are oriented towards the predecessor.
        if (k + 1 < len && p.steps[k] == '+' && p.steps[k + 1] == '-' && (!line || vs[k] >= 2)) {
            Path q = p;
            q.steps[k] = '-';
            q.steps[k + 1] = '+';
            out.push_back(q);
        }
        if (line && k + 3 <= len) {
            if (vs[k] == 1 && p.steps.compare(k, 3, "+-+") == 0) out.push_back(std::nullopt);
            if (vs[k] == 2 && p.steps.compare(k, 3, "-+-") == 0) out.push_back(std::nullopt);
        }
    }
    return out;
}

std::optional<Path> ZigzagRewriter::normal_form(const Path& p) const {
    Path cur = p;
    for (;;) {
        auto rs = rewrites(cur);
        if (rs.empty()) return cur;
        if (!rs.front()) return std::nullopt;
        cur = *rs.front();
    }
}

std::set<std::optional<Path>> ZigzagRewriter::irreducible_descendants(const Path& p) const {
    std::set<std::optional<Path>> out;
    std::set<Path> seen{p};
    std::deque<Path> todo{p};
    while (!todo.empty()) {
        Path cur = todo.front();
        todo.pop_front();
        auto rs = rewrites(cur);
        if (rs.empty()) out.insert(cur);
        for (auto& r : rs) {
            if (!r) {
                out.insert(std::nullopt);
            } else if (seen.insert(*r).second) {
                todo.push_back(*r);
            }
        }
    }
    return out;
}

std::optional<Path> ZigzagRewriter::compose(const Path& a, const Path& b) const {
    if (end(a) != b.start) return std::nullopt;
    return normal_form(Path{a.start, a.steps + b.steps});
}

Path ZigzagRewriter::star(const Path& p) const {
    Path q{end(p), ""};
    for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) q.steps.push_back(*it == '+' ? '-' : '+');
    return q;
}

std::vector<Path> ZigzagRewriter::basis() const {
    std::vector<Path> out;
    std::set<Path> seen;
    std::deque<Path> todo;
    for (int i = 1; i <= spec_.n; ++i) {
        Path e{i, ""};
        seen.insert(e);
        out.push_back(e);
        todo.push_back(e);
    }
    while (!todo.empty()) {
        Path cur = todo.front();
        todo.pop_front();
        for (char c : {'+', '-'}) {
            Path next{cur.start, cur.steps + c};
            if (!valid(next)) continue;
            auto nf = normal_form(next);
            if (!nf || !seen.insert(*nf).second) continue;
            out.push_back(*nf);
            todo.push_back(*nf);
        }
    }
    return out;
}

std::string ZigzagRewriter::format(const Path& p) const {
    if (p.steps.empty()) return "e" + std::to_string(p.start);
    std::string s = "(";
    auto vs = vertices(p);
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "|" : "") + std::to_string(vs[i]);
    return s + ")";
}

Path ZigzagRewriter::parse(const std::string& s) const {
    auto fail = [&]() { return Error(ErrorKind::Parse, "bad path '" + s + "' for " + spec_.to_string()); };
    try {
        if (s.size() >= 2 && s[0] == 'e') {
            std::size_t pos = 0;
            int v = std::stoi(s.substr(1), &pos);
            if (pos + 1 != s.size() || v < 1 || v > spec_.n) throw fail();
            return Path{v, ""};
        }
        if (s.size() < 3 || s.front() != '(' || s.back() != ')') throw fail();
        std::vector<int> vs;
        std::stringstream ss(s.substr(1, s.size() - 2));
        for (std::string t; std::getline(ss, t, '|');) vs.push_back(std::stoi(t));
        if (vs.empty()) throw fail();
        Path p{vs[0], ""};
        for (std::size_t i = 1; i < vs.size(); ++i) {
            if (step(vs[i - 1], '+') == vs[i]) p.steps.push_back('+');
            else if (step(vs[i - 1], '-') == vs[i]) p.steps.push_back('-');
            else throw fail();
        }
        if (!valid(p)) throw fail();
        return p;
    } catch (const std::logic_error&) {
        throw fail();
    }
}

std::size_t Zigzag::index_of(const Path& p) const {
    auto nf = rw.normal_form(p);
    if (nf)
        for (std::size_t i = 0; i < paths.size(); ++i)
            if (paths[i] == *nf) return i;
    throw Error(ErrorKind::Parse, "path " + rw.format(p) + " is zero or not a basis path");
}

Element multiply_paths(const Zigzag& z, const Path& a, const Path& b) {
    FieldSpec f = z.datum.alg->field();
    auto c = z.rw.compose(a, b);
    if (!c) return Element(f);
    return Element::basis(f, z.index_of(*c));
}

namespace {

int wrap(int v, int n) { return ((v - 1) % n + n) % n + 1; }

// Strict total order from a list given bottom to top; labels are vertex numbers as in X.
std::vector<std::vector<char>> chain(const std::vector<std::string>& X, const std::vector<std::string>& bottom_up) {
    std::vector<std::vector<char>> o(X.size(), std::vector<char>(X.size(), 0));
    auto pos = [&](const std::string& x) {
        for (std::size_t i = 0; i < X.size(); ++i)
            if (X[i] == x) return i;
        throw Error(ErrorKind::Internal, "order label " + x);
    };
    for (std::size_t a = 0; a < bottom_up.size(); ++a)
        for (std::size_t b = a + 1; b < bottom_up.size(); ++b) o[pos(bottom_up[a])][pos(bottom_up[b])] = 1;
    return o;
}

struct DatumShape {
    std::vector<std::string> X;
    std::vector<std::vector<Path>> M;
    std::vector<std::vector<int>> E_vertices;  // each idempotent as a sum of e_i
    std::vector<std::string> E_names;
    std::vector<std::vector<std::string>> chains;
    std::vector<std::vector<std::size_t>> eps;
    bool primitives = true;
};

Zigzag assemble(const QuiverSpec& spec, const DatumShape& sh, FieldSpec f, Exec ex, const std::string& name) {
    ZigzagRewriter rw(spec);
    Zigzag z{spec, rw, {}, {}};
    std::vector<BasisLabel> labels;
    std::map<Path, std::size_t> where;
    for (std::size_t l = 0; l < sh.X.size(); ++l)
        for (const auto& S : sh.M[l])
            for (const auto& T : sh.M[l]) {
                auto p = rw.compose(S, rw.star(T));
                if (!p) throw Error(ErrorKind::Internal, "C(S,T) vanishes for " + rw.format(S) + "," + rw.format(T));
                if (!where.emplace(*p, z.paths.size()).second)
                    throw Error(ErrorKind::Internal, "C not injective at " + rw.format(*p));
                z.paths.push_back(*p);
                labels.push_back({sh.X[l], rw.format(S), rw.format(T)});
            }
    auto closure = rw.basis();
    if (closure.size() != z.paths.size())
        throw Error(ErrorKind::Internal, "cell basis has " + std::to_string(z.paths.size()) + " paths, closure has " +
                                             std::to_string(closure.size()));
    for (const auto& p : closure)
        if (!where.count(p)) throw Error(ErrorKind::Internal, "path " + rw.format(p) + " missing from cell basis");

    std::vector<std::size_t> st;
    for (const auto& p : z.paths) st.push_back(where.at(*rw.normal_form(rw.star(p))));
    const auto paths = z.paths;
    ProductFn fn = [rw, paths, where, f](std::size_t i, std::size_t j) {
        SparseVec v;
        auto c = rw.compose(paths[i], paths[j]);
        if (c) v.emplace_back(where.at(*c), Scalar::one(f));
        return v;
    };
    auto alg = std::make_shared<AlgebraTable>(f, labels, st, fn, ex);

    CellDatum& d = z.datum;
    d.name = name;
    d.alg = alg;
    d.X = sh.X;
    for (const auto& Ml : sh.M) {
        std::vector<std::string> names;
        for (const auto& p : Ml) names.push_back(rw.format(p));
        d.M.push_back(names);
    }
    d.fill_C_from_labels();
    auto vertex_idem = [&](int v) { return where.at(Path{v, ""}); };
    for (const auto& vs : sh.E_vertices) {
        Element e(f);
        for (int v : vs) e.add_term(vertex_idem(v), Scalar::one(f));
        d.E.push_back(e);
    }
    d.E_names = sh.E_names;
    for (const auto& c : sh.chains) d.orders.push_back(chain(sh.X, c));
    d.eps = sh.eps;
    if (sh.primitives)
        for (int v = 1; v <= spec.n; ++v) {
            d.primitives.push_back(Element::basis(f, vertex_idem(v)));
            d.primitive_names.push_back("e" + std::to_string(v));
        }
    return z;
}

}  // namespace

Zigzag build_zigzag(const QuiverSpec& spec, FieldSpec f, Exec ex) {
    spec.validate();
    const int n = spec.n;
    DatumShape sh;
    auto vname = [](int v) { return std::to_string(v); };
    if (spec.variant == QuiverVariant::LineA) {
        std::vector<int> all;
        for (int v = 1; v <= n; ++v) all.push_back(v);
        sh.E_vertices = {all};
        sh.E_names = {"1"};
        if (n == 1) {
            sh.X = {"1"};
            sh.M = {{Path{1, ""}}};
            sh.chains = {{"1"}};
        } else {
            sh.X.push_back("0");
            sh.M.push_back({Path{1, "+"}});
            for (int i = 1; i <= n; ++i) {
                sh.X.push_back(vname(i));
                if (i < n) sh.M.push_back({Path{i, ""}, Path{i + 1, "-"}});
                else sh.M.push_back({Path{n, ""}});
            }
            sh.chains = {sh.X};
        }
        for (const auto& Ml : sh.M) sh.eps.push_back(std::vector<std::size_t>(Ml.size(), 0));
    } else if (spec.variant == QuiverVariant::CycleShort) {
        std::vector<int> rest;
        for (int v = 2; v <= n; ++v) rest.push_back(v);
        sh.E_vertices = {{1}, rest};
        sh.E_names = {"e1", "eps"};
        std::vector<std::string> under_e1, under_eps;
        for (int i = 1; i <= n; ++i) {
            sh.X.push_back(vname(i));
            sh.M.push_back({Path{i, ""}, Path{wrap(i + 1, n), "-"}});
            under_eps.push_back(vname(i));
            if (i >= 2) under_e1.push_back(vname(i));
        }
        under_e1.push_back("1");
        sh.chains = {under_e1, under_eps};
        for (const auto& Ml : sh.M) {
            std::vector<std::size_t> e;
            for (const auto& S : Ml) e.push_back(S.start == 1 ? 0 : 1);
            sh.eps.push_back(e);
        }
    } else {
        for (int i = 1; i <= n; ++i) {
            sh.X.push_back(vname(i));
            std::vector<Path> Ml;
            for (int a = 0; a < n; ++a) Ml.push_back(Path{wrap(i - a, n), std::string(a, '+')});
            sh.M.push_back(Ml);
            sh.E_vertices.push_back({i});
            sh.E_names.push_back("e" + vname(i));
            std::vector<std::string> c;
            for (int k = n - 1; k >= 0; --k) c.push_back(vname(wrap(i + k, n)));
            sh.chains.push_back(c);
        }
        for (const auto& Ml : sh.M) {
            std::vector<std::size_t> e;
            for (const auto& S : Ml) e.push_back(static_cast<std::size_t>(S.start - 1));
            sh.eps.push_back(e);
        }
    }
    return assemble(spec, sh, f, ex, spec.to_string());
}

Zigzag alternate_idempotent_datum(FieldSpec f) {
    QuiverSpec spec{QuiverVariant::CycleShort, 3};
    DatumShape sh;
    sh.X = {"1", "2", "3"};
    for (int i = 1; i <= 3; ++i) sh.M.push_back({Path{i, ""}, Path{wrap(i + 1, 3), "-"}});
    sh.E_vertices = {{1}, {2}, {3}};
    sh.E_names = {"e1", "e2", "e3"};
    sh.chains = {{"3", "1", "2"}, {"1", "2", "3"}, {"2", "3", "1"}};
    for (const auto& Ml : sh.M) {
        std::vector<std::size_t> e;
        for (const auto& S : Ml) e.push_back(static_cast<std::size_t>(S.start - 1));
        sh.eps.push_back(e);
    }
    return assemble(spec, sh, f, Exec::Parallel, "zigzag:cycS:3:alt");
}

}  // namespace relcell
