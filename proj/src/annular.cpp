#include "relcell/annular.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_map>

namespace relcell {

// ---------------------------------------------------------------- diagrams

CupDiagram::CupDiagram(int n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
    if (n < 1) throw Error(ErrorKind::InvalidSpec, "cup diagram rank must be >= 1");
    if (static_cast<int>(arcs_.size()) != n)
        throw Error(ErrorKind::InvalidSpec, "cup diagram of rank " + std::to_string(n) + " needs " +
                                                std::to_string(n) + " arcs");
    std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) { return a.p < b.p; });
    partner_.assign(2 * n + 1, 0);
    arc_of_.assign(2 * n + 1, -1);
    wrap_.assign(2 * n + 1, 0);
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
        const auto& a = arcs_[k];
        if (a.p < 1 || a.q > 2 * n || a.p >= a.q)
            throw Error(ErrorKind::InvalidSpec, "bad arc " + std::to_string(a.p) + "," + std::to_string(a.q));
        for (int v : {a.p, a.q}) {
            if (arc_of_[v] >= 0) throw Error(ErrorKind::InvalidSpec, "vertex " + std::to_string(v) + " used twice");
            arc_of_[v] = static_cast<int>(k);
            wrap_[v] = a.wrap;
        }
        partner_[a.p] = a.q;
        partner_[a.q] = a.p;
    }
    for (std::size_t i = 0; i < arcs_.size(); ++i)
        for (std::size_t j = i + 1; j < arcs_.size(); ++j)
            if (!arcs_compatible(n, arcs_[i], arcs_[j]))
                throw Error(ErrorKind::InvalidSpec, "arcs cross in " + to_string());
}

bool CupDiagram::all_staying() const {
    return std::none_of(arcs_.begin(), arcs_.end(), [](const Arc& a) { return a.wrap; });
}

std::string CupDiagram::to_string() const {
    std::string s;
    for (const auto& a : arcs_) {
        if (!s.empty()) s += ",";
        s += std::to_string(a.p) + (a.wrap ? "~" : "-") + std::to_string(a.q);
    }
    return s;
}

CupDiagram CupDiagram::parse(int n, const std::string& s) {
    std::vector<Arc> arcs;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto k = tok.find_first_of("-~");
        if (k == std::string::npos || k == 0 || k + 1 == tok.size())
            throw Error(ErrorKind::Parse, "bad arc '" + tok + "' in '" + s + "'");
        Arc a;
        try {
            a.p = std::stoi(tok.substr(0, k));
            a.q = std::stoi(tok.substr(k + 1));
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, "bad arc '" + tok + "'");
        }
        a.wrap = tok[k] == '~';
        if (a.p > a.q) std::swap(a.p, a.q);
        arcs.push_back(a);
    }
    try {
        return CupDiagram(n, arcs);
    } catch (const Error& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

std::vector<int> arc_coverage(int n, const Arc& a, bool closed) {
    std::vector<int> out;
    for (int v = 1; v <= 2 * n; ++v) {
        bool inside = a.wrap ? (v > a.q || v < a.p) : (v > a.p && v < a.q);
        bool end = v == a.p || v == a.q;
        if (inside || (closed && end)) out.push_back(v);
    }
    return out;
}

bool arcs_compatible(int n, const Arc& a, const Arc& b) {
    auto ca = arc_coverage(n, a, true), cb = arc_coverage(n, b, true);
    auto oa = arc_coverage(n, a, false), ob = arc_coverage(n, b, false);
    auto subset = [](const std::vector<int>& x, const std::vector<int>& y) {
        return std::includes(y.begin(), y.end(), x.begin(), x.end());
    };
    std::vector<int> both;
    std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(both));
    return both.empty() || subset(ca, ob) || subset(cb, oa);
}

namespace {

int wkey(char c) { return c == 'v' ? 0 : 1; }

void check_weight(int n, const Weight& w) {
    if (static_cast<int>(w.size()) != 2 * n) throw Error(ErrorKind::Parse, "weight '" + w + "' has wrong length");
    int v = 0;
    for (char c : w) {
        if (c != 'v' && c != '^') throw Error(ErrorKind::Parse, "weight '" + w + "' uses symbols other than v, ^");
        v += c == 'v';
    }
    if (v != n) throw Error(ErrorKind::Parse, "weight '" + w + "' is not balanced");
}

}  // namespace

bool weight_less(const Weight& a, const Weight& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](char x, char y) { return wkey(x) < wkey(y); });
}

std::vector<Weight> all_weights(int n) {
    std::vector<Weight> out;
    Weight w(2 * n, '^');
    for (int i = 0; i < n; ++i) w[i] = 'v';
    // v < ^ so the v-heavy prefix is the smallest permutation
    std::string bits(2 * n, '1');
    for (int i = 0; i < n; ++i) bits[i] = '0';
    do {
        Weight x(2 * n, '^');
        for (int i = 0; i < 2 * n; ++i) x[i] = bits[i] == '0' ? 'v' : '^';
        out.push_back(x);
    } while (std::next_permutation(bits.begin(), bits.end()));
    return out;
}

std::vector<CupDiagram> enumerate_cup_diagrams(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidSpec, "rank must be >= 1");
    std::vector<CupDiagram> out;
    std::vector<Arc> cur;
    std::vector<char> used(2 * n + 1, 0);
    std::function<void()> rec = [&]() {
        int p = 1;
        while (p <= 2 * n && used[p]) ++p;
        if (p > 2 * n) {
            out.emplace_back(n, cur);
            return;
        }
        used[p] = 1;
        for (int q = p + 1; q <= 2 * n; ++q) {
            if (used[q]) continue;
            for (bool w : {false, true}) {
                Arc a{p, q, w};
                bool ok = std::all_of(cur.begin(), cur.end(), [&](const Arc& b) { return arcs_compatible(n, a, b); });
                if (!ok) continue;
                used[q] = 1;
                cur.push_back(a);
                rec();
                cur.pop_back();
                used[q] = 0;
            }
        }
        used[p] = 0;
    };
    rec();
    std::sort(out.begin(), out.end(), [](const CupDiagram& a, const CupDiagram& b) {
        return weight_less(anticlockwise_weight(a), anticlockwise_weight(b));
    });
    return out;
}

bool orients(const CupDiagram& S, const Weight& w) {
    if (static_cast<int>(w.size()) != 2 * S.n()) return false;
    for (const auto& a : S.arcs())
        if (w[a.p - 1] == w[a.q - 1]) return false;
    return true;
}

std::vector<Weight> orientations_of(const CupDiagram& S) {
    std::vector<Weight> out;
    const int n = S.n();
    for (int mask = 0; mask < (1 << n); ++mask) {
        Weight w(2 * n, 'v');
        for (int k = 0; k < n; ++k) {
            const auto& a = S.arcs()[k];
            bool up_first = (mask >> k) & 1;
            w[a.p - 1] = up_first ? '^' : 'v';
            w[a.q - 1] = up_first ? 'v' : '^';
        }
        out.push_back(w);
    }
    std::sort(out.begin(), out.end(), weight_less);
    return out;
}

Weight anticlockwise_weight(const CupDiagram& S) {
    Weight w(2 * S.n(), 'v');
    for (const auto& a : S.arcs()) {
        w[a.p - 1] = a.wrap ? '^' : 'v';
        w[a.q - 1] = a.wrap ? 'v' : '^';
    }
    return w;
}

Weight flip(const Weight& w) {
    Weight r = w;
    for (auto& c : r) c = c == 'v' ? '^' : 'v';
    return r;
}

Weight rotate(const Weight& w) {
    if (w.empty()) return w;
    return w.back() + w.substr(0, w.size() - 1);
}

CupDiagram rotate(const CupDiagram& S) {
    const int m = 2 * S.n();
    std::vector<Arc> arcs;
    for (const auto& a : S.arcs()) {
        // coverage runs cyclically upwards from `from` to `to`
        int from = a.wrap ? a.q : a.p, to = a.wrap ? a.p : a.q;
        from = from % m + 1;
        to = to % m + 1;
        if (from < to) arcs.push_back({from, to, false});
        else arcs.push_back({to, from, true});
    }
    return CupDiagram(S.n(), arcs);
}

int staying_shift(const CupDiagram& S) {
    CupDiagram r = S;
    for (int k = 0; k < 2 * S.n(); ++k) {
        if (r.all_staying()) return k;
        r = rotate(r);
    }
    throw Error(ErrorKind::Internal, "no rotation of " + S.to_string() + " is of staying type");
}

bool dominance_less(const Weight& mu, const Weight& lambda) {
    if (mu.size() != lambda.size() || mu == lambda) return false;
    int a = 0, b = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        a += mu[i] == 'v';
        b += lambda[i] == 'v';
        if (a > b) return false;
    }
    return a == b;
}

bool order_less(const CupDiagram& S, const Weight& mu, const Weight& lambda) {
    int k = staying_shift(S);
    Weight m = mu, l = lambda;
    for (int i = 0; i < k; ++i) {
        m = rotate(m);
        l = rotate(l);
    }
    return dominance_less(m, l);
}

std::string to_string(CircleOrientation o) {
    switch (o) {
        case CircleOrientation::None: return "none";
        case CircleOrientation::Anticlockwise: return "anticlockwise";
        case CircleOrientation::Clockwise: return "clockwise";
        case CircleOrientation::Leftwards: return "leftwards";
        case CircleOrientation::Rightwards: return "rightwards";
    }
    return "?";
}

// ---------------------------------------------------------------- strands

namespace {

enum Dir { Down = 0, Up = 1 };

struct Edge {
    int to = -1;
    int disp = 0;  // displacement in the universal cover
    bool uturn = true;
    bool wrap = false;
};

// Points on one or two dotted lines; each point has one strand below and one above.
struct Strands {
    int n = 1;
    std::vector<int> pos;  // 1..2n
    std::vector<Edge> down, up;
    std::size_t size() const { return pos.size(); }
    const Edge& edge(int pt, Dir d) const { return d == Down ? down[pt] : up[pt]; }
};

Edge arc_edge(const CupDiagram& D, int from_pos, int base) {
    const int m = 2 * D.n();
    int to = D.partner(from_pos);
    Edge e;
    e.to = base + to - 1;
    e.wrap = D.wraps_at(from_pos);
    if (!e.wrap) e.disp = to - from_pos;
    else e.disp = from_pos < to ? (to - m) - from_pos : (to + m) - from_pos;
    return e;
}

struct Trace {
    std::vector<std::pair<int, Dir>> steps;  // point and the direction the strand passes through it
    int disp = 0;
    int wraps = 0;
    int min_point = -1;  // a point of minimal lifted position
};

Trace trace(const Strands& st, int start, Dir dir) {
    Trace t;
    int pt = start, x = st.pos[start], best = x;
    Dir d = dir;
    t.min_point = start;
    for (std::size_t guard = 0; guard <= 2 * st.size() + 2; ++guard) {
        t.steps.emplace_back(pt, d);
        const Edge& e = st.edge(pt, d);
        x += e.disp;
        t.disp += e.disp;
        t.wraps += e.wrap;
        pt = e.to;
        if (e.uturn) d = d == Down ? Up : Down;
        if (x < best) {
            best = x;
            t.min_point = pt;
        }
        if (pt == start && d == dir) return t;
    }
    throw Error(ErrorKind::Internal, "strand traversal does not close");
}

std::vector<int> points_of(const Trace& t) {
    std::vector<int> v;
    for (auto& s : t.steps) v.push_back(s.first);
    std::sort(v.begin(), v.end());
    return v;
}

char label_for(Dir d) { return d == Down ? 'v' : '^'; }

// Orientation of the circle through `start` under labels L; throws Internal if inconsistent.
CircleOrientation classify(const Strands& st, const std::string& L, int start) {
    Dir d0 = L[start] == 'v' ? Down : Up;
    Trace t = trace(st, start, d0);
    for (auto& [pt, d] : t.steps)
        if (L[pt] != label_for(d)) throw Error(ErrorKind::Internal, "inconsistent orientation on a circle");
    if (t.disp != 0) return t.disp < 0 ? CircleOrientation::Leftwards : CircleOrientation::Rightwards;
    return L[t.min_point] == 'v' ? CircleOrientation::Anticlockwise : CircleOrientation::Clockwise;
}

bool essential_at(const Strands& st, int start) { return trace(st, start, Down).disp != 0; }

// Relabels the circle through start consistently so that start keeps label c.
void orient_matching(const Strands& st, std::string& L, int start, char c) {
    Trace t = trace(st, start, c == 'v' ? Down : Up);
    for (auto& [pt, d] : t.steps) L[pt] = label_for(d);
}

void orient_as(const Strands& st, std::string& L, int start, CircleOrientation want) {
    orient_matching(st, L, start, 'v');
    if (classify(st, L, start) != want) orient_matching(st, L, start, '^');
    if (classify(st, L, start) != want) throw Error(ErrorKind::Internal, "cannot orient circle as " + to_string(want));
}

Strands circle_strands(const CupDiagram& S, const CupDiagram& T) {
    const int m = 2 * S.n();
    Strands st;
    st.n = S.n();
    st.pos.resize(m);
    st.down.resize(m);
    st.up.resize(m);
    for (int v = 1; v <= m; ++v) {
        st.pos[v - 1] = v;
        st.down[v - 1] = arc_edge(S, v, 0);
        st.up[v - 1] = arc_edge(T, v, 0);
    }
    return st;
}

// Level 0 holds S below and the remaining caps of T* above; level 1 holds the
// remaining cups of U = T below and V* above. Removed pairs become verticals.
Strands stacked_strands(const CupDiagram& S, const CupDiagram& T, const CupDiagram& V,
                        const std::vector<char>& remaining) {
    const int m = 2 * S.n();
    Strands st;
    st.n = S.n();
    st.pos.resize(2 * m);
    st.down.resize(2 * m);
    st.up.resize(2 * m);
    for (int v = 1; v <= m; ++v) {
        int a = v - 1, b = m + v - 1;
        st.pos[a] = st.pos[b] = v;
        st.down[a] = arc_edge(S, v, 0);
        st.up[b] = arc_edge(V, v, m);
        if (remaining[T.arc_at(v)]) {
            st.up[a] = arc_edge(T, v, 0);
            st.down[b] = arc_edge(T, v, m);
        } else {
            st.up[a] = Edge{b, 0, false, false};
            st.down[b] = Edge{a, 0, false, false};
        }
    }
    return st;
}

bool available(const CupDiagram& T, const std::vector<char>& remaining, int k) {
    if (!remaining[k]) return false;
    const int n = T.n();
    auto inner = arc_coverage(n, T.arcs()[k], true);
    for (std::size_t j = 0; j < T.arcs().size(); ++j) {
        if (static_cast<int>(j) == k || !remaining[j]) continue;
        auto outer = arc_coverage(n, T.arcs()[j], false);
        if (std::includes(outer.begin(), outer.end(), inner.begin(), inner.end())) return false;
    }
    return true;
}

using State = std::pair<std::string, long>;

// One surgery on the middle pair T.arcs()[k]; remaining is updated.
std::vector<State> surgery_step(const CupDiagram& S, const CupDiagram& T, const CupDiagram& V,
                                std::vector<char>& remaining, int k, const std::vector<State>& states) {
    const int m = 2 * S.n();
    const Arc arc = T.arcs()[k];
    Strands before = stacked_strands(S, T, V, remaining);
    remaining[k] = 0;
    Strands after = stacked_strands(S, T, V, remaining);
    const int c0 = arc.p - 1, c1 = m + arc.p - 1, q0 = arc.q - 1;
    auto cap_pts = points_of(trace(before, c0, Down));
    const bool split = std::binary_search(cap_pts.begin(), cap_pts.end(), c1);

    std::vector<State> out;
    for (const auto& [L0, coeff] : states) {
        if (!split) {
            auto o1 = classify(before, L0, c0), o2 = classify(before, L0, c1);
            std::string L = L0;
            // an anticlockwise circle is a unit: the result takes the other's class
            if (o1 == CircleOrientation::Anticlockwise) {
                orient_as(after, L, c0, o2);
            } else if (o2 == CircleOrientation::Anticlockwise) {
                orient_as(after, L, c0, o1);
            } else if (o1 == CircleOrientation::Clockwise || o2 == CircleOrientation::Clockwise) {
                continue;
            } else if (o1 != o2) {
                orient_as(after, L, c0, CircleOrientation::Clockwise);
            } else {
                continue;
            }
            out.emplace_back(L, coeff);
            continue;
        }
        auto o = classify(before, L0, c0);
        const bool ea = essential_at(after, c0), eb = essential_at(after, q0);
        if (o == CircleOrientation::Anticlockwise || o == CircleOrientation::Clockwise) {
            if (ea != eb) throw Error(ErrorKind::Internal, "usual circle split into usual and essential");
            if (o == CircleOrientation::Clockwise) {
                if (ea) continue;
                std::string L = L0;
                orient_as(after, L, c0, CircleOrientation::Clockwise);
                orient_as(after, L, q0, CircleOrientation::Clockwise);
                out.emplace_back(L, coeff);
                continue;
            }
            auto lo = ea ? CircleOrientation::Leftwards : CircleOrientation::Clockwise;
            auto hi = ea ? CircleOrientation::Rightwards : CircleOrientation::Anticlockwise;
            for (int swap = 0; swap < 2; ++swap) {
                std::string L = L0;
                orient_as(after, L, c0, swap ? hi : lo);
                orient_as(after, L, q0, swap ? lo : hi);
                out.emplace_back(L, coeff);
            }
            continue;
        }
        if (ea == eb) throw Error(ErrorKind::Internal, "essential circle split without an essential part");
        const int ess = ea ? c0 : q0, usual = ea ? q0 : c0;
        std::string L = L0;
        orient_as(after, L, ess, o);
        orient_as(after, L, usual, CircleOrientation::Clockwise);
        out.emplace_back(L, coeff);
    }
    return out;
}

}  // namespace

std::vector<Circle> circles(const CupDiagram& S, const CupDiagram& T, const std::optional<Weight>& w) {
    if (S.n() != T.n()) throw Error(ErrorKind::ShapeMismatch, "cup diagrams of different rank");
    if (w && (!orients(S, *w) || !orients(T, *w)))
        throw Error(ErrorKind::InvalidSpec, "weight " + *w + " does not orient " + S.to_string() + " | " + T.to_string());
    Strands st = circle_strands(S, T);
    std::vector<char> seen(st.size(), 0);
    std::vector<Circle> out;
    for (std::size_t start = 0; start < st.size(); ++start) {
        if (seen[start]) continue;
        Trace t = trace(st, static_cast<int>(start), Down);
        Circle c;
        for (int pt : points_of(t)) {
            seen[pt] = 1;
            c.vertices.push_back(st.pos[pt]);
        }
        c.wrapping_arcs = t.wraps;
        c.essential = t.disp != 0;
        if (w) c.orientation = classify(st, *w, static_cast<int>(start));
        out.push_back(c);
    }
    return out;
}

std::vector<std::vector<int>> admissible_orders(const CupDiagram& T) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::vector<char> rem(T.arcs().size(), 1);
    std::function<void()> rec = [&]() {
        if (cur.size() == rem.size()) {
            out.push_back(cur);
            return;
        }
        for (int k = 0; k < static_cast<int>(rem.size()); ++k) {
            if (!available(T, rem, k)) continue;
            rem[k] = 0;
            cur.push_back(k);
            rec();
            cur.pop_back();
            rem[k] = 1;
        }
    };
    rec();
    return out;
}

std::vector<SurgeryTerm> surgery_product(const ArcBasis& a, const ArcBasis& b, const std::vector<int>& order) {
    if (a.S.n() != b.S.n()) throw Error(ErrorKind::AlgebraMismatch, "annular elements of different rank");
    if (a.T != b.S) return {};
    const CupDiagram& T = a.T;
    std::vector<char> remaining(T.arcs().size(), 1);
    std::vector<State> states{{a.lambda + b.lambda, 1}};
    for (std::size_t step = 0; step < T.arcs().size() && !states.empty(); ++step) {
        int k = -1;
        if (order.empty()) {
            // canonical: available pair with the smallest left endpoint (arcs are sorted by p)
            for (int j = 0; j < static_cast<int>(remaining.size()) && k < 0; ++j)
                if (available(T, remaining, j)) k = j;
        } else {
            if (order.size() != T.arcs().size()) throw Error(ErrorKind::InvalidSpec, "surgery order has wrong length");
            k = order[step];
            if (k < 0 || k >= static_cast<int>(remaining.size()) || !available(T, remaining, k))
                throw Error(ErrorKind::InvalidSpec, "surgery order picks an unavailable pair");
        }
        if (k < 0) throw Error(ErrorKind::Internal, "no available cup-cap pair");
        states = surgery_step(a.S, T, b.T, remaining, k, states);
    }
    const int m = 2 * a.S.n();
    std::map<Weight, long> acc;
    for (const auto& [L, c] : states) {
        Weight nu = L.substr(0, m);
        if (L.substr(m) != nu || !orients(a.S, nu) || !orients(b.T, nu))
            throw Error(ErrorKind::Internal, "surgery produced an invalid orientation");
        acc[nu] += c;
    }
    std::vector<SurgeryTerm> out;
    for (const auto& [nu, c] : acc)
        if (c) out.push_back({nu, c});
    return out;
}

// ---------------------------------------------------------------- algebra

std::size_t Annular::cup_index(const CupDiagram& S) const {
    for (std::size_t i = 0; i < cups.size(); ++i)
        if (cups[i] == S) return i;
    throw Error(ErrorKind::Parse, "unknown cup diagram " + S.to_string());
}

std::size_t Annular::index_of(const ArcBasis& b) const {
    return datum.alg->index_of(b.lambda, b.S.to_string(), b.T.to_string());
}

std::string Annular::format(std::size_t i) const {
    const auto& b = basis.at(i);
    return b.S.to_string() + "|" + b.lambda + "|" + b.T.to_string();
}

std::size_t Annular::parse(const std::string& s) const {
    auto a = s.find('|'), c = s.rfind('|');
    if (a == std::string::npos || a == c) throw Error(ErrorKind::Parse, "expected S|lambda|T, got '" + s + "'");
    auto S = CupDiagram::parse(n, s.substr(0, a));
    auto T = CupDiagram::parse(n, s.substr(c + 1));
    Weight w = s.substr(a + 1, c - a - 1);
    check_weight(n, w);
    if (!orients(S, w) || !orients(T, w)) throw Error(ErrorKind::Parse, "weight does not orient the diagrams in '" + s + "'");
    return index_of({S, w, T});
}

std::size_t annular_dimension(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidSpec, "annular rank must be >= 1");
    if (n > 8) throw Error(ErrorKind::SizeLimit, "annular rank " + std::to_string(n) + " is too large to enumerate");
    auto cups = enumerate_cup_diagrams(n);
    std::size_t d = 0;
    for (const auto& w : all_weights(n)) {
        std::size_t k = 0;
        for (const auto& S : cups) k += orients(S, w);
        d += k * k;
    }
    return d;
}

Annular build_annular(int n, FieldSpec f, Exec ex, std::size_t max_dim) {
    const std::size_t dim = annular_dimension(n);
    if (dim > max_dim)
        throw Error(ErrorKind::SizeLimit, "annular:n=" + std::to_string(n) + " has dimension " + std::to_string(dim) +
                                              " > limit " + std::to_string(max_dim));
    Annular A;
    A.n = n;
    A.cups = enumerate_cup_diagrams(n);
    A.weights = all_weights(n);
    if (A.cups.size() != A.weights.size()) throw Error(ErrorKind::Internal, "cup diagrams and weights differ in number");
    for (std::size_t i = 0; i < A.cups.size(); ++i)
        if (anticlockwise_weight(A.cups[i]) != A.weights[i])
            throw Error(ErrorKind::Internal, "anticlockwise weights are not a bijection");

    std::vector<BasisLabel> labels;
    std::vector<std::vector<std::size_t>> M;
    for (const auto& w : A.weights) {
        std::vector<std::size_t> Ml;
        for (std::size_t s = 0; s < A.cups.size(); ++s)
            if (orients(A.cups[s], w)) Ml.push_back(s);
        for (auto s : Ml)
            for (auto t : Ml) {
                A.basis.push_back({A.cups[s], w, A.cups[t]});
                labels.push_back({w, A.cups[s].to_string(), A.cups[t].to_string()});
            }
        M.push_back(Ml);
    }
    std::unordered_map<std::string, std::size_t> where;
    for (std::size_t i = 0; i < labels.size(); ++i) where[labels[i].key()] = i;
    std::vector<std::size_t> st(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        st[i] = where.at(BasisLabel{labels[i].lambda, labels[i].T, labels[i].S}.key());

    auto basis = std::make_shared<const std::vector<ArcBasis>>(A.basis);
    auto lookup = std::make_shared<const std::unordered_map<std::string, std::size_t>>(std::move(where));
    ProductFn fn = [basis, lookup, f](std::size_t i, std::size_t j) {
        const auto& a = (*basis)[i];
        const auto& b = (*basis)[j];
        SparseVec v;
        for (const auto& t : surgery_product(a, b)) {
            std::string key = BasisLabel{t.nu, a.S.to_string(), b.T.to_string()}.key();
            v.emplace_back(lookup->at(key), Scalar(f, t.coeff));
        }
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return v;
    };
    auto alg = std::make_shared<AlgebraTable>(f, labels, st, fn, ex);

    CellDatum& d = A.datum;
    d.name = "annular:n=" + std::to_string(n);
    d.alg = alg;
    d.X = A.weights;
    for (const auto& Ml : M) {
        std::vector<std::string> names;
        for (auto s : Ml) names.push_back(A.cups[s].to_string());
        d.M.push_back(names);
        d.eps.push_back(Ml);
    }
    d.fill_C_from_labels();
    const std::size_t nx = A.weights.size();
    for (std::size_t s = 0; s < A.cups.size(); ++s) {
        const auto& S = A.cups[s];
        auto e = Element::basis(f, alg->index_of(A.weights[s], S.to_string(), S.to_string()));
        d.E.push_back(e);
        d.E_names.push_back(S.to_string());
        d.primitives.push_back(e);
        d.primitive_names.push_back(S.to_string());
        std::vector<std::vector<char>> o(nx, std::vector<char>(nx, 0));
        for (std::size_t mu = 0; mu < nx; ++mu)
            for (std::size_t la = 0; la < nx; ++la) o[mu][la] = order_less(S, A.weights[mu], A.weights[la]);
        d.orders.push_back(o);
    }
    return A;
}

Element annular_multiply(const Annular& A, std::size_t i, std::size_t j, const std::vector<int>& order) {
    const auto& alg = *A.datum.alg;
    if (order.empty()) return Element::from_sparse(alg.field(), alg.product(i, j));
    const auto& a = A.basis.at(i);
    const auto& b = A.basis.at(j);
    Element out(alg.field());
    for (const auto& t : surgery_product(a, b, order))
        out.add_term(alg.index_of(t.nu, a.S.to_string(), b.T.to_string()), Scalar(alg.field(), t.coeff));
    return out;
}

Matrix decomposition_fastpath(const Annular& A, const std::vector<std::size_t>& X0, const Matrix* generic) {
    const auto f = FieldSpec::rationals();
    Matrix D(f, A.weights.size(), X0.size());
    for (std::size_t l = 0; l < A.weights.size(); ++l)
        for (std::size_t c = 0; c < X0.size(); ++c)
            D(l, c) = Scalar(f, orients(A.cups.at(X0[c]), A.weights[l]) ? 1 : 0);
    if (generic && !(D == *generic))
        throw Error(ErrorKind::FastpathMismatch,
                    "fastpath D differs from the generic decomposition matrix:\n" + D.to_string() + "\nvs\n" +
                        generic->to_string());
    return D;
}

Scalar frobenius_form(const Annular& A, std::size_t i, std::size_t j) {
    const auto& alg = *A.datum.alg;
    const auto& a = A.basis.at(i);
    const auto& b = A.basis.at(j);
    if (a.S != b.T || a.T != b.S) return Scalar::zero(alg.field());
    const std::size_t target =
        alg.index_of(flip(anticlockwise_weight(a.S)), a.S.to_string(), a.S.to_string());
    for (const auto& [k, c] : alg.product(i, j))
        if (k == target) return c;
    return Scalar::zero(alg.field());
}

Matrix frobenius_gram(const Annular& A, Exec ex) {
    const std::size_t n = A.dim();
    Matrix G(A.datum.alg->field(), n, n);
    for_each_index(n, ex, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) G(i, j) = frobenius_form(A, i, j);
    });
    return G;
}

std::size_t projective_dimension(const Annular& A, std::size_t cup) {
    const auto& alg = *A.datum.alg;
    const auto& S = A.cups.at(cup);
    const std::size_t e = alg.index_of(A.weights[cup], S.to_string(), S.to_string());
    std::size_t count = 0;
    for (std::size_t b = 0; b < alg.dim(); ++b) {
        auto p = alg.product(b, e);
        if (p.size() == 1 && p[0].first == b && p[0].second.is_one()) ++count;
    }
    return count;
}

}  // namespace relcell
