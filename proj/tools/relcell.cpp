#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "relcell/family.hpp"

using namespace relcell;
using nlohmann::json;

namespace {

struct Output {
    json j;
    std::string csv;
    std::string pretty;
};

struct CheckFailed {
    Output out;
};

std::string csv_matrix(const Matrix& m) {
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t k = 0; k < m.cols(); ++k) s += (k ? "," : "") + m(i, k).to_string();
        s += "\n";
    }
    return s;
}

std::string pretty_matrix(const Matrix& m, const std::vector<std::string>& rows, const std::vector<std::string>& cols) {
    std::size_t w = 1, lw = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) w = std::max(w, m(i, k).to_string().size());
    for (const auto& c : cols) w = std::max(w, c.size());
    for (const auto& r : rows) lw = std::max(lw, r.size());
    std::ostringstream os;
    os << std::setw(static_cast<int>(lw)) << "";
    for (const auto& c : cols) os << " " << std::setw(static_cast<int>(w)) << c;
    os << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << std::setw(static_cast<int>(lw)) << rows[i];
        for (std::size_t k = 0; k < m.cols(); ++k) os << " " << std::setw(static_cast<int>(w)) << m(i, k).to_string();
        os << "\n";
    }
    return os.str();
}

json json_matrix(const Matrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) {
            const auto& x = m(i, k);
            try {
                r.push_back(x.to_int64());
            } catch (const Error&) {
                r.push_back(x.to_string());
            }
        }
        a.push_back(r);
    }
    return a;
}

std::vector<std::string> pick(const std::vector<std::string>& X, const std::vector<std::size_t>& idx) {
    std::vector<std::string> out;
    for (auto i : idx) out.push_back(X[i]);
    return out;
}

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse:
        case ErrorKind::InvalidSpec:
        case ErrorKind::Unsupported:
        case ErrorKind::UnsupportedCharacteristic:
        case ErrorKind::SizeLimit:
        case ErrorKind::AlgebraMismatch:
        case ErrorKind::FieldMismatch:
            return 2;
        default:
            return 1;
    }
}

Output cmd_build(const Family& fam) {
    const auto& d = fam.datum();
    Output o;
    o.j = {{"algebra", d.name},
           {"dim", d.alg->dim()},
           {"field", d.alg->field().to_string()},
           {"X", d.X},
           {"E", d.E_names},
           {"materialized", d.alg->is_materialized()}};
    std::ostringstream c, p;
    c << "algebra," << d.name << "\ndim," << d.alg->dim() << "\nfield," << d.alg->field().to_string() << "\nX,"
      << d.X.size() << "\nE," << d.E.size() << "\n";
    p << d.name << ": dim " << d.alg->dim() << " over " << d.alg->field().to_string() << ", |X| = " << d.X.size()
      << ", |E| = " << d.E.size() << (d.alg->is_materialized() ? "" : " (products computed on demand)") << "\n";
    o.csv = c.str();
    o.pretty = p.str();
    return o;
}

Output cmd_verify(const Family& fam, const VerifyOptions& opt) {
    const auto& d = fam.datum();
    auto rep = verify_cell_datum(d, opt);
    Output o;
    o.j = {{"algebra", d.name}, {"all_pass", rep.all_pass()}, {"axioms", rep.to_json()}};
    std::ostringstream c, p;
    for (const auto& a : rep.axioms) {
        c << a.axiom << "," << (a.pass ? "PASS" : "FAIL") << "," << json(a.witness).dump() << "\n";
        p << (a.pass ? "PASS " : "FAIL ") << a.axiom;
        if (!a.pass) p << "  witness: " << a.witness;
        p << "\n";
    }
    o.csv = c.str();
    o.pretty = p.str();
    if (!rep.all_pass()) throw CheckFailed{o};
    return o;
}

Output cmd_cartan(const Family& fam) {
    const auto& d = fam.datum();
    auto ss = simple_set(d);
    auto D = decomposition_matrix(d, ss);
    auto cr = cartan_matrix(d, ss, D);
    auto names = pick(d.X, ss.X0);
    Output o;
    json minors = json::array();
    for (const auto& m : cr.leading_minors) minors.push_back(m.to_string());
    o.j = {{"algebra", d.name}, {"labels", names},       {"C", json_matrix(cr.C)}, {"det", cr.det.to_string()},
           {"psd", cr.psd},     {"leading_minors", minors}};
    o.csv = csv_matrix(cr.C);
    o.pretty = pretty_matrix(cr.C, names, names) + "det " + cr.det.to_string() +
               (cr.psd ? ", positive semidefinite\n" : ", not positive semidefinite\n");
    return o;
}

Output cmd_decomp(const Family& fam) {
    const auto& d = fam.datum();
    auto ss = simple_set(d);
    auto D = decomposition_matrix(d, ss);
    auto cols = pick(d.X, ss.X0);
    Output o;
    o.j = {{"algebra", d.name}, {"rows", d.X}, {"cols", cols}, {"D", json_matrix(D)}};
    o.pretty = pretty_matrix(D, d.X, cols);
    if (fam.kind == FamilyKind::Annular) {
        decomposition_fastpath(*fam.annular, ss.X0, &D);
        o.j["fastpath_matches"] = true;
        o.pretty += "orientation fastpath agrees\n";
    }
    o.csv = csv_matrix(D);
    return o;
}

Output cmd_gram(const Family& fam, const std::string& label, std::uint64_t seed) {
    const auto& d = fam.datum();
    std::vector<std::size_t> ls;
    if (!label.empty()) ls.push_back(d.label_index(label));
    else
        for (std::size_t l = 0; l < d.X.size(); ++l) ls.push_back(l);
    Output o;
    o.j = {{"algebra", d.name}, {"gram", json::object()}};
    for (auto l : ls) {
        auto G = gram_matrix(d, l, seed);
        o.j["gram"][d.X[l]] = {{"basis", d.M[l]}, {"matrix", json_matrix(G)}, {"rank", rank(G)}};
        if (ls.size() > 1) o.csv += "# " + d.X[l] + "\n";
        o.csv += csv_matrix(G);
        o.pretty += "Gram form on Delta(" + d.X[l] + "), rank " + std::to_string(rank(G)) + "\n" +
                    pretty_matrix(G, d.M[l], d.M[l]);
    }
    return o;
}

Output cmd_simples(const Family& fam) {
    const auto& d = fam.datum();
    auto ss = simple_set(d);
    Output o;
    json arr = json::array();
    std::ostringstream c, p;
    for (std::size_t k = 0; k < ss.X0.size(); ++k) {
        const auto& name = d.X[ss.X0[k]];
        arr.push_back({{"label", name}, {"dim", ss.dims[k]}, {"end_dim", ss.end_dims[k]}});
        c << name << "," << ss.dims[k] << "," << ss.end_dims[k] << "\n";
        p << "L(" << name << "): dim " << ss.dims[k] << ", dim End " << ss.end_dims[k] << "\n";
    }
    o.j = {{"algebra", d.name}, {"simples", arr}, {"semisimple", is_semisimple(ss)}};
    if (fam.kind == FamilyKind::USl2) {
        o.j["note"] = "dim L(lambda) is the rank of the Gram form, lambda+1";
        p << "note: dim L(lambda) is the rank of the Gram form, lambda+1\n";
    }
    p << (is_semisimple(ss) ? "semisimple\n" : "not semisimple\n");
    o.csv = c.str();
    o.pretty = p.str();
    return o;
}

json circles_json(const Annular& A, std::size_t i) {
    const auto& b = A.basis[i];
    json arr = json::array();
    for (const auto& c : circles(b.S, b.T, b.lambda))
        arr.push_back({{"vertices", c.vertices},
                       {"wrapping_arcs", c.wrapping_arcs},
                       {"essential", c.essential},
                       {"orientation", to_string(c.orientation)}});
    return arr;
}

Output cmd_mult(const Family& fam, const std::string& a, const std::string& b, bool with_circles) {
    const auto& d = fam.datum();
    auto x = fam.parse(a), y = fam.parse(b);
    auto z = multiply(x, y, *d.alg);
    Output o;
    json terms = json::array();
    std::string csv;
    for (const auto& [i, c] : z.terms()) {
        json t = {{"basis", fam.format_basis(i)}, {"coeff", c.to_string()}};
        if (with_circles && fam.kind == FamilyKind::Annular) t["circles"] = circles_json(*fam.annular, i);
        terms.push_back(t);
        csv += json(fam.format_basis(i)).dump() + "," + c.to_string() + "\n";
    }
    o.j = {{"algebra", d.name}, {"a", fam.format(x)}, {"b", fam.format(y)}, {"result", terms}};
    if (with_circles && fam.kind == FamilyKind::Annular) {
        json in = json::array();
        for (const auto* e : {&x, &y})
            for (const auto& [i, c] : e->terms()) in.push_back({{"basis", fam.format_basis(i)}, {"circles", circles_json(*fam.annular, i)}});
        o.j["inputs"] = in;
    }
    o.csv = csv;
    o.pretty = fam.format(z) + "\n";
    return o;
}

Output cmd_core(const Family& fam, const std::string& idem, const VerifyOptions& opt) {
    const auto& d = fam.datum();
    std::size_t e = d.E.size();
    for (std::size_t k = 0; k < d.E_names.size(); ++k)
        if (d.E_names[k] == idem) e = k;
    if (e == d.E.size()) {
        try {
            std::size_t pos = 0;
            unsigned long v = std::stoul(idem, &pos);
            if (pos == idem.size() && v < d.E.size()) e = v;
        } catch (const std::logic_error&) {
        }
    }
    if (e == d.E.size()) throw Error(ErrorKind::Parse, "unknown idempotent '" + idem + "'");
    auto core = core_subalgebra(d, e);
    auto rep = verify_cell_datum(core, opt);
    Output o;
    o.j = {{"algebra", core.name},
           {"dim", core.alg->dim()},
           {"X", core.X},
           {"all_pass", rep.all_pass()},
           {"axioms", rep.to_json()}};
    std::ostringstream c, p;
    c << "algebra," << core.name << "\ndim," << core.alg->dim() << "\ncellular," << (rep.all_pass() ? "PASS" : "FAIL")
      << "\n";
    p << core.name << ": dim " << core.alg->dim() << ", labels";
    for (const auto& x : core.X) p << " " << x;
    p << "\n";
    for (const auto& a : rep.axioms) p << (a.pass ? "PASS " : "FAIL ") << a.axiom << (a.pass ? "" : "  " + a.witness) << "\n";
    o.csv = c.str();
    o.pretty = p.str();
    if (!rep.all_pass()) throw CheckFailed{o};
    return o;
}

Scalar sigma(const Annular& A, const Element& x, const Element& y) {
    Scalar s = Scalar::zero(A.datum.alg->field());
    for (const auto& [i, a] : x.terms())
        for (const auto& [j, b] : y.terms()) s += a * b * frobenius_form(A, i, j);
    return s;
}

Output cmd_frobenius(const Family& fam, std::uint64_t seed) {
    if (fam.kind != FamilyKind::Annular) throw Error(ErrorKind::Unsupported, "frobenius is defined for annular families");
    const auto& A = *fam.annular;
    const auto& alg = *A.datum.alg;
    if (A.dim() > 2000) throw Error(ErrorKind::SizeLimit, "frobenius Gram needs dim <= 2000");
    auto G = frobenius_gram(A);
    std::size_t r = rank(G);
    std::mt19937_64 rng(seed);
    std::size_t bad = 0, samples = 200;
    for (std::size_t t = 0; t < samples; ++t) {
        auto x = Element::basis(alg.field(), rng() % A.dim());
        auto y = Element::basis(alg.field(), rng() % A.dim());
        auto z = Element::basis(alg.field(), rng() % A.dim());
        if (sigma(A, multiply(x, y, alg), z) != sigma(A, x, multiply(y, z, alg))) ++bad;
    }
    Output o;
    bool ok = r == A.dim() && bad == 0;
    o.j = {{"algebra", A.datum.name}, {"dim", A.dim()},          {"rank", r},
           {"nondegenerate", r == A.dim()}, {"associativity_samples", samples}, {"associativity_failures", bad}};
    o.csv = "dim," + std::to_string(A.dim()) + "\nrank," + std::to_string(r) + "\nassociativity_failures," +
            std::to_string(bad) + "\n";
    o.pretty = "sigma Gram: rank " + std::to_string(r) + " of " + std::to_string(A.dim()) +
               (r == A.dim() ? " (nondegenerate)" : " (degenerate)") + "; sigma(xy,z) = sigma(x,yz) on " +
               std::to_string(samples - bad) + "/" + std::to_string(samples) + " samples\n";
    if (!ok) throw CheckFailed{o};
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relcell: relative cellular algebras, exact cell data and their representation theory"};
    app.require_subcommand(1);
    std::string format = "pretty", out_file;
    std::optional<std::size_t> max_dim;
    std::uint64_t seed = 1;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("--out", out_file, "Write output to FILE");
    app.add_option("--max-dim", max_dim, "Refuse to build algebras above this dimension");
    app.add_option("--seed", seed, "Seed for sampled checks");

    std::string family, a, b, label, idem;
    bool with_circles = false;
    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {{"build", "Build the algebra and print a summary"},
                        {"verify", "Check the relative cell datum axioms"},
                        {"cartan", "Cartan matrix C = D^T D"},
                        {"decomp", "Decomposition matrix"},
                        {"gram", "Gram forms of the cell modules"},
                        {"simples", "Simple modules"},
                        {"mult", "Multiply two elements"},
                        {"core", "Core subalgebra e R e for an idempotent of E"},
                        {"frobenius", "Frobenius form of an annular algebra"}};
    std::map<std::string, CLI::App*> cmd;
    for (const auto& s : subs) {
        auto* c = app.add_subcommand(s.name, s.help);
        c->fallthrough();
        c->add_option("family", family, "Family, e.g. zigzag:A:3, usl2:p=3, annular:n=2")->required();
        cmd[s.name] = c;
    }
    cmd["mult"]->add_option("a", a, "Left factor")->required();
    cmd["mult"]->add_option("b", b, "Right factor")->required();
    cmd["mult"]->add_flag("--circles", with_circles, "Include circle decompositions (annular)");
    cmd["gram"]->add_option("--label", label, "Only this cell label");
    cmd["core"]->add_option("idempotent", idem, "Name or index of the idempotent")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto emit = [&](const Output& o) {
        std::string text = format == "json" ? o.j.dump(2) + "\n" : format == "csv" ? o.csv : o.pretty;
        if (out_file.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_file);
            if (!f) throw Error(ErrorKind::InvalidSpec, "cannot write " + out_file);
            f << text;
        }
    };

    try {
        const std::size_t limit = resolve_max_dim(max_dim);
        Family fam = build_family(family, limit);
        VerifyOptions opt;
        opt.seed = seed;
        Output o;
        if (*cmd["build"]) o = cmd_build(fam);
        else if (*cmd["verify"]) o = cmd_verify(fam, opt);
        else if (*cmd["cartan"]) o = cmd_cartan(fam);
        else if (*cmd["decomp"]) o = cmd_decomp(fam);
        else if (*cmd["gram"]) o = cmd_gram(fam, label, seed);
        else if (*cmd["simples"]) o = cmd_simples(fam);
        else if (*cmd["mult"]) o = cmd_mult(fam, a, b, with_circles);
        else if (*cmd["core"]) o = cmd_core(fam, idem, opt);
        else if (*cmd["frobenius"]) o = cmd_frobenius(fam, seed);
        emit(o);
        return 0;
    } catch (const CheckFailed& f) {
        try {
            emit(f.out);
        } catch (const Error& e) {
            std::cerr << "relcell: " << e.what() << "\n";
        }
        return 1;
    } catch (const Error& e) {
        std::cerr << "relcell: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
}
