#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relcell/cell.hpp"

namespace relcell {

enum class QuiverVariant { LineA, CycleShort, CycleLong };

struct QuiverSpec {
    QuiverVariant variant = QuiverVariant::LineA;
    int n = 3;

    // Throws InvalidSpec.
    void validate() const;
    bool cyclic() const { return variant != QuiverVariant::LineA; }
    std::string to_string() const;
    // "zigzag:A:3", "zigzag:cycS:4", "zigzag:cycL:5"
    static QuiverSpec parse(const std::string& s);
};

// Path from `start` following steps '+' (i -> i+1) and '-' (i -> i-1).
struct Path {
    int start = 1;
    std::string steps;

    int length() const { return static_cast<int>(steps.size()); }
    friend bool operator==(const Path& a, const Path& b) { return a.start == b.start && a.steps == b.steps; }
    friend bool operator<(const Path& a, const Path& b) {
        return a.start != b.start ? a.start < b.start : a.steps < b.steps;
    }
};

class ZigzagRewriter {
public:
    explicit ZigzagRewriter(QuiverSpec spec);

    const QuiverSpec& spec() const { return spec_; }
    int step(int v, char dir) const;
    bool valid(const Path& p) const;
    std::vector<int> vertices(const Path& p) const;
    int end(const Path& p) const { return vertices(p).back(); }

    // Leftmost-first rewriting; nullopt means the path is zero.
    std::optional<Path> normal_form(const Path& p) const;
    // Every irreducible form reachable under all rewrite orders.
    std::set<std::optional<Path>> irreducible_descendants(const Path& p) const;

    std::optional<Path> compose(const Path& a, const Path& b) const;
    Path star(const Path& p) const;
    // Closure from the vertex idempotents, in discovery order.
    std::vector<Path> basis() const;

    std::string format(const Path& p) const;
    // Accepts "e3" or "(1|2|1)"; throws Parse.
    Path parse(const std::string& s) const;

private:
    // All single rewrites of p; a nullopt entry means a zero rule fired.
    std::vector<std::optional<Path>> rewrites(const Path& p) const;

    QuiverSpec spec_;
    int zero_run_;
};

struct Zigzag {
    QuiverSpec spec;
    ZigzagRewriter rw;
    std::vector<Path> paths;  // per basis index
    CellDatum datum;

    std::size_t index_of(const Path& p) const;
};

Zigzag build_zigzag(const QuiverSpec& spec, FieldSpec f = FieldSpec::rationals(), Exec ex = Exec::Parallel);
// Cycle of length 3 with E = {e1, e2, e3} and the three rotated orders.
Zigzag alternate_idempotent_datum(FieldSpec f = FieldSpec::rationals());

// Product of two paths as an algebra element over the zigzag basis.
Element multiply_paths(const Zigzag& z, const Path& a, const Path& b);

}  // namespace relcell
