#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include "relcell/annular.hpp"
#include "relcell/usl2.hpp"
#include "relcell/zigzag.hpp"

namespace relcell {

constexpr std::size_t kDefaultMaxDim = 4096;

// Built-in default, then RELCELL_MAX_DIM, then an explicit flag.
std::size_t resolve_max_dim(std::optional<std::size_t> flag);

enum class FamilyKind { Zigzag, USl2, Annular };

// One built algebra together with its family-specific notation.
struct Family {
    std::string spec;
    FamilyKind kind = FamilyKind::Zigzag;
    std::shared_ptr<Zigzag> zigzag;
    std::shared_ptr<USl2> usl2;
    std::shared_ptr<Annular> annular;

    const CellDatum& datum() const;
    std::string format_basis(std::size_t i) const;
    std::string format(const Element& x) const;
    // Zigzag: a path "e1" / "(1|2|1)"; usl2: a word such as "F^1 1_0 E^2"; annular: "S|lambda|T".
    Element parse(const std::string& s) const;
};

// "zigzag:A:3", "zigzag:cycS:3", "zigzag:cycS:3:alt", "zigzag:cycL:4", "usl2:p=5", "annular:n=2".
Family build_family(const std::string& spec, std::size_t max_dim = kDefaultMaxDim, Exec ex = Exec::Parallel);

}  // namespace relcell
