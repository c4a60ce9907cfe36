#pragma once

// Bound quiver algebras A = kQ/I over F_p.
//
// A quiver is a finite directed graph (loops and parallel arrows allowed);
// relations are linear combinations of parallel paths of length >= 2, all
// terms of one relation having equal length (this keeps the path-length
// grading exact and covers monomial and commutativity relations alike;
// mixed-length combinations are rejected as NonAdmissible).
//
// Paths are stored in application order: the path [a1, a2] means "first a1,
// then a2", so it is composable when target(a1) == source(a2), and a module
// M sends it to the matrix M_{a2} * M_{a1}.
//
// The constructor enumerates paths degreewise, quotients by the relation
// ideal one length at a time (per parallel class, by row reduction), and
// stops at the first length with no surviving path classes.  If no such
// length exists within the configured bound the algebra is rejected as
// NotFiniteDimensional.  The surviving classes form the canonical basis of
// the algebra; expansions of dead paths in terms of surviving ones drive
// the projective-module construction in rep.hpp.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tik/config.hpp"
#include "tik/mat.hpp"

namespace tik {

struct Arrow {
    std::string name;
    int from = -1, to = -1; // vertex indices
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int nvert() const { return int(vertices.size()); }
    int narrow() const { return int(arrows.size()); }
    int vertex_index(const std::string& id) const; // -1 if absent
    int arrow_index(const std::string& name) const;
};

// One term of a relation: coeff * (arrow sequence in application order).
struct RelTerm {
    u8 coeff = 1;
    std::vector<int> arrows;
};
using Relation = std::vector<RelTerm>;

struct BoundAlgebra {
    Quiver quiver;
    unsigned p = 2;
    std::vector<Relation> relations;

    // optional per-file defaults (lowest layer of the config precedence)
    std::optional<int> file_dim_bound;

    // canonical algebra basis: surviving path classes, ordered by
    // (length, start vertex, arrow sequence)
    struct BasisPath {
        int start = -1, end = -1;
        std::vector<int> arrows;
    };
    std::vector<BasisPath> basis;

    // basis ids grouped as [from][to]
    std::vector<std::vector<std::vector<int>>> basis_by_pair;

    // expansion of every path class of length < saturation as a combination
    // of basis classes; key (start vertex, arrow sequence); paths of
    // saturated length or beyond are zero and have no entry
    std::map<std::pair<int, std::vector<int>>, std::vector<std::pair<int, u8>>> expand;

    unsigned saturation_length = 0; // first length with zero surviving classes

    unsigned dim() const { return unsigned(basis.size()); }
    int nvert() const { return quiver.nvert(); }
    int narrow() const { return quiver.narrow(); }
};

// Parse and validate the JSON algebra definition (see fixtures/ for the
// schema).  field_override replaces the file's "field" (used by --field /
// TIK_FIELD).  Throws SchemaError, NonComposablePath, NonAdmissible,
// NotFiniteDimensional.
BoundAlgebra parse_algebra(const std::string& json_text,
                           std::optional<unsigned> field_override = {},
                           const Caps& caps = {});

BoundAlgebra parse_algebra_file(const std::string& path,
                                std::optional<unsigned> field_override = {},
                                const Caps& caps = {});

} // namespace tik
