#pragma once

// The indecomposable-module table: exhaustive enumeration of all
// indecomposables with bounded per-vertex dimension, plus the Hom / Ext /
// submodule / extension-middle-term data every lattice computation consumes.
//
// Enumeration strategy: for each dimension vector (ascending total dimension,
// then lex), scan every matrix tuple satisfying the relations, deduplicating
// by base-change orbits (breadth-first closure under per-vertex elementary
// matrices).  The orbit representative is tested for indecomposability by
// attempting to split off every previously found smaller indecomposable; by
// induction on total dimension this is exhaustive.  Everything is
// deterministic: representatives are the numerically smallest tuple encodings
// in their orbit.
//
// Completeness caveat: the table only sees per-vertex dimensions <= d.  When
// dim Ext^1(I_n, I_l) > 0 but no nonsplit middle term decomposes over the
// table, a nonsplit extension exists whose middle has an indecomposable
// summand outside the bound (a middle isomorphic to the direct sum of the
// ends would make the sequence split), so a warning is recorded and the bound
// must be raised.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tik/algebra.hpp"
#include "tik/config.hpp"
#include "tik/rep.hpp"

namespace tik {

// formal direct sum of table entries: indec index -> multiplicity >= 1
struct ModuleExpr {
    std::map<int, int> mult;

    bool operator==(const ModuleExpr&) const = default;
    bool operator<(const ModuleExpr& o) const { return mult < o.mult; }

    bool empty() const { return mult.empty(); }
    int distinct() const { return int(mult.size()); } // the paper-style |M|
    int total_mult() const;
    void add(int idx, int k = 1);
};

struct IndecTable {
    const BoundAlgebra* alg = nullptr;
    int dim_bound = 0;

    std::vector<Rep> indecs;         // canonical order: (total dim, dim vector, encoding)
    std::vector<std::string> names;  // Loewy word when uniserial, else "I{k}:dv(...)"
    std::vector<bool> brick;         // every nonzero endomorphism invertible

    std::vector<std::vector<unsigned>> hom; // hom[i][j] = dim Hom(I_i, I_j)
    std::vector<std::vector<unsigned>> ext; // ext[i][j] = dim Ext^1(I_i, I_j)

    // per indec: all (submodule, quotient) decompositions over arrow-stable
    // subspace tuples, deduplicated
    std::vector<std::vector<std::pair<ModuleExpr, ModuleExpr>>> sub_quot;

    // mid[i][j] = middle-term multisets of short exact sequences
    // 0 -> I_j -> M -> I_i -> 0 (always contains the split {I_i, I_j})
    std::vector<std::vector<std::set<ModuleExpr>>> mid;

    std::vector<std::string> warnings; // bound-incompleteness reports

    int n() const { return int(indecs.size()); }
    // index of the table entry isomorphic to M, or -1
    int index_of(const Rep& M, const Caps& caps = {}) const;
};

// max per-vertex dimension over all projectives, plus one
int default_dim_bound(const BoundAlgebra& A);

// d == 0 selects default_dim_bound(A); caps.jobs > 1 fills the pair tables
// with the parallel kernel (results are identical either way)
IndecTable enumerate_indecomposables(const BoundAlgebra& A, int d = 0, const Caps& caps = {});

// pair-table fill kernels (hom, ext, brick, sub_quot, mid); the parallel one
// distributes independent table slots across OpenMP workers and falls back to
// the serial kernel without OpenMP
void fill_pair_tables_serial(IndecTable& T, const Caps& caps = {});
void fill_pair_tables_parallel(IndecTable& T, const Caps& caps = {});

// split off table entries until nothing is left; UnknownSummand if a nonzero
// remainder has no table entry as a summand
ModuleExpr decompose(const IndecTable& T, const Rep& M, const Caps& caps = {});

// direct sum realizing an expression
Rep realize(const IndecTable& T, const ModuleExpr& E);

// middle terms of 0 -> I_sub -> M -> I_quot -> 0
const std::set<ModuleExpr>& ext_middle_terms(const IndecTable& T, int sub, int quot);

// "0", "2/1", "1+2/1", "2/1^2+1", ... (summands index-ascending, ASCII-safe)
std::string expr_name(const IndecTable& T, const ModuleExpr& E);

} // namespace tik
