#pragma once

// Subcategory combinatorics over an IndecTable.  A subcategory closed under
// sums and summands is just a set of indecomposable indices, stored as a
// 32-bit bitset (enumeration refuses to run past 24 indecomposables).
//
// All predicates work on the indecomposable level: closure under quotients /
// submodules reads the precomputed sub_quot table, closure under extensions
// reads the middle-term table for indecomposable ends (the reduction to
// indecomposable ends is property-tested in the suite).  Enumeration scans
// all bitsets when the table is small and falls back to closure-generated
// search above 16 indecomposables.

#include <cstdint>
#include <vector>

#include "tik/config.hpp"
#include "tik/indec.hpp"

namespace tik {

using Subcat = std::uint32_t; // bit i <=> IndecTable entry i

inline bool sc_has(Subcat s, int i) { return (s >> i) & 1u; }
inline Subcat sc_full(int n) { return n == 32 ? ~Subcat(0) : (Subcat(1) << n) - 1; }
inline bool sc_subset(Subcat a, Subcat b) { return (a & ~b) == 0; } // a within b
std::vector<int> sc_members(Subcat s, int n);
int sc_size(Subcat s);

// does every index of the expression lie in S?
bool expr_in(const ModuleExpr& e, Subcat s);
// the additive closure generated by an expression's summands
Subcat expr_subcat(const ModuleExpr& e);

//// closure predicates and operators ///////////////////////////////////////

bool is_quotient_closed(const IndecTable& T, Subcat S);
bool is_sub_closed(const IndecTable& T, Subcat S);
bool is_extension_closed(const IndecTable& T, Subcat S);
bool is_torsion_class(const IndecTable& T, Subcat S);
bool is_torsionfree_class(const IndecTable& T, Subcat S);

// least torsion (torsion-free) class containing S: fixpoint of adding
// quotients (submodules) and extension middle terms
Subcat tors_closure(const IndecTable& T, Subcat S);
Subcat torf_closure(const IndecTable& T, Subcat S);

//// enumeration ////////////////////////////////////////////////////////////

// all torsion (torsion-free) classes in canonical order (size, then bitset
// value).  caps.jobs > 1 distributes the bitset scan over OpenMP workers;
// the result is identical to the serial kernel.
std::vector<Subcat> enumerate_tors(const IndecTable& T, const Caps& caps = {});
std::vector<Subcat> enumerate_torf(const IndecTable& T, const Caps& caps = {});

std::vector<Subcat> enumerate_tors_serial(const IndecTable& T, const Caps& caps = {});
std::vector<Subcat> enumerate_tors_parallel(const IndecTable& T, const Caps& caps = {});

//// perpendicular categories ///////////////////////////////////////////////

Subcat perp_right(const IndecTable& T, Subcat S); // Hom(S, -) = 0
Subcat perp_left(const IndecTable& T, Subcat S);  // Hom(-, S) = 0

//// Hasse diagrams /////////////////////////////////////////////////////////

struct HasseArrow {
    int from, to;   // node indices; from covers to
    int label = -1; // brick index once labeled (ice layer), else -1
};

struct HasseDiagram {
    std::vector<Subcat> nodes; // canonical order: (size, bitset value)
    std::vector<HasseArrow> arrows;

    int index_of(Subcat s) const;
    std::vector<int> covers_of(int node) const;    // arrows into node (from-side)
    std::vector<int> covered_by(int node) const;   // arrows out of node (to-side)
};

// covering relation of the inclusion order on the given subcategories
HasseDiagram hasse(const std::vector<Subcat>& nodes);

//// lattice operations /////////////////////////////////////////////////////

Subcat join_tors(const IndecTable& T, const std::vector<Subcat>& xs);
Subcat join_torf(const IndecTable& T, const std::vector<Subcat>& xs);
Subcat meet(const std::vector<Subcat>& xs, int n); // intersection; n for empty input

// smallest torsion class strictly containing U that exists as a join of the
// Hasse covers of U; equals U itself at the top
Subcat u_plus(const IndecTable& T, const HasseDiagram& tors_hd, Subcat U);

// F intersected with everything it covers in the torsion-free Hasse diagram
Subcat f_minus(const IndecTable& T, const HasseDiagram& torf_hd, Subcat F);

} // namespace tik
