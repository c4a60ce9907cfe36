#pragma once

// Hearts of torsion-class intervals and the structures built on them:
// brick labels for Hasse arrows, subcategories closed under images,
// cokernels and extensions ("ice" below), wide subcategories, Ext-projective
// objects and progenerators, sincere intervals, and the correspondence
// between those intervals, wide tau-tilting pairs and ice subcategories.
//
// The central fact the layer runs on: for torsion classes U <= T the heart
// T meet U^perp is ice-closed exactly when T lies below the join of the
// Hasse covers of U, and every ice subcategory arises that way.  Everything
// here is verified on the fly against independent constructions (brick
// filtrations, trace quotients, definition-level oracles); a mismatch throws
// TheoremViolation / BijectionViolation rather than returning quietly.

#include <utility>
#include <vector>

#include "tik/config.hpp"
#include "tik/indec.hpp"
#include "tik/subcat.hpp"

namespace tik {

//// hearts and brick labels ////////////////////////////////////////////////

// heart of [lower, upper]: members of upper receiving no nonzero map from
// lower.  Meaningful whenever lower <= upper are torsion classes.
Subcat heart(const IndecTable& T, Subcat lower, Subcat upper);

// smallest extension-closed subcategory containing S (iterated middle terms)
Subcat filt_closure(const IndecTable& T, Subcat S);

// For a covering pair lower <| upper of torsion classes the heart contains a
// unique brick, and the heart is its extension closure.  Returns the brick's
// table index; throws NoBrick / MultipleBricks / TheoremViolation when the
// data refuses to behave (which would mean the inputs are not a covering
// pair, or the engine is wrong).
int brick_label(const IndecTable& T, Subcat lower, Subcat upper);

// hasse(tors) with every arrow's label set to its brick index
HasseDiagram labeled_tors_hasse(const IndecTable& T, const std::vector<Subcat>& tors);

// Heart of the interval spanned by a directed path of arrow indices in a
// labeled diagram, rebuilt as the extension closure of the path's brick
// labels; cross-checked against heart() of the path endpoints
// (TheoremViolation on mismatch).  The empty path yields the empty
// subcategory.  SchemaError if the path is not consecutive or unlabeled.
Subcat heart_via_labels(const IndecTable& T, const HasseDiagram& labeled,
                        const std::vector<int>& arrow_path);

//// cached torsion-lattice context /////////////////////////////////////////

// The torsion lattice with its labeled Hasse diagram and, per class U, the
// join of the classes covering U (the largest T making [U, T] an ice
// interval).  Interval-level computations all share this.
struct TorsCtx {
    const IndecTable* tab = nullptr;
    std::vector<Subcat> tors;  // canonical order
    HasseDiagram hd;           // labeled
    std::vector<Subcat> uplus; // aligned with hd.nodes

    int node(Subcat U) const; // index in hd.nodes, -1 if absent
    Subcat uplus_of(Subcat U) const;
};

TorsCtx make_tors_ctx(const IndecTable& T, const Caps& caps = {});

//// interval recognition and heart enumeration /////////////////////////////

// a torsion-class interval has an ice-closed heart iff upper <= cover join
// of lower; both arguments must be torsion classes in ctx
bool is_ice_interval(const TorsCtx& ctx, Subcat lower, Subcat upper);

// all ice subcategories, as hearts of the intervals above, canonical order;
// caps.jobs > 1 distributes the lower endpoints over OpenMP workers with
// output identical to the serial kernel
std::vector<Subcat> enumerate_ice(const TorsCtx& ctx, const Caps& caps = {});
std::vector<Subcat> enumerate_ice_serial(const TorsCtx& ctx, const Caps& caps = {});
std::vector<Subcat> enumerate_ice_parallel(const TorsCtx& ctx, const Caps& caps = {});

//// definition-level oracles ///////////////////////////////////////////////

// Bounded direct test of closure under images, cokernels and extensions.
// Extension closure is exact (middle-term tables).  Image and cokernel
// closure are checked for every morphism between direct sums using each
// member at most m times; pairs whose Hom space exceeds caps.hom_points and
// the rare image/cokernel falling outside the table are skipped, so a pass
// is strong evidence while a failure is definitive.
bool is_ice_direct(const IndecTable& T, Subcat S, int m = 2, const Caps& caps = {});

// Wide test: extension closure plus kernels and cokernels of every morphism
// with indecomposable ends (full Hom spaces, capped by caps.hom_points).
bool is_wide(const IndecTable& T, Subcat S, const Caps& caps = {});

//// wide subcategories /////////////////////////////////////////////////////

// members X of a torsion-free class F all of whose cokernels into F stay in
// F; for torsion-free F this is the largest wide subcategory inside F
Subcat wide_of_torsionfree(const IndecTable& T, Subcat F, const Caps& caps = {});

// heart of [U, cover join of U]; asserts the result passes is_wide
Subcat wide_of_tors(const TorsCtx& ctx, Subcat U, const Caps& caps = {});

// Smallest wide subcategory containing an ice-closed C, computed two ways
// that must agree (TheoremViolation otherwise): as
// wide_of_torsionfree(torsionfree closure of C), and as the extension
// closure of C together with all kernels of morphisms inside C.
Subcat smallest_wide_containing(const IndecTable& T, Subcat C, const Caps& caps = {});

// simple objects of a wide subcategory: members with no nonzero proper
// submodule inside W.  NotWide if W fails is_wide.
std::vector<int> simples_of_wide(const IndecTable& T, Subcat W, const Caps& caps = {});

// torsion classes of the abelian category W (closed under extensions and
// under those quotients that stay in W), canonical order.  NotWide guard.
std::vector<Subcat> tors_in(const IndecTable& T, Subcat W, const Caps& caps = {});

//// Ext-projectives and progenerators //////////////////////////////////////

// members P of S with Ext^1(P, S) = 0
Subcat ext_projectives(const IndecTable& T, Subcat S);

// direct sum of the Ext-projectives, one copy each
ModuleExpr progenerator(const IndecTable& T, Subcat S);

// check that every member of S admits a surjection from add(Ext-projectives)
// with kernel in S, via minimal right approximations; NotEnoughProjectives
// on failure
void verify_enough_projectives(const IndecTable& T, Subcat S, const Caps& caps = {});

//// intervals, sincerity, wide tau-tilting /////////////////////////////////

struct Interval {
    Subcat lower = 0, upper = 0;
    bool operator==(const Interval&) const = default;
};

// T / trace of lower in T, where T = progenerator(upper), computed summand
// by summand; asserted equal to progenerator(heart(lower, upper))
// (TheoremViolation otherwise)
ModuleExpr wide_tau_tilting_of_interval(const IndecTable& T, Subcat lower, Subcat upper);

// number of Ext-projectives of the heart == number of progenerator summands
// of upper outside lower
bool count_formula_check(const IndecTable& T, Subcat lower, Subcat upper);

// Ice intervals [U, T] whose heart is sincere in the wide subcategory of U,
// recognized by two criteria that must agree (CriteriaDisagree otherwise):
// (a) progenerator summands of T outside U == number of Hasse covers of U;
// (b) T lies below no join of a proper subset of the covers of U over U.
// Ordered by (lower, upper) canonical order.
std::vector<Interval> sincere_intervals(const TorsCtx& ctx, const Caps& caps = {});

struct WideTauTiltingPair {
    Subcat wide = 0;       // wide subcategory of the interval's lower end
    ModuleExpr module;     // wide tau-tilting module inside it
    Subcat heart_cat = 0;  // the ice subcategory the pair classifies
    Interval interval;     // the sincere interval it came from
};

// One pair per sincere interval.  Asserts the correspondences this layer
// promises: pairs, modules and hearts are pairwise distinct, the hearts are
// exactly enumerate_ice, and the trace-quotient route over all ice intervals
// lands on the same module set (BijectionViolation otherwise).  Ordered by
// heart.
std::vector<WideTauTiltingPair> enumerate_wttilt(const TorsCtx& ctx, const Caps& caps = {});

// inclusion order on the ice subcategories, each node tagged with its
// progenerator
struct IceHasse {
    HasseDiagram hd;
    std::vector<ModuleExpr> progenerators; // aligned with hd.nodes
};

IceHasse ice_hasse(const TorsCtx& ctx, const Caps& caps = {});

// torsion-free interval [G, F] whose heart is C again: F = torsion-free
// closure of C, G = members of F with no nonzero map from C; verified
// (TheoremViolation on mismatch)
Interval realize_as_heart(const IndecTable& T, Subcat C);

} // namespace tik
