#pragma once

// Rigid modules and summand mutation for hereditary algebras.
//
// A basic module T is rigid when Ext^1(T, T) = 0.  Over a path algebra
// without relations these biject with the heart subcategories of ice.hpp:
// T corresponds to the unique heart whose Ext-projective generator is T,
// concretely the cokernels of morphisms inside add T.  mutate exchanges one
// indecomposable summand X of T = X (+) U against the cokernel of a minimal
// left add(U)-approximation of X; when X is already a quotient of copies of
// U the summand is simply deleted, and both routes are always computed and
// compared.  Ordering hearts by inclusion gives a Hasse quiver whose arrows
// out of T are exactly its |T| mutations; verify_arrow_theorem recomputes
// the quiver both ways and throws TheoremViolation on any mismatch.
//
// question_check needs no hereditarity: it reports, for every node of the
// heart inclusion diagram, whether the out-degree equals the number of
// distinct summands of the node's progenerator.

#include <vector>

#include "tik/config.hpp"
#include "tik/ice.hpp"
#include "tik/indec.hpp"
#include "tik/subcat.hpp"

namespace tik {

// no relations and an acyclic quiver
bool is_hereditary(const BoundAlgebra& A);

// all basic modules with vanishing self-extensions (any algebra), ordered
// canonically by summand set
std::vector<ModuleExpr> enumerate_rigid(const IndecTable& T, const Caps& caps = {});

// exchange summand X (an index into the table) of the rigid module
ModuleExpr mutate(const IndecTable& T, const ModuleExpr& rigid, int X, const Caps& caps = {});

// the unique heart whose progenerator is the given module; throws
// BijectionViolation when there is none
Subcat heart_of_rigid(const TorsCtx& ctx, const ModuleExpr& rigid, const Caps& caps = {});

// indecomposables arising as cokernels of morphisms between sums of
// summands of M with multiplicity <= m; a bounded definition-level stand-in
// for the cokernel closure, cross-checked against heart_of_rigid in tests
Subcat cokernel_closure_bounded(const IndecTable& T, const ModuleExpr& M, int m = 2,
                                const Caps& caps = {});

struct RigidHasse {
    HasseDiagram hd;                 // nodes: hearts of the rigid modules
    std::vector<ModuleExpr> modules; // aligned with hd.nodes
};
RigidHasse rigid_hasse(const TorsCtx& ctx, const Caps& caps = {});

// recompute every arrow of rigid_hasse as a mutation and vice versa
void verify_arrow_theorem(const TorsCtx& ctx, const Caps& caps = {});

struct QuestionEntry {
    Subcat heart = 0;
    int module_size = 0;
    int out_degree = 0;
    bool ok = false;
};
struct QuestionReport {
    bool holds = false;
    std::vector<QuestionEntry> entries; // aligned with ice_hasse node order
};
QuestionReport question_check(const TorsCtx& ctx, const Caps& caps = {});

} // namespace tik
