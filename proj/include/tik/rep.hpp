#pragma once

// Representations of a bound quiver algebra and the linear algebra of
// morphisms between them.
//
// A representation assigns to each vertex v a space F_p^{dims[v]} and to
// each arrow a: i -> j a matrix maps[a] of shape dims[j] x dims[i]; a path
// acts by composing its arrow matrices in application order.  Morphisms
// f: M -> N are per-vertex matrices intertwining the arrow actions
// (f_j M_a = N_a f_i); Hom(M, N) is computed as the kernel of the linear
// system those equations cut out, so every Hom space comes with a canonical
// deterministic basis.
//
// Submodules are per-vertex subspace tuples stable under the arrow maps
// (each subspace in canonical rref row form); quotients are realized on the
// complement coordinates of the rref pivots.  Everything downstream
// (indecomposables, Ext, torsion classes) reduces to these primitives.

#include <optional>
#include <utility>
#include <vector>

#include "tik/algebra.hpp"
#include "tik/config.hpp"
#include "tik/mat.hpp"

namespace tik {

//// representations ////////////////////////////////////////////////////////

struct Rep {
    const BoundAlgebra* alg = nullptr;
    std::vector<unsigned> dims; // per vertex
    std::vector<Mat> maps;      // per arrow: dims[to] x dims[from]

    unsigned total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    bool operator==(const Rep& o) const { return dims == o.dims && maps == o.maps; }
    bool operator<(const Rep& o) const; // deterministic order for canonical lists
};

Rep zero_rep(const BoundAlgebra& A);
Rep simple(const BoundAlgebra& A, int v);
Rep projective(const BoundAlgebra& A, int v);

bool satisfies_relations(const Rep& M);

// matrix of the path action M_{a_k} ... M_{a_1} (empty path = identity at start)
Mat path_action(const Rep& M, int start, const std::vector<int>& arrows);

struct SumLayout {
    Rep sum;
    std::vector<std::vector<unsigned>> offsets; // offsets[part][v]
};
SumLayout direct_sum(const BoundAlgebra& A, const std::vector<const Rep*>& parts);

//// morphisms //////////////////////////////////////////////////////////////

struct Morph {
    std::vector<Mat> f; // per vertex: N.dims[v] x M.dims[v] for f: M -> N
};

Morph zero_morph(const Rep& M, const Rep& N);
Morph identity_morph(const Rep& M);
Morph compose(const Rep& /*A*/, const Morph& g, const Morph& f); // g after f
bool is_morphism(const Rep& M, const Rep& N, const Morph& f);
bool is_injective_morph(const Morph& f);
bool is_surjective_morph(const Rep& N, const Morph& f);

std::vector<Morph> hom_basis(const Rep& M, const Rep& N);
unsigned hom_dim(const Rep& M, const Rep& N);

// f = sum coeffs[k] * basis[k]
Morph hom_element(const Rep& M, const Rep& N, const std::vector<Morph>& basis,
                  const std::vector<u8>& coeffs);

//// submodules and quotients ///////////////////////////////////////////////

// one canonical subspace (rref row basis in F_p^{dims[v]}) per vertex
using SubspaceTuple = std::vector<Mat>;

bool is_subrep(const Rep& M, const SubspaceTuple& U); // arrow stability

struct SubQuotPair {
    Rep sub;
    Morph incl; // sub -> M
    Rep quot;
    Morph proj; // M -> quot
};
SubQuotPair sub_quot(const Rep& M, const SubspaceTuple& U);

SubspaceTuple image_tuple(const Rep& N, const Morph& f);  // image of f: M -> N, inside N
SubspaceTuple kernel_tuple(const Rep& M, const Morph& f); // kernel of f: M -> N, inside M

Rep kernel_rep(const Rep& M, const Morph& f);
Rep image_rep(const Rep& N, const Morph& f);
Rep cokernel_rep(const Rep& N, const Morph& f);

// all arrow-stable subspace tuples of M (the full submodule lattice)
std::vector<SubspaceTuple> enumerate_submodules(const Rep& M, const Caps& caps = {});

//// isomorphism and splitting //////////////////////////////////////////////

// exhaustive Hom-space search for an invertible intertwiner, after cheap
// invariant screening (dim vectors, arrow ranks, Hom dims against simples)
bool is_isomorphic(const Rep& M, const Rep& N, const Caps& caps = {});

// search s: I -> M, q: M -> I with q s = id_I; s is enumerated over Hom(I, M)
// (capped), q is then solved for linearly
std::optional<std::pair<Morph, Morph>> find_split_pair(const Rep& I, const Rep& M,
                                                       const Caps& caps = {});

//// traces, covers, Ext ////////////////////////////////////////////////////

// sum of the images of all morphisms family -> M (the trace submodule);
// images of Hom-basis maps span all images, so basis maps suffice
SubspaceTuple trace_tuple(const std::vector<const Rep*>& family, const Rep& M);

struct Cover {
    Rep p0;
    Morph onto; // p0 ->> M, kernel inside rad p0
};
Cover projective_cover(const Rep& M);

// dim Ext^1(N, L) via the syzygy of a projective cover of N:
// 0 -> Hom(N,L) -> Hom(P0,L) -> Hom(OmegaN,L) -> Ext^1(N,L) -> 0
unsigned ext1_dim(const Rep& N, const Rep& L);

//// approximations /////////////////////////////////////////////////////////

// minimal left add(U)-approximation of X, built from the universal map
// X -> sum_i U_i^{dim Hom(X, U_i)} by greedy copy elimination (lexicographic
// by (target index, copy index); reverse_order flips it — Krull-Schmidt says
// the result is the same up to isomorphism, and tests assert that)
struct LeftApprox {
    Rep target;                              // U'
    Morph f;                                 // X -> U'
    std::vector<std::pair<int, int>> picked; // surviving (target index, copy)
};
LeftApprox minimal_left_approximation(const Rep& X, const std::vector<const Rep*>& U,
                                      const Caps& caps = {}, bool reverse_order = false);

// dual: minimal right add(P)-approximation of C (used to verify that an
// Ext-projective set has enough projectives)
struct RightApprox {
    Rep source;
    Morph f; // source -> C
    std::vector<std::pair<int, int>> picked;
};
RightApprox minimal_right_approximation(const std::vector<const Rep*>& P, const Rep& C,
                                        const Caps& caps = {}, bool reverse_order = false);

} // namespace tik
