#include "tik/mutation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tik/errors.hpp"
#include "tik/rep.hpp"

namespace tik {

namespace {

std::uint64_t pow_checked(unsigned base, unsigned e, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (unsigned k = 0; k < e; ++k) {
        v *= base;
        if (v > cap) return cap + 1;
    }
    return v;
}

void canonical_sort(std::vector<Subcat>& xs) {
    std::sort(xs.begin(), xs.end(), [](Subcat a, Subcat b) {
        int sa = sc_size(a), sb = sc_size(b);
        return sa != sb ? sa < sb : a < b;
    });
}

// heart <-> progenerator lookup built from the interval correspondence
std::map<ModuleExpr, Subcat> progenerator_index(const TorsCtx& ctx, const Caps& caps) {
    std::map<ModuleExpr, Subcat> out;
    for (const WideTauTiltingPair& pr : enumerate_wttilt(ctx, caps))
        out.emplace(pr.module, pr.heart_cat);
    return out;
}

} // namespace

bool is_hereditary(const BoundAlgebra& A) {
    if (!A.relations.empty()) return false;
    // Kahn's algorithm on the quiver
    const int n = A.nvert();
    std::vector<int> indeg(std::size_t(n), 0);
    for (const Arrow& a : A.quiver.arrows) ++indeg[std::size_t(a.to)];
    std::vector<int> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[std::size_t(v)] == 0) ready.push_back(v);
    int seen = 0;
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++seen;
        for (const Arrow& a : A.quiver.arrows)
            if (a.from == v && --indeg[std::size_t(a.to)] == 0) ready.push_back(a.to);
    }
    return seen == n;
}

std::vector<ModuleExpr> enumerate_rigid(const IndecTable& T, const Caps&) {
    const int n = T.n();
    if (n > 24)
        throw TooManyIndecs("rigid enumeration over " + std::to_string(n) + " indecomposables");
    std::vector<Subcat> sets;
    for (Subcat s = 0; s <= sc_full(n); ++s) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if (!sc_has(s, i)) continue;
            for (int j = 0; j < n && ok; ++j)
                if (sc_has(s, j) && T.ext[std::size_t(i)][std::size_t(j)] != 0) ok = false;
        }
        if (ok) sets.push_back(s);
    }
    canonical_sort(sets);
    std::vector<ModuleExpr> out;
    out.reserve(sets.size());
    for (Subcat s : sets) {
        ModuleExpr e;
        for (int i : sc_members(s, n)) e.add(i);
        out.push_back(std::move(e));
    }
    return out;
}

ModuleExpr mutate(const IndecTable& T, const ModuleExpr& rigid, int X, const Caps& caps) {
    if (!is_hereditary(*T.alg))
        throw NotHereditary("mutation is defined over path algebras without relations only");
    for (const auto& [i, k] : rigid.mult)
        if (k != 1)
            throw SchemaError("mutation expects a basic module, got multiplicity " +
                              std::to_string(k) + " at " + T.names[std::size_t(i)]);
    if (rigid.mult.find(X) == rigid.mult.end())
        throw NotASummand(expr_name(T, rigid) + " has no summand " +
                          (X >= 0 && X < T.n() ? T.names[std::size_t(X)] : std::to_string(X)));

    ModuleExpr U = rigid;
    U.mult.erase(X);
    std::vector<const Rep*> fam;
    for (const auto& [i, k] : U.mult) fam.push_back(&T.indecs[std::size_t(i)]);
    const Rep& Xr = T.indecs[std::size_t(X)];

    bool in_fac = false;
    if (!fam.empty()) in_fac = sub_quot(Xr, trace_tuple(fam, Xr)).quot.is_zero();

    LeftApprox ap = minimal_left_approximation(Xr, fam, caps);
    const bool inj = is_injective_morph(ap.f);
    const bool surj = is_surjective_morph(ap.target, ap.f);
    if (!inj && !surj)
        throw TheoremViolation("left approximation of " + T.names[std::size_t(X)] + " by " +
                               expr_name(T, U) + " is neither injective nor surjective");

    ModuleExpr out = U;
    if (!surj) {
        ModuleExpr y = decompose(T, cokernel_rep(ap.target, ap.f), caps);
        for (const auto& [i, k] : y.mult)
            if (out.mult.find(i) == out.mult.end()) out.add(i);
    }
    if (in_fac && !(out == U))
        throw TheoremViolation("deletion shortcut disagrees with the approximation at summand " +
                               T.names[std::size_t(X)] + " of " + expr_name(T, rigid));
    for (const auto& [i, ki] : out.mult)
        for (const auto& [j, kj] : out.mult)
            if (T.ext[std::size_t(i)][std::size_t(j)] != 0)
                throw TheoremViolation("mutation of " + expr_name(T, rigid) + " at " +
                                       T.names[std::size_t(X)] + " is not rigid");
    return out;
}

Subcat heart_of_rigid(const TorsCtx& ctx, const ModuleExpr& rigid, const Caps& caps) {
    const std::map<ModuleExpr, Subcat> idx = progenerator_index(ctx, caps);
    auto it = idx.find(rigid);
    if (it == idx.end())
        throw BijectionViolation("no heart has progenerator " + expr_name(*ctx.tab, rigid));
    return it->second;
}

Subcat cokernel_closure_bounded(const IndecTable& T, const ModuleExpr& M, int m,
                                const Caps& caps) {
    const unsigned p = T.alg->p;
    std::vector<int> mem;
    for (const auto& [i, k] : M.mult) mem.push_back(i);
    Subcat out = expr_subcat(M); // cokernels of zero maps out of 0
    if (mem.empty()) return out;

    std::uint64_t count =
        pow_checked(unsigned(m) + 1, unsigned(mem.size()), std::uint64_t(1) << 20) - 1;
    if (count * count > caps.tuple_points)
        throw CapExceeded("cokernel closure over " + std::to_string(count) + " sums");

    std::vector<Rep> sums;
    std::vector<u8> odo(mem.size(), 0);
    while (next_tuple(odo, unsigned(m) + 1)) {
        ModuleExpr e;
        for (std::size_t i = 0; i < mem.size(); ++i)
            if (odo[i]) e.add(mem[i], int(odo[i]));
        sums.push_back(realize(T, e));
    }

    for (const Rep& X : sums)
        for (const Rep& Y : sums) {
            const std::vector<Morph> basis = hom_basis(X, Y);
            if (basis.empty()) continue;
            if (pow_checked(p, unsigned(basis.size()), caps.hom_points) > caps.hom_points)
                throw CapExceeded("cokernel closure: a Hom space is too large to enumerate");
            std::vector<u8> coeffs(basis.size(), 0);
            while (next_tuple(coeffs, p)) {
                const Morph f = hom_element(X, Y, basis, coeffs);
                out |= expr_subcat(decompose(T, cokernel_rep(Y, f), caps));
            }
        }
    return out;
}

RigidHasse rigid_hasse(const TorsCtx& ctx, const Caps& caps) {
    const IndecTable& T = *ctx.tab;
    if (!is_hereditary(*T.alg))
        throw RigidRequiresHereditary(
            "the rigid-module diagram needs a path algebra without relations");

    const std::vector<ModuleExpr> rig = enumerate_rigid(T, caps);
    const std::map<ModuleExpr, Subcat> idx = progenerator_index(ctx, caps);
    if (rig.size() != idx.size())
        throw BijectionViolation(std::to_string(rig.size()) + " rigid modules vs " +
                                 std::to_string(idx.size()) + " hearts");

    std::vector<Subcat> cats;
    std::map<Subcat, ModuleExpr> by_cat;
    for (const ModuleExpr& r : rig) {
        auto it = idx.find(r);
        if (it == idx.end())
            throw BijectionViolation("rigid module " + expr_name(T, r) +
                                     " is not an interval progenerator");
        cats.push_back(it->second);
        by_cat.emplace(it->second, r);
    }

    RigidHasse out;
    out.hd = hasse(cats);
    out.modules.reserve(out.hd.nodes.size());
    for (Subcat c : out.hd.nodes) out.modules.push_back(by_cat.at(c));
    return out;
}

void verify_arrow_theorem(const TorsCtx& ctx, const Caps& caps) {
    const IndecTable& T = *ctx.tab;
    const RigidHasse rh = rigid_hasse(ctx, caps);
    const std::map<ModuleExpr, Subcat> idx = progenerator_index(ctx, caps);

    for (std::size_t k = 0; k < rh.hd.nodes.size(); ++k) {
        const ModuleExpr& M = rh.modules[k];
        std::set<Subcat> mutated;
        for (const auto& [x, mult] : M.mult) {
            const ModuleExpr nb = mutate(T, M, x, caps);
            auto it = idx.find(nb);
            if (it == idx.end())
                throw BijectionViolation("mutation result " + expr_name(T, nb) +
                                         " is not an interval progenerator");
            if (!(sc_subset(it->second, rh.hd.nodes[k]) && it->second != rh.hd.nodes[k]))
                throw TheoremViolation("mutation at " + T.names[std::size_t(x)] + " of " +
                                       expr_name(T, M) + " does not strictly descend");
            mutated.insert(it->second);
        }
        if (int(mutated.size()) != M.distinct())
            throw TheoremViolation("mutations of " + expr_name(T, M) +
                                   " at distinct summands coincide");
        std::set<Subcat> covered;
        for (int c : rh.hd.covered_by(int(k))) covered.insert(rh.hd.nodes[std::size_t(c)]);
        if (covered != mutated)
            throw TheoremViolation("arrows out of " + expr_name(T, M) +
                                   " are not exactly its mutations");
    }
}

QuestionReport question_check(const TorsCtx& ctx, const Caps& caps) {
    const IceHasse ih = ice_hasse(ctx, caps);
    QuestionReport rep;
    rep.holds = true;
    for (std::size_t k = 0; k < ih.hd.nodes.size(); ++k) {
        QuestionEntry e;
        e.heart = ih.hd.nodes[k];
        e.module_size = ih.progenerators[k].distinct();
        e.out_degree = int(ih.hd.covered_by(int(k)).size());
        e.ok = e.module_size == e.out_degree;
        if (!e.ok) rep.holds = false;
        rep.entries.push_back(e);
    }
    return rep;
}

} // namespace tik
