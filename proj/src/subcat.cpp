#include "tik/subcat.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "tik/errors.hpp"

namespace tik {

std::vector<int> sc_members(Subcat s, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (sc_has(s, i)) out.push_back(i);
    return out;
}

int sc_size(Subcat s) { return std::popcount(s); }

bool expr_in(const ModuleExpr& e, Subcat s) {
    for (const auto& [i, k] : e.mult)
        if (!sc_has(s, i)) return false;
    return true;
}

Subcat expr_subcat(const ModuleExpr& e) {
    Subcat s = 0;
    for (const auto& [i, k] : e.mult) s |= Subcat(1) << i;
    return s;
}

//// closure predicates /////////////////////////////////////////////////////

bool is_quotient_closed(const IndecTable& T, Subcat S) {
    for (int i = 0; i < T.n(); ++i) {
        if (!sc_has(S, i)) continue;
        for (const auto& [sub, quot] : T.sub_quot[i])
            if (!expr_in(quot, S)) return false;
    }
    return true;
}

bool is_sub_closed(const IndecTable& T, Subcat S) {
    for (int i = 0; i < T.n(); ++i) {
        if (!sc_has(S, i)) continue;
        for (const auto& [sub, quot] : T.sub_quot[i])
            if (!expr_in(sub, S)) return false;
    }
    return true;
}

bool is_extension_closed(const IndecTable& T, Subcat S) {
    for (int i = 0; i < T.n(); ++i) {
        if (!sc_has(S, i)) continue;
        for (int j = 0; j < T.n(); ++j) {
            if (!sc_has(S, j)) continue;
            for (const ModuleExpr& m : T.mid[i][j])
                if (!expr_in(m, S)) return false;
        }
    }
    return true;
}

bool is_torsion_class(const IndecTable& T, Subcat S) {
    return is_quotient_closed(T, S) && is_extension_closed(T, S);
}

bool is_torsionfree_class(const IndecTable& T, Subcat S) {
    return is_sub_closed(T, S) && is_extension_closed(T, S);
}

namespace {

Subcat closure(const IndecTable& T, Subcat S, bool quotient_side) {
    Subcat cur = S;
    while (true) {
        Subcat next = cur;
        for (int i = 0; i < T.n(); ++i) {
            if (!sc_has(cur, i)) continue;
            for (const auto& [sub, quot] : T.sub_quot[i])
                next |= expr_subcat(quotient_side ? quot : sub);
            for (int j = 0; j < T.n(); ++j) {
                if (!sc_has(cur, j)) continue;
                for (const ModuleExpr& m : T.mid[i][j]) next |= expr_subcat(m);
            }
        }
        if (next == cur) return cur;
        cur = next;
    }
}

} // namespace

Subcat tors_closure(const IndecTable& T, Subcat S) { return closure(T, S, true); }
Subcat torf_closure(const IndecTable& T, Subcat S) { return closure(T, S, false); }

//// enumeration ////////////////////////////////////////////////////////////

namespace {

void canonical_sort(std::vector<Subcat>& v) {
    std::sort(v.begin(), v.end(), [](Subcat a, Subcat b) {
        if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
        return a < b;
    });
}

// above 16 indecomposables a full bitset scan is wasteful; grow the family
// from the empty class by closing unions with single indecomposables.  Every
// torsion class is the closure of its own members, hence reachable by adding
// them one at a time.
std::vector<Subcat> enumerate_closure_generated(const IndecTable& T, bool tors_side) {
    std::set<Subcat> found = {0};
    std::vector<Subcat> work = {0};
    while (!work.empty()) {
        Subcat base = work.back();
        work.pop_back();
        for (int i = 0; i < T.n(); ++i) {
            if (sc_has(base, i)) continue;
            Subcat c = tors_side ? tors_closure(T, base | (Subcat(1) << i))
                                 : torf_closure(T, base | (Subcat(1) << i));
            if (found.insert(c).second) work.push_back(c);
        }
    }
    std::vector<Subcat> out(found.begin(), found.end());
    canonical_sort(out);
    return out;
}

std::vector<Subcat> enumerate_scan(const IndecTable& T, bool tors_side, const Caps& caps,
                                   bool parallel) {
    const int n = T.n();
    if (n > 24) throw TooManyIndecs("lattice enumeration over " + std::to_string(n) +
                                    " indecomposables (max 24)");
    if (n > 16) return enumerate_closure_generated(T, tors_side);

    const Subcat limit = sc_full(n);
    std::vector<Subcat> out;

    auto passes = [&](Subcat s) {
        return tors_side ? is_torsion_class(T, s) : is_torsionfree_class(T, s);
    };

#ifdef TIK_HAVE_OPENMP
    if (parallel && caps.jobs > 1) {
        std::vector<std::vector<Subcat>> chunks(caps.jobs);
#pragma omp parallel for schedule(static) num_threads(caps.jobs)
        for (int w = 0; w < caps.jobs; ++w)
            for (Subcat s = Subcat(w); s <= limit; s += Subcat(caps.jobs))
                if (passes(s)) chunks[w].push_back(s);
        for (const auto& c : chunks) out.insert(out.end(), c.begin(), c.end());
        canonical_sort(out);
        return out;
    }
#else
    (void)parallel;
#endif

    for (Subcat s = 0; s <= limit; ++s)
        if (passes(s)) out.push_back(s);
    canonical_sort(out);
    return out;
}

} // namespace

std::vector<Subcat> enumerate_tors_serial(const IndecTable& T, const Caps& caps) {
    return enumerate_scan(T, true, caps, false);
}

std::vector<Subcat> enumerate_tors_parallel(const IndecTable& T, const Caps& caps) {
    return enumerate_scan(T, true, caps, true);
}

std::vector<Subcat> enumerate_tors(const IndecTable& T, const Caps& caps) {
    return enumerate_scan(T, true, caps, caps.jobs > 1);
}

std::vector<Subcat> enumerate_torf(const IndecTable& T, const Caps& caps) {
    return enumerate_scan(T, false, caps, caps.jobs > 1);
}

//// perpendicular categories ///////////////////////////////////////////////

Subcat perp_right(const IndecTable& T, Subcat S) {
    Subcat out = 0;
    for (int i = 0; i < T.n(); ++i) {
        bool killed = false;
        for (int u = 0; u < T.n() && !killed; ++u)
            if (sc_has(S, u) && T.hom[u][i] > 0) killed = true;
        if (!killed) out |= Subcat(1) << i;
    }
    return out;
}

Subcat perp_left(const IndecTable& T, Subcat S) {
    Subcat out = 0;
    for (int i = 0; i < T.n(); ++i) {
        bool killed = false;
        for (int u = 0; u < T.n() && !killed; ++u)
            if (sc_has(S, u) && T.hom[i][u] > 0) killed = true;
        if (!killed) out |= Subcat(1) << i;
    }
    return out;
}

//// Hasse diagrams /////////////////////////////////////////////////////////

int HasseDiagram::index_of(Subcat s) const {
    for (int i = 0; i < int(nodes.size()); ++i)
        if (nodes[i] == s) return i;
    return -1;
}

std::vector<int> HasseDiagram::covers_of(int node) const {
    std::vector<int> out;
    for (const auto& a : arrows)
        if (a.to == node) out.push_back(a.from);
    return out;
}

std::vector<int> HasseDiagram::covered_by(int node) const {
    std::vector<int> out;
    for (const auto& a : arrows)
        if (a.from == node) out.push_back(a.to);
    return out;
}

HasseDiagram hasse(const std::vector<Subcat>& nodes) {
    HasseDiagram hd;
    hd.nodes = nodes;
    canonical_sort(hd.nodes);
    const int N = int(hd.nodes.size());
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q) {
            if (p == q || !sc_subset(hd.nodes[q], hd.nodes[p])) continue;
            bool covering = true;
            for (int r = 0; r < N && covering; ++r) {
                if (r == p || r == q) continue;
                if (sc_subset(hd.nodes[q], hd.nodes[r]) && sc_subset(hd.nodes[r], hd.nodes[p]) &&
                    hd.nodes[r] != hd.nodes[q] && hd.nodes[r] != hd.nodes[p])
                    covering = false;
            }
            if (covering) hd.arrows.push_back({p, q, -1});
        }
    std::sort(hd.arrows.begin(), hd.arrows.end(), [](const HasseArrow& a, const HasseArrow& b) {
        if (a.from != b.from) return a.from < b.from;
        return a.to < b.to;
    });
    return hd;
}

//// lattice operations /////////////////////////////////////////////////////

Subcat join_tors(const IndecTable& T, const std::vector<Subcat>& xs) {
    Subcat u = 0;
    for (Subcat x : xs) u |= x;
    return tors_closure(T, u);
}

Subcat join_torf(const IndecTable& T, const std::vector<Subcat>& xs) {
    Subcat u = 0;
    for (Subcat x : xs) u |= x;
    return torf_closure(T, u);
}

Subcat meet(const std::vector<Subcat>& xs, int n) {
    Subcat m = sc_full(n);
    for (Subcat x : xs) m &= x;
    return m;
}

Subcat u_plus(const IndecTable& T, const HasseDiagram& tors_hd, Subcat U) {
    int node = tors_hd.index_of(U);
    std::vector<Subcat> parts = {U};
    for (int c : tors_hd.covers_of(node)) parts.push_back(tors_hd.nodes[c]);
    return join_tors(T, parts);
}

Subcat f_minus(const IndecTable& T, const HasseDiagram& torf_hd, Subcat F) {
    (void)T;
    int node = torf_hd.index_of(F);
    Subcat out = F;
    for (int c : torf_hd.covered_by(node)) out &= torf_hd.nodes[c];
    return out;
}

} // namespace tik
