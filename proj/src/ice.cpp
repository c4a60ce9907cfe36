#include "tik/ice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tik/errors.hpp"
#include "tik/rep.hpp"

namespace tik {

namespace {

void canonical_sort(std::vector<Subcat>& xs) {
    std::sort(xs.begin(), xs.end(), [](Subcat a, Subcat b) {
        int sa = sc_size(a), sb = sc_size(b);
        return sa != sb ? sa < sb : a < b;
    });
}

std::uint64_t pow_checked(unsigned p, unsigned e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= p;
        if (r > cap) return cap + 1;
    }
    return r;
}

std::string names_join(const IndecTable& T, Subcat s) {
    if (s == 0) return "0";
    std::string out;
    for (int i : sc_members(s, T.n())) {
        if (!out.empty()) out += "+";
        out += T.names[std::size_t(i)];
    }
    return out;
}

} // namespace

//// hearts and brick labels ////////////////////////////////////////////////

Subcat heart(const IndecTable& T, Subcat lower, Subcat upper) {
    return upper & perp_right(T, lower);
}

Subcat filt_closure(const IndecTable& T, Subcat S) {
    Subcat cur = S;
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<int> mem = sc_members(cur, T.n());
        for (int i : mem)
            for (int j : mem)
                for (const ModuleExpr& m : T.mid[std::size_t(i)][std::size_t(j)]) {
                    Subcat add = expr_subcat(m);
                    if (!sc_subset(add, cur)) {
                        cur |= add;
                        grew = true;
                    }
                }
    }
    return cur;
}

int brick_label(const IndecTable& T, Subcat lower, Subcat upper) {
    Subcat H = heart(T, lower, upper);
    std::vector<int> bricks;
    for (int i : sc_members(H, T.n()))
        if (T.brick[std::size_t(i)]) bricks.push_back(i);
    if (bricks.empty())
        throw NoBrick("heart of [" + names_join(T, lower) + ", " + names_join(T, upper) +
                      "] contains no brick");
    if (bricks.size() > 1)
        throw MultipleBricks("heart of [" + names_join(T, lower) + ", " + names_join(T, upper) +
                             "] contains " + std::to_string(bricks.size()) + " bricks");
    if (filt_closure(T, Subcat(1) << bricks[0]) != H)
        throw TheoremViolation("brick filtration misses part of the heart of [" +
                               names_join(T, lower) + ", " + names_join(T, upper) + "]");
    return bricks[0];
}

HasseDiagram labeled_tors_hasse(const IndecTable& T, const std::vector<Subcat>& tors) {
    HasseDiagram hd = hasse(tors);
    for (HasseArrow& a : hd.arrows)
        a.label = brick_label(T, hd.nodes[std::size_t(a.to)], hd.nodes[std::size_t(a.from)]);
    return hd;
}

Subcat heart_via_labels(const IndecTable& T, const HasseDiagram& labeled,
                        const std::vector<int>& arrow_path) {
    if (arrow_path.empty()) return 0;
    Subcat bits = 0;
    int prev_to = -1;
    for (std::size_t k = 0; k < arrow_path.size(); ++k) {
        int id = arrow_path[k];
        if (id < 0 || id >= int(labeled.arrows.size()))
            throw SchemaError("label path: arrow id out of range");
        const HasseArrow& a = labeled.arrows[std::size_t(id)];
        if (a.label < 0) throw SchemaError("label path over an unlabeled diagram");
        if (k > 0 && a.from != prev_to) throw SchemaError("label path is not consecutive");
        prev_to = a.to;
        bits |= Subcat(1) << a.label;
    }
    Subcat upper = labeled.nodes[std::size_t(labeled.arrows[std::size_t(arrow_path.front())].from)];
    Subcat lower = labeled.nodes[std::size_t(prev_to)];
    Subcat filt = filt_closure(T, bits);
    if (filt != heart(T, lower, upper))
        throw TheoremViolation("label filtration disagrees with the heart of [" +
                               names_join(T, lower) + ", " + names_join(T, upper) + "]");
    return filt;
}

//// cached torsion-lattice context /////////////////////////////////////////

int TorsCtx::node(Subcat U) const { return hd.index_of(U); }

Subcat TorsCtx::uplus_of(Subcat U) const {
    int k = node(U);
    if (k < 0) throw SchemaError("subcategory is not a torsion class of this context");
    return uplus[std::size_t(k)];
}

TorsCtx make_tors_ctx(const IndecTable& T, const Caps& caps) {
    TorsCtx ctx;
    ctx.tab = &T;
    ctx.tors = enumerate_tors(T, caps);
    ctx.hd = labeled_tors_hasse(T, ctx.tors);
    ctx.uplus.reserve(ctx.hd.nodes.size());
    for (Subcat u : ctx.hd.nodes) ctx.uplus.push_back(u_plus(T, ctx.hd, u));
    return ctx;
}

//// interval recognition and heart enumeration /////////////////////////////

bool is_ice_interval(const TorsCtx& ctx, Subcat lower, Subcat upper) {
    if (ctx.node(upper) < 0)
        throw SchemaError("interval end is not a torsion class of this context");
    return sc_subset(lower, upper) && sc_subset(upper, ctx.uplus_of(lower));
}

std::vector<Subcat> enumerate_ice_serial(const TorsCtx& ctx, const Caps&) {
    const IndecTable& T = *ctx.tab;
    std::vector<Subcat> out;
    for (std::size_t k = 0; k < ctx.hd.nodes.size(); ++k) {
        const Subcat U = ctx.hd.nodes[k], top = ctx.uplus[k];
        for (Subcat t : ctx.tors)
            if (sc_subset(U, t) && sc_subset(t, top)) out.push_back(heart(T, U, t));
    }
    canonical_sort(out);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Subcat> enumerate_ice_parallel(const TorsCtx& ctx, const Caps& caps) {
#ifdef TIK_HAVE_OPENMP
    const IndecTable& T = *ctx.tab;
    const int N = int(ctx.hd.nodes.size());
    const int jobs = std::max(1, caps.jobs);
    std::vector<std::vector<Subcat>> chunks(static_cast<std::size_t>(jobs));
    std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(static) num_threads(jobs)
    for (int w = 0; w < jobs; ++w) {
        try {
            for (int k = w; k < N; k += jobs) {
                const Subcat U = ctx.hd.nodes[std::size_t(k)], top = ctx.uplus[std::size_t(k)];
                for (Subcat t : ctx.tors)
                    if (sc_subset(U, t) && sc_subset(t, top))
                        chunks[std::size_t(w)].push_back(heart(T, U, t));
            }
        } catch (...) {
#pragma omp critical(tik_ice_err)
            {
                if (!first_error) first_error = std::current_exception();
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    std::vector<Subcat> out;
    for (const auto& c : chunks) out.insert(out.end(), c.begin(), c.end());
    canonical_sort(out);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
#else
    return enumerate_ice_serial(ctx, caps);
#endif
}

std::vector<Subcat> enumerate_ice(const TorsCtx& ctx, const Caps& caps) {
    return caps.jobs > 1 ? enumerate_ice_parallel(ctx, caps) : enumerate_ice_serial(ctx, caps);
}

//// definition-level oracles ///////////////////////////////////////////////

bool is_ice_direct(const IndecTable& T, Subcat S, int m, const Caps& caps) {
    if (!is_extension_closed(T, S)) return false;
    const std::vector<int> mem = sc_members(S, T.n());
    if (mem.empty()) return true;
    const unsigned p = T.alg->p;

    std::uint64_t count =
        pow_checked(unsigned(m) + 1, unsigned(mem.size()), std::uint64_t(1) << 20) - 1;
    if (count * count > caps.tuple_points)
        throw CapExceeded("direct ice oracle over " + std::to_string(count) + " sums");

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
                continue; // skipped: a pass stays evidence, a failure stays definitive
            std::vector<u8> coeffs(basis.size(), 0);
            while (next_tuple(coeffs, p)) {
                const Morph f = hom_element(X, Y, basis, coeffs);
                try {
                    if (!expr_in(decompose(T, image_rep(Y, f), caps), S)) return false;
                    if (!expr_in(decompose(T, cokernel_rep(Y, f), caps), S)) return false;
                } catch (const UnknownSummand&) {
                    // image or cokernel left the table's dimension range
                } catch (const CapExceeded&) {
                }
            }
        }
    return true;
}

bool is_wide(const IndecTable& T, Subcat S, const Caps& caps) {
    if (!is_extension_closed(T, S)) return false;
    const unsigned p = T.alg->p;
    const std::vector<int> mem = sc_members(S, T.n());
    for (int i : mem)
        for (int j : mem) {
            if (T.hom[std::size_t(i)][std::size_t(j)] == 0) continue;
            const Rep& X = T.indecs[std::size_t(i)];
            const Rep& Y = T.indecs[std::size_t(j)];
            const std::vector<Morph> basis = hom_basis(X, Y);
            if (pow_checked(p, unsigned(basis.size()), caps.hom_points) > caps.hom_points)
                throw CapExceeded("wide test: Hom(" + T.names[std::size_t(i)] + ", " +
                                  T.names[std::size_t(j)] + ") too large to enumerate");
            std::vector<u8> coeffs(basis.size(), 0);
            while (next_tuple(coeffs, p)) {
                const Morph f = hom_element(X, Y, basis, coeffs);
                if (!expr_in(decompose(T, kernel_rep(X, f), caps), S)) return false;
                if (!expr_in(decompose(T, cokernel_rep(Y, f), caps), S)) return false;
            }
        }
    return true;
}

//// wide subcategories /////////////////////////////////////////////////////

Subcat wide_of_torsionfree(const IndecTable& T, Subcat F, const Caps& caps) {
    const unsigned p = T.alg->p;
    const std::vector<int> mem = sc_members(F, T.n());
    Subcat out = 0;
    for (int i : mem) {
        bool keep = true;
        for (int j : mem) {
            if (T.hom[std::size_t(i)][std::size_t(j)] == 0) continue;
            const Rep& X = T.indecs[std::size_t(i)];
            const Rep& Y = T.indecs[std::size_t(j)];
            const std::vector<Morph> basis = hom_basis(X, Y);
            if (pow_checked(p, unsigned(basis.size()), caps.hom_points) > caps.hom_points)
                throw CapExceeded("wide extraction: Hom(" + T.names[std::size_t(i)] + ", " +
                                  T.names[std::size_t(j)] + ") too large to enumerate");
            std::vector<u8> coeffs(basis.size(), 0);
            while (keep && next_tuple(coeffs, p)) {
                const Morph f = hom_element(X, Y, basis, coeffs);
                if (!expr_in(decompose(T, cokernel_rep(Y, f), caps), F)) keep = false;
            }
            if (!keep) break;
        }
        if (keep) out |= Subcat(1) << i;
    }
    return out;
}

Subcat wide_of_tors(const TorsCtx& ctx, Subcat U, const Caps& caps) {
    const IndecTable& T = *ctx.tab;
    Subcat W = heart(T, U, ctx.uplus_of(U));
    if (!is_wide(T, W, caps))
        throw TheoremViolation("cover-join heart of " + names_join(T, U) + " is not wide");
    return W;
}

Subcat smallest_wide_containing(const IndecTable& T, Subcat C, const Caps& caps) {
    const Subcat w1 = wide_of_torsionfree(T, torf_closure(T, C), caps);

    // independent route: extension closure of C plus all kernels inside C
    const unsigned p = T.alg->p;
    Subcat gen = C;
    const std::vector<int> mem = sc_members(C, T.n());
    for (int i : mem)
        for (int j : mem) {
            if (T.hom[std::size_t(i)][std::size_t(j)] == 0) continue;
            const Rep& X = T.indecs[std::size_t(i)];
            const Rep& Y = T.indecs[std::size_t(j)];
            const std::vector<Morph> basis = hom_basis(X, Y);
            if (pow_checked(p, unsigned(basis.size()), caps.hom_points) > caps.hom_points)
                throw CapExceeded("wide closure: Hom(" + T.names[std::size_t(i)] + ", " +
                                  T.names[std::size_t(j)] + ") too large to enumerate");
            std::vector<u8> coeffs(basis.size(), 0);
            while (next_tuple(coeffs, p)) {
                const Morph f = hom_element(X, Y, basis, coeffs);
                gen |= expr_subcat(decompose(T, kernel_rep(X, f), caps));
            }
        }
    const Subcat w2 = filt_closure(T, gen);

    if (w1 != w2)
        throw TheoremViolation("wide closures of " + names_join(T, C) + " disagree: " +
                               names_join(T, w1) + " vs " + names_join(T, w2));
    return w1;
}

std::vector<int> simples_of_wide(const IndecTable& T, Subcat W, const Caps& caps) {
    if (!is_wide(T, W, caps)) throw NotWide(names_join(T, W) + " fails the wide test");
    std::vector<int> out;
    for (int x : sc_members(W, T.n())) {
        bool simple = true;
        for (const auto& [sub, quot] : T.sub_quot[std::size_t(x)]) {
            if (sub.empty() || quot.empty()) continue; // zero or the whole module
            if (expr_in(sub, W)) {
                simple = false;
                break;
            }
        }
        if (simple) out.push_back(x);
    }
    return out;
}

std::vector<Subcat> tors_in(const IndecTable& T, Subcat W, const Caps& caps) {
    if (!is_wide(T, W, caps)) throw NotWide(names_join(T, W) + " fails the wide test");
    const std::vector<int> mem = sc_members(W, T.n());
    if (mem.size() > 24)
        throw TooManyIndecs("torsion classes inside a wide subcategory with " +
                            std::to_string(mem.size()) + " members (max 24)");
    std::vector<Subcat> out;
    for (Subcat mask = 0; mask < (Subcat(1) << mem.size()); ++mask) {
        Subcat S = 0;
        for (std::size_t b = 0; b < mem.size(); ++b)
            if ((mask >> b) & 1u) S |= Subcat(1) << mem[b];

        // closed under those quotients staying in W, and under extensions
        // (middles of sequences with ends in W lie in W automatically)
        bool ok = is_extension_closed(T, S);
        for (std::size_t b = 0; ok && b < mem.size(); ++b) {
            if (!sc_has(S, mem[b])) continue;
            for (const auto& [sub, quot] : T.sub_quot[std::size_t(mem[b])])
                if (expr_in(sub, W) && !expr_in(quot, S)) {
                    ok = false;
                    break;
                }
        }
        if (ok) out.push_back(S);
    }
    canonical_sort(out);
    return out;
}

//// Ext-projectives and progenerators //////////////////////////////////////

Subcat ext_projectives(const IndecTable& T, Subcat S) {
    const std::vector<int> mem = sc_members(S, T.n());
    Subcat out = 0;
    for (int i : mem) {
        bool proj = true;
        for (int j : mem)
            if (T.ext[std::size_t(i)][std::size_t(j)] > 0) {
                proj = false;
                break;
            }
        if (proj) out |= Subcat(1) << i;
    }
    return out;
}

ModuleExpr progenerator(const IndecTable& T, Subcat S) {
    ModuleExpr e;
    for (int i : sc_members(ext_projectives(T, S), T.n())) e.add(i);
    return e;
}

void verify_enough_projectives(const IndecTable& T, Subcat S, const Caps& caps) {
    const Subcat P = ext_projectives(T, S);
    std::vector<const Rep*> fam;
    for (int i : sc_members(P, T.n())) fam.push_back(&T.indecs[std::size_t(i)]);
    for (int c : sc_members(S, T.n())) {
        const Rep& C = T.indecs[std::size_t(c)];
        RightApprox ap = minimal_right_approximation(fam, C, caps);
        if (!is_surjective_morph(C, ap.f))
            throw NotEnoughProjectives(T.names[std::size_t(c)] + " is not covered by add(" +
                                       names_join(T, P) + ")");
        if (!expr_in(decompose(T, kernel_rep(ap.source, ap.f), caps), S))
            throw NotEnoughProjectives("approximation kernel of " + T.names[std::size_t(c)] +
                                       " leaves " + names_join(T, S));
    }
}

//// intervals, sincerity, wide tau-tilting /////////////////////////////////

ModuleExpr wide_tau_tilting_of_interval(const IndecTable& T, Subcat lower, Subcat upper) {
    std::vector<const Rep*> fam;
    for (int u : sc_members(lower, T.n())) fam.push_back(&T.indecs[std::size_t(u)]);

    ModuleExpr out;
    for (const auto& [i, k] : progenerator(T, upper).mult) {
        const Rep& X = T.indecs[std::size_t(i)];
        SubQuotPair sq = sub_quot(X, trace_tuple(fam, X));
        if (sq.quot.is_zero()) continue;
        ModuleExpr piece = decompose(T, sq.quot);
        for (const auto& [pi, pk] : piece.mult) out.add(pi, pk * k);
    }

    const ModuleExpr expected = progenerator(T, heart(T, lower, upper));
    if (!(out == expected))
        throw TheoremViolation("trace quotient of the progenerator of " + names_join(T, upper) +
                               " over " + names_join(T, lower) + " is " + expr_name(T, out) +
                               ", expected " + expr_name(T, expected));
    return out;
}

bool count_formula_check(const IndecTable& T, Subcat lower, Subcat upper) {
    const int inside = progenerator(T, heart(T, lower, upper)).distinct();
    int outside = 0;
    for (const auto& kv : progenerator(T, upper).mult)
        if (!sc_has(lower, kv.first)) ++outside;
    return inside == outside;
}

std::vector<Interval> sincere_intervals(const TorsCtx& ctx, const Caps& /*caps*/) {
    const IndecTable& T = *ctx.tab;
    std::vector<Interval> out;
    for (std::size_t k = 0; k < ctx.hd.nodes.size(); ++k) {
        const Subcat U = ctx.hd.nodes[k];
        const Subcat top = ctx.uplus[k];
        const std::vector<int> covers = ctx.hd.covers_of(int(k));
        const int nc = int(covers.size());

        for (Subcat t : ctx.tors) {
            if (!(sc_subset(U, t) && sc_subset(t, top))) continue;

            int fresh = 0; // progenerator summands of t outside U
            for (const auto& kv : progenerator(T, t).mult)
                if (!sc_has(U, kv.first)) ++fresh;
            const bool by_count = fresh == nc;

            // t must escape the join of every proper subset of the covers
            // (joined over U, so the empty subset contributes U itself)
            bool by_joins = true;
            for (Subcat mask = 0; mask + 1 < (Subcat(1) << nc) && by_joins; ++mask) {
                std::vector<Subcat> xs{U};
                for (int b = 0; b < nc; ++b)
                    if ((mask >> b) & 1u)
                        xs.push_back(ctx.hd.nodes[std::size_t(covers[std::size_t(b)])]);
                if (sc_subset(t, join_tors(T, xs))) by_joins = false;
            }

            if (by_count != by_joins)
                throw CriteriaDisagree("sincerity of [" + names_join(T, U) + ", " +
                                       names_join(T, t) + "]: projective count says " +
                                       (by_count ? "yes" : "no") + ", cover joins say " +
                                       (by_joins ? "yes" : "no"));
            if (by_count) out.push_back({U, t});
        }
    }
    return out;
}

std::vector<WideTauTiltingPair> enumerate_wttilt(const TorsCtx& ctx, const Caps& caps) {
    const IndecTable& T = *ctx.tab;
    const std::vector<Interval> sint = sincere_intervals(ctx, caps);

    std::map<Subcat, Subcat> wide_cache;
    auto wide_at = [&](Subcat U) {
        auto it = wide_cache.find(U);
        if (it == wide_cache.end()) it = wide_cache.emplace(U, wide_of_tors(ctx, U, caps)).first;
        return it->second;
    };

    std::vector<WideTauTiltingPair> out;
    out.reserve(sint.size());
    for (const Interval& iv : sint) {
        WideTauTiltingPair pr;
        pr.wide = wide_at(iv.lower);
        pr.module = wide_tau_tilting_of_interval(T, iv.lower, iv.upper);
        pr.heart_cat = heart(T, iv.lower, iv.upper);
        pr.interval = iv;
        out.push_back(std::move(pr));
    }

    std::set<std::pair<Subcat, ModuleExpr>> pairs;
    std::set<ModuleExpr> modules;
    std::set<Subcat> hearts;
    for (const auto& pr : out) {
        pairs.insert({pr.wide, pr.module});
        modules.insert(pr.module);
        hearts.insert(pr.heart_cat);
    }
    if (pairs.size() != out.size() || modules.size() != out.size() || hearts.size() != out.size())
        throw BijectionViolation("sincere intervals produce repeated pairs, modules or hearts");

    const std::vector<Subcat> ice = enumerate_ice(ctx, caps);
    if (std::set<Subcat>(ice.begin(), ice.end()) != hearts)
        throw BijectionViolation("hearts of sincere intervals differ from the ice subcategories");

    std::set<ModuleExpr> via_traces;
    for (std::size_t k = 0; k < ctx.hd.nodes.size(); ++k) {
        const Subcat U = ctx.hd.nodes[k], top = ctx.uplus[k];
        for (Subcat t : ctx.tors)
            if (sc_subset(U, t) && sc_subset(t, top))
                via_traces.insert(wide_tau_tilting_of_interval(T, U, t));
    }
    if (via_traces != modules)
        throw BijectionViolation(
            "trace quotients over all ice intervals disagree with the sincere-interval modules");

    std::sort(out.begin(), out.end(), [](const WideTauTiltingPair& a, const WideTauTiltingPair& b) {
        int sa = sc_size(a.heart_cat), sb = sc_size(b.heart_cat);
        return sa != sb ? sa < sb : a.heart_cat < b.heart_cat;
    });
    return out;
}

IceHasse ice_hasse(const TorsCtx& ctx, const Caps& caps) {
    const std::vector<WideTauTiltingPair> pairs = enumerate_wttilt(ctx, caps);
    std::vector<Subcat> nodes;
    nodes.reserve(pairs.size());
    for (const auto& pr : pairs) nodes.push_back(pr.heart_cat);

    IceHasse out;
    out.hd = hasse(nodes);
    out.progenerators.resize(out.hd.nodes.size());
    for (const auto& pr : pairs)
        out.progenerators[std::size_t(out.hd.index_of(pr.heart_cat))] = pr.module;
    return out;
}

Interval realize_as_heart(const IndecTable& T, Subcat C) {
    const Subcat F = torf_closure(T, C);
    const Subcat G = F & perp_right(T, C);
    const Subcat back = F & perp_left(T, G);
    if (back != C)
        throw TheoremViolation("torsion-free realization of " + names_join(T, C) +
                               " reproduces " + names_join(T, back) + " instead");
    return {G, F};
}

} // namespace tik
