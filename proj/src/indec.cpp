#include "tik/indec.hpp"

#include <algorithm>
#include <cassert>
#include <exception>
#include <numeric>
#include <queue>

#include "tik/errors.hpp"

#ifdef TIK_HAVE_OPENMP
#include <omp.h>
#endif

namespace tik {

int ModuleExpr::total_mult() const {
    int t = 0;
    for (const auto& [i, k] : mult) t += k;
    return t;
}

void ModuleExpr::add(int idx, int k) {
    assert(k > 0);
    mult[idx] += k;
}

int default_dim_bound(const BoundAlgebra& A) {
    unsigned m = 0;
    for (int v = 0; v < A.nvert(); ++v)
        for (unsigned dv : projective(A, v).dims) m = std::max(m, dv);
    return int(m) + 1;
}

int IndecTable::index_of(const Rep& M, const Caps& caps) const {
    for (int i = 0; i < n(); ++i)
        if (indecs[i].dims == M.dims && is_isomorphic(indecs[i], M, caps)) return i;
    return -1;
}

//// tuple encoding /////////////////////////////////////////////////////////

namespace {

// entry count of the matrix tuple for a dimension vector
unsigned tuple_digits(const BoundAlgebra& A, const std::vector<unsigned>& dv) {
    unsigned e = 0;
    for (int a = 0; a < A.narrow(); ++a)
        e += dv[A.quiver.arrows[a].to] * dv[A.quiver.arrows[a].from];
    return e;
}

Rep decode_rep(const BoundAlgebra& A, const std::vector<unsigned>& dv, std::uint64_t code) {
    Rep M;
    M.alg = &A;
    M.dims = dv;
    for (int a = 0; a < A.narrow(); ++a) {
        unsigned r = dv[A.quiver.arrows[a].to], c = dv[A.quiver.arrows[a].from];
        Mat m(r, c, A.p);
        for (unsigned k = 0; k < r * c; ++k) {
            m.entries()[k] = u8(code % A.p);
            code /= A.p;
        }
        M.maps.push_back(std::move(m));
    }
    return M;
}

std::uint64_t encode_rep(const Rep& M) {
    std::uint64_t code = 0, place = 1;
    for (const Mat& m : M.maps)
        for (u8 e : m.entries()) {
            code += place * e;
            place *= M.alg->p;
        }
    return code;
}

unsigned primitive_root(unsigned p) {
    for (unsigned g = 2; g < p; ++g) {
        unsigned x = g, ord = 1;
        while (x != 1) {
            x = x * g % p;
            ++ord;
        }
        if (ord == p - 1) return g;
    }
    return 1; // p == 2
}

struct BaseChange {
    int vertex;
    Mat g, ginv;
};

// per-vertex elementary matrices: transvections plus one diagonal scaling by
// a primitive root; together they generate the product of the GL(d_v)
std::vector<BaseChange> base_change_generators(const BoundAlgebra& A,
                                               const std::vector<unsigned>& dv) {
    std::vector<BaseChange> gens;
    for (int v = 0; v < A.nvert(); ++v) {
        unsigned d = dv[v];
        if (d == 0) continue;
        for (unsigned i = 0; i < d; ++i)
            for (unsigned j = 0; j < d; ++j) {
                if (i == j) continue;
                Mat g = Mat::identity(d, A.p);
                g.set(i, j, 1);
                gens.push_back({v, g, *invert(g)});
            }
        if (A.p > 2) {
            Mat g = Mat::identity(d, A.p);
            g.set(0, 0, u8(primitive_root(A.p)));
            gens.push_back({v, g, *invert(g)});
        }
    }
    return gens;
}

Rep apply_base_change(const Rep& M, const BaseChange& bc) {
    const BoundAlgebra& A = *M.alg;
    Rep S = M;
    for (int a = 0; a < A.narrow(); ++a) {
        bool from = A.quiver.arrows[a].from == bc.vertex;
        bool to = A.quiver.arrows[a].to == bc.vertex;
        if (to && from)
            S.maps[a] = bc.g * M.maps[a] * bc.ginv;
        else if (to)
            S.maps[a] = bc.g * M.maps[a];
        else if (from)
            S.maps[a] = M.maps[a] * bc.ginv;
    }
    return S;
}

std::vector<std::vector<unsigned>> dim_vectors(int nv, int d) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> dv(nv, 0);
    while (true) {
        int v = nv - 1;
        while (v >= 0 && dv[v] == unsigned(d)) dv[v--] = 0;
        if (v < 0) break;
        ++dv[v];
        out.push_back(dv);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        unsigned sa = std::accumulate(a.begin(), a.end(), 0u);
        unsigned sb = std::accumulate(b.begin(), b.end(), 0u);
        if (sa != sb) return sa < sb;
        return a < b;
    });
    return out;
}

} // namespace

//// enumeration ////////////////////////////////////////////////////////////

IndecTable enumerate_indecomposables(const BoundAlgebra& A, int d, const Caps& caps) {
    if (d <= 0) d = default_dim_bound(A);
    IndecTable T;
    T.alg = &A;
    T.dim_bound = d;

    for (const auto& dv : dim_vectors(A.nvert(), d)) {
        const unsigned digits = tuple_digits(A, dv);
        std::uint64_t space = 1;
        for (unsigned k = 0; k < digits; ++k) {
            space *= A.p;
            if (space > caps.tuple_points)
                throw CapExceeded("indecomposable scan: p^" + std::to_string(digits) +
                                  " matrix tuples exceed the budget at bound " +
                                  std::to_string(d));
        }

        auto gens = base_change_generators(A, dv);
        std::vector<bool> seen(space, false);
        const unsigned total = std::accumulate(dv.begin(), dv.end(), 0u);

        for (std::uint64_t code = 0; code < space; ++code) {
            if (seen[code]) continue;
            seen[code] = true;
            Rep M = decode_rep(A, dv, code);
            if (!satisfies_relations(M)) continue;

            // mark the whole base-change orbit: later codes are isomorphic copies
            std::queue<std::uint64_t> bfs;
            bfs.push(code);
            while (!bfs.empty()) {
                Rep R = decode_rep(A, dv, bfs.front());
                bfs.pop();
                for (const auto& bc : gens) {
                    std::uint64_t c2 = encode_rep(apply_base_change(R, bc));
                    if (!seen[c2]) {
                        seen[c2] = true;
                        bfs.push(c2);
                    }
                }
            }

            bool indec = true;
            for (const Rep& I : T.indecs) {
                if (I.total_dim() >= total) break; // table is total-dim sorted
                bool fits = true;
                for (int v = 0; v < A.nvert(); ++v)
                    if (I.dims[v] > dv[v]) fits = false;
                if (fits && find_split_pair(I, M, caps)) {
                    indec = false;
                    break;
                }
            }
            if (indec) T.indecs.push_back(std::move(M));
        }
    }

    // Loewy-word names with collision fallback
    {
        std::vector<std::string> words(T.n());
        std::map<std::string, int> uses;
        for (int i = 0; i < T.n(); ++i) {
            const Rep& M = T.indecs[i];
            // radical powers: spans of images of length-k basis-path actions
            std::vector<std::vector<unsigned>> layers;
            std::vector<unsigned> prev = M.dims;
            for (unsigned len = 1;; ++len) {
                SubspaceTuple radk;
                for (int v = 0; v < A.nvert(); ++v) radk.push_back(Mat(0, M.dims[v], A.p));
                bool any_path = false;
                for (const auto& q : A.basis) {
                    if (q.arrows.size() != len) continue;
                    any_path = true;
                    radk[q.end] = subspace_sum(
                        radk[q.end], image_basis(path_action(M, q.start, q.arrows)));
                }
                std::vector<unsigned> cur(A.nvert());
                for (int v = 0; v < A.nvert(); ++v) cur[v] = radk[v].rows();
                std::vector<unsigned> layer(A.nvert());
                for (int v = 0; v < A.nvert(); ++v) layer[v] = prev[v] - cur[v];
                layers.push_back(layer);
                prev = cur;
                if (!any_path || std::accumulate(cur.begin(), cur.end(), 0u) == 0) break;
            }
            bool uniserial = true;
            for (const auto& l : layers)
                if (std::accumulate(l.begin(), l.end(), 0u) != 1) uniserial = false;
            if (uniserial) {
                std::string w;
                for (const auto& l : layers) {
                    for (int v = 0; v < A.nvert(); ++v)
                        if (l[v]) {
                            if (!w.empty()) w += "/";
                            w += A.quiver.vertices[v];
                        }
                }
                words[i] = w;
                ++uses[w];
            }
        }
        T.names.resize(T.n());
        for (int i = 0; i < T.n(); ++i) {
            if (!words[i].empty() && uses[words[i]] == 1) {
                T.names[i] = words[i];
            } else {
                std::string s = "I" + std::to_string(i) + ":dv(";
                for (int v = 0; v < A.nvert(); ++v)
                    s += (v ? "," : "") + std::to_string(T.indecs[i].dims[v]);
                T.names[i] = s + ")";
            }
        }
    }

    if (caps.jobs > 1)
        fill_pair_tables_parallel(T, caps);
    else
        fill_pair_tables_serial(T, caps);
    return T;
}

//// pair tables ////////////////////////////////////////////////////////////

namespace {

// all expressions over the table with the given total dimension vector
void candidates_rec(const IndecTable& T, std::vector<unsigned>& remaining, int from,
                    ModuleExpr& cur, std::vector<ModuleExpr>& out) {
    if (std::accumulate(remaining.begin(), remaining.end(), 0u) == 0) {
        out.push_back(cur);
        return;
    }
    for (int i = from; i < T.n(); ++i) {
        const auto& dims = T.indecs[i].dims;
        bool fits = true;
        for (std::size_t v = 0; v < dims.size(); ++v)
            if (dims[v] > remaining[v]) fits = false;
        if (!fits) continue;
        for (std::size_t v = 0; v < dims.size(); ++v) remaining[v] -= dims[v];
        cur.add(i);
        candidates_rec(T, remaining, i, cur, out);
        if (--cur.mult[i] == 0) cur.mult.erase(i);
        for (std::size_t v = 0; v < dims.size(); ++v) remaining[v] += dims[v];
    }
}

std::vector<ModuleExpr> sum_candidates(const IndecTable& T, const std::vector<unsigned>& dims) {
    std::vector<ModuleExpr> out;
    std::vector<unsigned> rem = dims;
    ModuleExpr cur;
    candidates_rec(T, rem, 0, cur, out);
    return out;
}

std::uint64_t pow_checked(unsigned p, unsigned e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= p;
        if (r > cap) return cap + 1;
    }
    return r;
}

// middle terms of 0 -> I_j -> M -> I_i -> 0 by scanning candidate sums for an
// injection from I_j with cokernel isomorphic to I_i
std::set<ModuleExpr> middle_terms_of(const IndecTable& T, int i, int j, const Caps& caps) {
    const BoundAlgebra& A = *T.alg;
    std::vector<unsigned> dims(A.nvert());
    for (int v = 0; v < A.nvert(); ++v) dims[v] = T.indecs[i].dims[v] + T.indecs[j].dims[v];

    std::set<ModuleExpr> out;
    for (const ModuleExpr& cand : sum_candidates(T, dims)) {
        Rep M = realize(T, cand);
        auto basis = hom_basis(T.indecs[j], M);
        if (basis.empty()) continue;
        if (pow_checked(A.p, unsigned(basis.size()), caps.hom_points) > caps.hom_points)
            throw CapExceeded("extension middle-term scan: Hom space too large");
        std::vector<u8> coeffs(basis.size(), 0);
        while (next_tuple(coeffs, A.p)) {
            Morph f = hom_element(T.indecs[j], M, basis, coeffs);
            if (!is_injective_morph(f)) continue;
            Rep coker = cokernel_rep(M, f);
            if (coker.dims == T.indecs[i].dims && is_isomorphic(coker, T.indecs[i], caps)) {
                out.insert(cand);
                break;
            }
        }
    }
    return out;
}

void fill_pair_tables(IndecTable& T, const Caps& caps, bool parallel) {
    const BoundAlgebra& A = *T.alg;
    const int n = T.n();
    T.hom.assign(n, std::vector<unsigned>(n, 0));
    T.ext.assign(n, std::vector<unsigned>(n, 0));
    T.mid.assign(n, std::vector<std::set<ModuleExpr>>(n));
    T.sub_quot.assign(n, {});
    T.brick.assign(n, false);
    T.warnings.clear();

    // syzygies are per-indec inputs to every Ext slot; compute them up front
    std::vector<Rep> p0(n), omega(n);
    for (int i = 0; i < n; ++i) {
        Cover c = projective_cover(T.indecs[i]);
        omega[i] = kernel_rep(c.p0, c.onto);
        p0[i] = std::move(c.p0);
    }

    std::exception_ptr first_error = nullptr;

    auto pair_job = [&](int i, int j) {
        T.hom[i][j] = hom_dim(T.indecs[i], T.indecs[j]);
        int e = int(hom_dim(omega[i], T.indecs[j])) - int(hom_dim(p0[i], T.indecs[j])) +
                int(hom_dim(T.indecs[i], T.indecs[j]));
        assert(e >= 0);
        T.ext[i][j] = unsigned(e);
        T.mid[i][j] = middle_terms_of(T, i, j, caps);
    };

    auto indec_job = [&](int i) {
        // brick: every nonzero endomorphism is invertible
        auto endo = hom_basis(T.indecs[i], T.indecs[i]);
        if (pow_checked(A.p, unsigned(endo.size()), caps.hom_points) > caps.hom_points)
            throw CapExceeded("brick check: endomorphism space too large");
        bool brick = true;
        std::vector<u8> coeffs(endo.size(), 0);
        while (brick && next_tuple(coeffs, A.p)) {
            Morph f = hom_element(T.indecs[i], T.indecs[i], endo, coeffs);
            for (const Mat& m : f.f)
                if (!is_invertible(m)) {
                    brick = false;
                    break;
                }
        }
        T.brick[i] = brick;

        std::set<std::pair<ModuleExpr, ModuleExpr>> sq;
        for (const auto& tuple : enumerate_submodules(T.indecs[i], caps)) {
            SubQuotPair pair = sub_quot(T.indecs[i], tuple);
            sq.insert({decompose(T, pair.sub, caps), decompose(T, pair.quot, caps)});
        }
        T.sub_quot[i].assign(sq.begin(), sq.end());
    };

    auto guarded = [&](auto&& fn) {
        try {
            fn();
        } catch (...) {
#ifdef TIK_HAVE_OPENMP
#pragma omp critical(tik_fill_err)
#endif
            {
                if (!first_error) first_error = std::current_exception();
            }
        }
    };

#ifdef TIK_HAVE_OPENMP
    if (parallel) {
        const int jobs = std::max(1, caps.jobs);
#pragma omp parallel for collapse(2) schedule(dynamic) num_threads(jobs)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) guarded([&] { pair_job(i, j); });
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
        for (int i = 0; i < n; ++i) guarded([&] { indec_job(i); });
    } else
#else
    (void)parallel;
#endif
    {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) guarded([&] { pair_job(i, j); });
        for (int i = 0; i < n; ++i) guarded([&] { indec_job(i); });
    }

    if (first_error) std::rethrow_exception(first_error);

    // a nonsplit extension whose every middle decomposes over the table would
    // have produced a second entry; only-split with ext > 0 means the table
    // is missing an indecomposable beyond the bound
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (T.ext[i][j] > 0 && T.mid[i][j].size() <= 1)
                T.warnings.push_back("incomplete bound: nonsplit extension of " + T.names[i] +
                                     " by " + T.names[j] +
                                     " has no middle term within dimension bound " +
                                     std::to_string(T.dim_bound) + "; raise the bound");
}

} // namespace

void fill_pair_tables_serial(IndecTable& T, const Caps& caps) { fill_pair_tables(T, caps, false); }

void fill_pair_tables_parallel(IndecTable& T, const Caps& caps) { fill_pair_tables(T, caps, true); }

//// expressions ////////////////////////////////////////////////////////////

ModuleExpr decompose(const IndecTable& T, const Rep& M, const Caps& caps) {
    ModuleExpr e;
    Rep cur = M;
    while (cur.total_dim() > 0) {
        bool found = false;
        for (int idx = 0; idx < T.n() && !found; ++idx) {
            const Rep& I = T.indecs[idx];
            if (I.total_dim() > cur.total_dim()) break;
            bool fits = true;
            for (std::size_t v = 0; v < I.dims.size(); ++v)
                if (I.dims[v] > cur.dims[v]) fits = false;
            if (!fits) continue;
            auto sp = find_split_pair(I, cur, caps);
            if (sp) {
                e.add(idx);
                cur = kernel_rep(cur, sp->second);
                found = true;
            }
        }
        if (!found)
            throw UnknownSummand("a direct summand of a " + std::to_string(cur.total_dim()) +
                                 "-dimensional module matches no table entry (bound " +
                                 std::to_string(T.dim_bound) + ")");
    }
    return e;
}

Rep realize(const IndecTable& T, const ModuleExpr& E) {
    std::vector<const Rep*> parts;
    for (const auto& [idx, k] : E.mult)
        for (int c = 0; c < k; ++c) parts.push_back(&T.indecs[idx]);
    return direct_sum(*T.alg, parts).sum;
}

const std::set<ModuleExpr>& ext_middle_terms(const IndecTable& T, int sub, int quot) {
    return T.mid[quot][sub];
}

std::string expr_name(const IndecTable& T, const ModuleExpr& E) {
    if (E.empty()) return "0";
    std::string s;
    for (const auto& [idx, k] : E.mult) {
        if (!s.empty()) s += "+";
        s += T.names[idx];
        if (k > 1) s += "^" + std::to_string(k);
    }
    return s;
}

} // namespace tik
