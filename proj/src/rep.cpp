#include "tik/rep.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

#include "tik/errors.hpp"

namespace tik {

//// representations ////////////////////////////////////////////////////////

unsigned Rep::total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0u); }

bool Rep::operator<(const Rep& o) const {
    if (total_dim() != o.total_dim()) return total_dim() < o.total_dim();
    if (dims != o.dims) return dims < o.dims;
    return maps < o.maps;
}

Rep zero_rep(const BoundAlgebra& A) {
    Rep m;
    m.alg = &A;
    m.dims.assign(A.nvert(), 0);
    for (int a = 0; a < A.narrow(); ++a)
        m.maps.push_back(Mat(0, 0, A.p));
    return m;
}

Rep simple(const BoundAlgebra& A, int v) {
    Rep m = zero_rep(A);
    m.dims[v] = 1;
    for (int a = 0; a < A.narrow(); ++a)
        m.maps[a] = Mat(m.dims[A.quiver.arrows[a].to], m.dims[A.quiver.arrows[a].from], A.p);
    return m;
}

namespace {

// basis ids of paths starting at v, grouped by end vertex, in global basis order
std::vector<std::vector<int>> projective_path_layout(const BoundAlgebra& A, int v) {
    std::vector<std::vector<int>> layout(A.nvert());
    for (int id = 0; id < int(A.basis.size()); ++id)
        if (A.basis[id].start == v) layout[A.basis[id].end].push_back(id);
    for (auto& g : layout) std::sort(g.begin(), g.end());
    return layout;
}

} // namespace

Rep projective(const BoundAlgebra& A, int v) {
    auto layout = projective_path_layout(A, v);
    std::map<int, unsigned> pos; // global basis id -> position in its end group
    for (int w = 0; w < A.nvert(); ++w)
        for (unsigned c = 0; c < layout[w].size(); ++c) pos[layout[w][c]] = c;

    Rep P;
    P.alg = &A;
    P.dims.resize(A.nvert());
    for (int w = 0; w < A.nvert(); ++w) P.dims[w] = unsigned(layout[w].size());
    for (int a = 0; a < A.narrow(); ++a) {
        int i = A.quiver.arrows[a].from, j = A.quiver.arrows[a].to;
        Mat m(P.dims[j], P.dims[i], A.p);
        for (unsigned c = 0; c < layout[i].size(); ++c) {
            const auto& q = A.basis[layout[i][c]];
            std::vector<int> ext = q.arrows;
            ext.push_back(a);
            auto it = A.expand.find({v, ext});
            if (it == A.expand.end()) continue; // the extended path class is zero
            for (const auto& [bid, coeff] : it->second) m.set(pos.at(bid), c, coeff);
        }
        P.maps.push_back(std::move(m));
    }
    return P;
}

bool satisfies_relations(const Rep& M) {
    const BoundAlgebra& A = *M.alg;
    for (const auto& rel : A.relations) {
        if (rel.empty()) continue;
        int src = A.quiver.arrows[rel[0].arrows.front()].from;
        int tgt = A.quiver.arrows[rel[0].arrows.back()].to;
        Mat acc(M.dims[tgt], M.dims[src], A.p);
        for (const auto& t : rel) acc = acc + path_action(M, src, t.arrows).scaled(t.coeff);
        if (!acc.is_zero()) return false;
    }
    return true;
}

Mat path_action(const Rep& M, int start, const std::vector<int>& arrows) {
    Mat acc = Mat::identity(M.dims[start], M.alg->p);
    for (int a : arrows) acc = M.maps[a] * acc;
    return acc;
}

SumLayout direct_sum(const BoundAlgebra& A, const std::vector<const Rep*>& parts) {
    SumLayout out;
    out.sum.alg = &A;
    out.sum.dims.assign(A.nvert(), 0);
    out.offsets.resize(parts.size());
    for (std::size_t k = 0; k < parts.size(); ++k) {
        out.offsets[k].resize(A.nvert());
        for (int v = 0; v < A.nvert(); ++v) {
            out.offsets[k][v] = out.sum.dims[v];
            out.sum.dims[v] += parts[k]->dims[v];
        }
    }
    for (int a = 0; a < A.narrow(); ++a) {
        int i = A.quiver.arrows[a].from, j = A.quiver.arrows[a].to;
        Mat m(out.sum.dims[j], out.sum.dims[i], A.p);
        for (std::size_t k = 0; k < parts.size(); ++k) {
            const Mat& b = parts[k]->maps[a];
            for (unsigned r = 0; r < b.rows(); ++r)
                for (unsigned c = 0; c < b.cols(); ++c)
                    m.set(out.offsets[k][j] + r, out.offsets[k][i] + c, b.at(r, c));
        }
        out.sum.maps.push_back(std::move(m));
    }
    return out;
}

//// morphisms //////////////////////////////////////////////////////////////

Morph zero_morph(const Rep& M, const Rep& N) {
    Morph f;
    for (int v = 0; v < M.alg->nvert(); ++v) f.f.push_back(Mat(N.dims[v], M.dims[v], M.alg->p));
    return f;
}

Morph identity_morph(const Rep& M) {
    Morph f;
    for (int v = 0; v < M.alg->nvert(); ++v) f.f.push_back(Mat::identity(M.dims[v], M.alg->p));
    return f;
}

Morph compose(const Rep&, const Morph& g, const Morph& f) {
    Morph h;
    for (std::size_t v = 0; v < f.f.size(); ++v) h.f.push_back(g.f[v] * f.f[v]);
    return h;
}

bool is_morphism(const Rep& M, const Rep& N, const Morph& f) {
    const BoundAlgebra& A = *M.alg;
    for (int a = 0; a < A.narrow(); ++a) {
        int i = A.quiver.arrows[a].from, j = A.quiver.arrows[a].to;
        if (!(f.f[j] * M.maps[a] - N.maps[a] * f.f[i]).is_zero()) return false;
    }
    return true;
}

bool is_injective_morph(const Morph& f) {
    for (const Mat& m : f.f)
        if (rank(m) != m.cols()) return false;
    return true;
}

bool is_surjective_morph(const Rep& N, const Morph& f) {
    for (std::size_t v = 0; v < f.f.size(); ++v)
        if (rank(f.f[v]) != N.dims[v]) return false;
    return true;
}

std::vector<Morph> hom_basis(const Rep& M, const Rep& N) {
    const BoundAlgebra& A = *M.alg;
    const int nv = A.nvert();
    // variable layout: per vertex block of N.dims[v] * M.dims[v] entries, row-major
    std::vector<unsigned> off(nv + 1, 0);
    for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + N.dims[v] * M.dims[v];
    const unsigned nvar = off[nv];

    unsigned neq = 0;
    for (int a = 0; a < A.narrow(); ++a)
        neq += N.dims[A.quiver.arrows[a].to] * M.dims[A.quiver.arrows[a].from];

    Mat sys(neq, nvar, A.p);
    unsigned row = 0;
    for (int a = 0; a < A.narrow(); ++a) {
        int i = A.quiver.arrows[a].from, j = A.quiver.arrows[a].to;
        // equation block: f_j * M_a - N_a * f_i = 0, entry (r, c): r < N.dims[j], c < M.dims[i]
        for (unsigned r = 0; r < N.dims[j]; ++r)
            for (unsigned c = 0; c < M.dims[i]; ++c) {
                // + sum_k f_j[r,k] * M_a[k,c]
                for (unsigned k = 0; k < M.dims[j]; ++k) {
                    unsigned var = off[j] + r * M.dims[j] + k;
                    sys.set(row, var, fp_add(sys.at(row, var), M.maps[a].at(k, c), A.p));
                }
                // - sum_k N_a[r,k] * f_i[k,c]
                for (unsigned k = 0; k < N.dims[i]; ++k) {
                    unsigned var = off[i] + k * M.dims[i] + c;
                    sys.set(row, var,
                            fp_sub(sys.at(row, var), N.maps[a].at(r, k), A.p));
                }
                ++row;
            }
    }

    Mat ker = kernel_basis(sys);
    std::vector<Morph> out;
    for (unsigned b = 0; b < ker.rows(); ++b) {
        Morph f;
        for (int v = 0; v < nv; ++v) {
            Mat m(N.dims[v], M.dims[v], A.p);
            for (unsigned r = 0; r < N.dims[v]; ++r)
                for (unsigned c = 0; c < M.dims[v]; ++c)
                    m.set(r, c, ker.at(b, off[v] + r * M.dims[v] + c));
            f.f.push_back(std::move(m));
        }
        out.push_back(std::move(f));
    }
    return out;
}

unsigned hom_dim(const Rep& M, const Rep& N) { return unsigned(hom_basis(M, N).size()); }

Morph hom_element(const Rep& M, const Rep& N, const std::vector<Morph>& basis,
                  const std::vector<u8>& coeffs) {
    Morph f = zero_morph(M, N);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (!coeffs[k]) continue;
        for (std::size_t v = 0; v < f.f.size(); ++v)
            f.f[v] = f.f[v] + basis[k].f[v].scaled(coeffs[k]);
    }
    return f;
}

//// submodules and quotients ///////////////////////////////////////////////

namespace {

std::vector<unsigned> leading_cols(const Mat& canonical) {
    std::vector<unsigned> piv;
    for (unsigned r = 0; r < canonical.rows(); ++r)
        for (unsigned c = 0; c < canonical.cols(); ++c)
            if (canonical.at(r, c)) {
                piv.push_back(c);
                break;
            }
    return piv;
}

} // namespace

bool is_subrep(const Rep& M, const SubspaceTuple& U) {
    const BoundAlgebra& A = *M.alg;
    for (int a = 0; a < A.narrow(); ++a) {
        int i = A.quiver.arrows[a].from, j = A.quiver.arrows[a].to;
        Mat img = canonical_rows(U[i] * M.maps[a].transpose());
        if (!subspace_contains(U[j], img)) return false;
    }
    return true;
}

SubQuotPair sub_quot(const Rep& M, const SubspaceTuple& U) {
    const BoundAlgebra& A = *M.alg;
    const int nv = A.nvert();
    const unsigned p = A.p;

    SubQuotPair out;
    out.sub.alg = out.quot.alg = &A;
    out.sub.dims.resize(nv);
    out.quot.dims.resize(nv);

    std::vector<std::vector<unsigned>> piv(nv), free_cols(nv);
    for (int v = 0; v < nv; ++v) {
        piv[v] = leading_cols(U[v]);
        std::vector<bool> is_piv(M.dims[v], false);
        for (unsigned c : piv[v]) is_piv[c] = true;
        for (unsigned c = 0; c < M.dims[v]; ++c)
            if (!is_piv[c]) free_cols[v].push_back(c);
        out.sub.dims[v] = U[v].rows();
        out.quot.dims[v] = unsigned(free_cols[v].size());

        out.incl.f.push_back(U[v].transpose()); // dims x subdims

        // projection kills rowspan(U[v]) and maps e_f to the f-th quotient coord
        Mat pr(out.quot.dims[v], M.dims[v], p);
        for (unsigned r = 0; r < free_cols[v].size(); ++r) {
            pr.set(r, free_cols[v][r], 1);
            for (unsigned i = 0; i < piv[v].size(); ++i)
                pr.set(r, piv[v][i], fp_neg(U[v].at(i, free_cols[v][r]), p));
        }
        out.proj.f.push_back(std::move(pr));
    }

    for (int a = 0; a < A.narrow(); ++a) {
        int i = A.quiver.arrows[a].from, j = A.quiver.arrows[a].to;

        // sub map: coordinates of M_a(basis row of U[i]) in the U[j] basis
        Mat s(out.sub.dims[j], out.sub.dims[i], p);
        Mat ujt = U[j].transpose(); // dims_j x subdims_j
        for (unsigned c = 0; c < out.sub.dims[i]; ++c) {
            std::vector<u8> w(M.dims[j], 0);
            for (unsigned r = 0; r < M.dims[j]; ++r) {
                unsigned acc = 0;
                for (unsigned k = 0; k < M.dims[i]; ++k)
                    acc += unsigned(M.maps[a].at(r, k)) * U[i].at(c, k);
                w[r] = u8(acc % p);
            }
            auto x = solve(ujt, w);
            assert(x.has_value() && "subspace tuple is not arrow-stable");
            for (unsigned r = 0; r < out.sub.dims[j]; ++r) s.set(r, c, (*x)[r]);
        }
        out.sub.maps.push_back(std::move(s));

        // quotient map: proj_j . M_a . (free-coord section of proj_i)
        Mat sec(M.dims[i], out.quot.dims[i], p);
        for (unsigned c = 0; c < free_cols[i].size(); ++c) sec.set(free_cols[i][c], c, 1);
        out.quot.maps.push_back(out.proj.f[j] * M.maps[a] * sec);
    }
    return out;
}

SubspaceTuple image_tuple(const Rep& N, const Morph& f) {
    SubspaceTuple t;
    for (std::size_t v = 0; v < f.f.size(); ++v) {
        t.push_back(image_basis(f.f[v]));
        (void)N;
    }
    return t;
}

SubspaceTuple kernel_tuple(const Rep& M, const Morph& f) {
    SubspaceTuple t;
    for (std::size_t v = 0; v < f.f.size(); ++v) {
        t.push_back(kernel_basis(f.f[v]));
        (void)M;
    }
    return t;
}

Rep kernel_rep(const Rep& M, const Morph& f) { return sub_quot(M, kernel_tuple(M, f)).sub; }
Rep image_rep(const Rep& N, const Morph& f) { return sub_quot(N, image_tuple(N, f)).sub; }
Rep cokernel_rep(const Rep& N, const Morph& f) { return sub_quot(N, image_tuple(N, f)).quot; }

std::vector<SubspaceTuple> enumerate_submodules(const Rep& M, const Caps& caps) {
    const BoundAlgebra& A = *M.alg;
    const int nv = A.nvert();
    std::vector<std::vector<Mat>> subs(nv);
    std::uint64_t count = 1;
    for (int v = 0; v < nv; ++v) {
        subs[v] = enumerate_subspaces(M.dims[v], A.p, caps);
        count *= subs[v].size();
        if (count > caps.tuple_points)
            throw CapExceeded("enumerate_submodules: subspace tuple count exceeds cap");
    }
    std::vector<SubspaceTuple> out;
    std::vector<std::size_t> idx(nv, 0);
    while (true) {
        SubspaceTuple t;
        for (int v = 0; v < nv; ++v) t.push_back(subs[v][idx[v]]);
        if (is_subrep(M, t)) out.push_back(std::move(t));
        int v = nv - 1;
        while (v >= 0 && ++idx[v] == subs[v].size()) idx[v--] = 0;
        if (v < 0) break;
    }
    return out;
}

//// isomorphism and splitting //////////////////////////////////////////////

namespace {

std::vector<unsigned> top_dims(const Rep& M) {
    const BoundAlgebra& A = *M.alg;
    std::vector<unsigned> t(A.nvert());
    for (int v = 0; v < A.nvert(); ++v) {
        Mat rad(0, M.dims[v], A.p);
        for (int a = 0; a < A.narrow(); ++a)
            if (A.quiver.arrows[a].to == v) rad = subspace_sum(rad, image_basis(M.maps[a]));
        t[v] = M.dims[v] - rad.rows();
    }
    return t;
}

std::vector<unsigned> socle_dims(const Rep& M) {
    const BoundAlgebra& A = *M.alg;
    std::vector<unsigned> s(A.nvert());
    for (int v = 0; v < A.nvert(); ++v) {
        Mat stacked(0, M.dims[v], A.p);
        for (int a = 0; a < A.narrow(); ++a)
            if (A.quiver.arrows[a].from == v) stacked = vstack(stacked, M.maps[a]);
        s[v] = M.dims[v] - rank(stacked);
    }
    return s;
}

std::uint64_t pow_checked(unsigned p, unsigned e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= p;
        if (r > cap) return cap + 1;
    }
    return r;
}

} // namespace

bool is_isomorphic(const Rep& M, const Rep& N, const Caps& caps) {
    if (M.dims != N.dims) return false;
    if (M.total_dim() == 0) return true;
    for (std::size_t a = 0; a < M.maps.size(); ++a)
        if (rank(M.maps[a]) != rank(N.maps[a])) return false;
    if (top_dims(M) != top_dims(N) || socle_dims(M) != socle_dims(N)) return false;

    auto basis = hom_basis(M, N);
    const unsigned h = unsigned(basis.size());
    if (h == 0) return false; // nonzero modules need at least a candidate map
    if (pow_checked(M.alg->p, h, caps.hom_points) > caps.hom_points)
        throw CapExceeded("is_isomorphic: Hom space too large to enumerate");

    std::vector<u8> coeffs(h, 0);
    while (next_tuple(coeffs, M.alg->p)) {
        Morph f = hom_element(M, N, basis, coeffs);
        bool inv = true;
        for (const Mat& m : f.f)
            if (!is_invertible(m)) {
                inv = false;
                break;
            }
        if (inv) return true;
    }
    return false;
}

std::optional<std::pair<Morph, Morph>> find_split_pair(const Rep& I, const Rep& M,
                                                       const Caps& caps) {
    const BoundAlgebra& A = *I.alg;
    const int nv = A.nvert();
    if (I.total_dim() == 0 || I.total_dim() > M.total_dim()) return std::nullopt;
    for (int v = 0; v < nv; ++v)
        if (I.dims[v] > M.dims[v]) return std::nullopt;

    auto sbasis = hom_basis(I, M);
    if (sbasis.empty()) return std::nullopt;
    if (pow_checked(A.p, unsigned(sbasis.size()), caps.hom_points) > caps.hom_points)
        throw CapExceeded("find_split_pair: Hom space too large to enumerate");
    auto qbasis = hom_basis(M, I);
    if (qbasis.empty()) return std::nullopt;

    // equation layout for q s = id_I: per vertex, I.dims[v]^2 entries
    std::vector<unsigned> off(nv + 1, 0);
    for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + I.dims[v] * I.dims[v];

    std::vector<u8> rhs(off[nv], 0);
    for (int v = 0; v < nv; ++v)
        for (unsigned r = 0; r < I.dims[v]; ++r) rhs[off[v] + r * I.dims[v] + r] = 1;

    std::vector<u8> coeffs(sbasis.size(), 0);
    while (next_tuple(coeffs, A.p)) {
        Morph s = hom_element(I, M, sbasis, coeffs);
        bool mono = true;
        for (const Mat& m : s.f)
            if (rank(m) != m.cols()) {
                mono = false;
                break;
            }
        if (!mono) continue;

        // solve sum_k c_k (qbasis[k] . s) = id_I for the c_k
        Mat sys(off[nv], unsigned(qbasis.size()), A.p);
        for (unsigned k = 0; k < qbasis.size(); ++k)
            for (int v = 0; v < nv; ++v) {
                Mat prod = qbasis[k].f[v] * s.f[v];
                for (unsigned r = 0; r < I.dims[v]; ++r)
                    for (unsigned c = 0; c < I.dims[v]; ++c)
                        sys.set(off[v] + r * I.dims[v] + c, k, prod.at(r, c));
            }
        auto x = solve(sys, rhs);
        if (!x) continue;
        Morph q = hom_element(M, I, qbasis, *x);
        return std::make_pair(std::move(s), std::move(q));
    }
    return std::nullopt;
}

//// traces, covers, Ext ////////////////////////////////////////////////////

SubspaceTuple trace_tuple(const std::vector<const Rep*>& family, const Rep& M) {
    const BoundAlgebra& A = *M.alg;
    SubspaceTuple t;
    for (int v = 0; v < A.nvert(); ++v) t.push_back(Mat(0, M.dims[v], A.p));
    for (const Rep* U : family)
        for (const Morph& f : hom_basis(*U, M))
            for (int v = 0; v < A.nvert(); ++v)
                t[v] = subspace_sum(t[v], image_basis(f.f[v]));
    return t;
}

Cover projective_cover(const Rep& M) {
    const BoundAlgebra& A = *M.alg;
    const int nv = A.nvert();
    const unsigned p = A.p;

    // lifts of a basis of top(M): complement coordinates of the radical
    std::vector<std::vector<unsigned>> lifts(nv);
    for (int v = 0; v < nv; ++v) {
        Mat rad(0, M.dims[v], p);
        for (int a = 0; a < A.narrow(); ++a)
            if (A.quiver.arrows[a].to == v) rad = subspace_sum(rad, image_basis(M.maps[a]));
        std::vector<bool> is_piv(M.dims[v], false);
        for (unsigned c : leading_cols(rad)) is_piv[c] = true;
        for (unsigned c = 0; c < M.dims[v]; ++c)
            if (!is_piv[c]) lifts[v].push_back(c);
    }

    std::vector<Rep> projs(nv);
    std::vector<const Rep*> parts;
    std::vector<int> part_vert;
    for (int v = 0; v < nv; ++v) {
        if (lifts[v].empty()) continue;
        projs[v] = projective(A, v);
        for (unsigned c = 0; c < lifts[v].size(); ++c) {
            parts.push_back(&projs[v]);
            part_vert.push_back(v);
        }
    }

    SumLayout lay = direct_sum(A, parts);
    Cover out;
    out.p0 = lay.sum;
    out.onto = zero_morph(out.p0, M);

    std::size_t part = 0;
    for (int v = 0; v < nv; ++v) {
        if (lifts[v].empty()) continue;
        auto layout = projective_path_layout(A, v);
        for (unsigned lc = 0; lc < lifts[v].size(); ++lc, ++part) {
            unsigned coord = lifts[v][lc];
            for (int w = 0; w < nv; ++w)
                for (unsigned c = 0; c < layout[w].size(); ++c) {
                    Mat act = path_action(M, v, A.basis[layout[w][c]].arrows);
                    for (unsigned r = 0; r < M.dims[w]; ++r)
                        out.onto.f[w].set(r, lay.offsets[part][w] + c, act.at(r, coord));
                }
        }
    }
    assert(is_morphism(out.p0, M, out.onto));
    assert(is_surjective_morph(M, out.onto));
    return out;
}

unsigned ext1_dim(const Rep& N, const Rep& L) {
    if (N.total_dim() == 0 || L.total_dim() == 0) return 0;
    Cover c = projective_cover(N);
    Rep omega = kernel_rep(c.p0, c.onto);
    int d = int(hom_dim(omega, L)) - int(hom_dim(c.p0, L)) + int(hom_dim(N, L));
    assert(d >= 0);
    return unsigned(d);
}

//// approximations /////////////////////////////////////////////////////////

namespace {

// flatten a morphism to a coefficient vector (for span-rank computations)
std::vector<u8> flatten(const Morph& f) {
    std::vector<u8> v;
    for (const Mat& m : f.f) v.insert(v.end(), m.entries().begin(), m.entries().end());
    return v;
}

unsigned span_rank(const std::vector<std::vector<u8>>& vecs, unsigned p) {
    if (vecs.empty()) return 0;
    Mat m(unsigned(vecs.size()), unsigned(vecs[0].size()), p);
    for (unsigned i = 0; i < vecs.size(); ++i)
        for (unsigned j = 0; j < vecs[i].size(); ++j) m.set(i, j, vecs[i][j]);
    return rank(m);
}

} // namespace

LeftApprox minimal_left_approximation(const Rep& X, const std::vector<const Rep*>& U,
                                      const Caps& caps, bool reverse_order) {
    (void)caps;
    const BoundAlgebra& A = *X.alg;

    // slot (i, c): the c-th Hom-basis map X -> U[i]
    std::vector<std::vector<Morph>> bases(U.size());
    std::vector<std::pair<int, int>> slots;
    for (std::size_t i = 0; i < U.size(); ++i) {
        bases[i] = hom_basis(X, *U[i]);
        for (std::size_t c = 0; c < bases[i].size(); ++c) slots.emplace_back(int(i), int(c));
    }

    // the approximation property of a slot set: for every target U[j], the
    // composites {g . B_ic : g in Hom(U_i, U_j), (i,c) in set} span Hom(X, U_j)
    std::vector<std::vector<std::vector<Morph>>> homs(U.size(),
                                                      std::vector<std::vector<Morph>>(U.size()));
    for (std::size_t i = 0; i < U.size(); ++i)
        for (std::size_t j = 0; j < U.size(); ++j) homs[i][j] = hom_basis(*U[i], *U[j]);

    auto is_approx = [&](const std::vector<std::pair<int, int>>& set) {
        for (std::size_t j = 0; j < U.size(); ++j) {
            unsigned need = unsigned(bases[j].size());
            if (need == 0) continue;
            std::vector<std::vector<u8>> vecs;
            for (const auto& [i, c] : set)
                for (const Morph& g : homs[i][j])
                    vecs.push_back(flatten(compose(X, g, bases[i][c])));
            if (span_rank(vecs, A.p) < need) return false;
        }
        return true;
    };

    std::vector<std::pair<int, int>> kept = slots;
    std::vector<std::pair<int, int>> order = slots;
    if (reverse_order) std::reverse(order.begin(), order.end());
    for (const auto& slot : order) {
        std::vector<std::pair<int, int>> trial;
        for (const auto& s : kept)
            if (s != slot) trial.push_back(s);
        if (trial.size() != kept.size() && is_approx(trial)) kept = std::move(trial);
    }

    LeftApprox out;
    out.picked = kept;
    std::vector<const Rep*> parts;
    for (const auto& [i, c] : kept) parts.push_back(U[i]);
    SumLayout lay = direct_sum(A, parts);
    out.target = lay.sum;
    out.f = zero_morph(X, out.target);
    for (std::size_t k = 0; k < kept.size(); ++k) {
        const Morph& b = bases[kept[k].first][kept[k].second];
        for (int v = 0; v < A.nvert(); ++v)
            for (unsigned r = 0; r < U[kept[k].first]->dims[v]; ++r)
                for (unsigned c = 0; c < X.dims[v]; ++c)
                    out.f.f[v].set(lay.offsets[k][v] + r, c, b.f[v].at(r, c));
    }
    return out;
}

RightApprox minimal_right_approximation(const std::vector<const Rep*>& P, const Rep& C,
                                        const Caps& caps, bool reverse_order) {
    (void)caps;
    const BoundAlgebra& A = *C.alg;

    std::vector<std::vector<Morph>> bases(P.size());
    std::vector<std::pair<int, int>> slots;
    for (std::size_t i = 0; i < P.size(); ++i) {
        bases[i] = hom_basis(*P[i], C);
        for (std::size_t c = 0; c < bases[i].size(); ++c) slots.emplace_back(int(i), int(c));
    }

    std::vector<std::vector<std::vector<Morph>>> homs(P.size(),
                                                      std::vector<std::vector<Morph>>(P.size()));
    for (std::size_t j = 0; j < P.size(); ++j)
        for (std::size_t i = 0; i < P.size(); ++i) homs[j][i] = hom_basis(*P[j], *P[i]);

    // property: for every P[j], the composites {B_ic . g : g in Hom(P_j, P_i)}
    // span Hom(P_j, C)
    auto is_approx = [&](const std::vector<std::pair<int, int>>& set) {
        for (std::size_t j = 0; j < P.size(); ++j) {
            unsigned need = unsigned(bases[j].size());
            if (need == 0) continue;
            std::vector<std::vector<u8>> vecs;
            for (const auto& [i, c] : set)
                for (const Morph& g : homs[j][i])
                    vecs.push_back(flatten(compose(*P[j], bases[i][c], g)));
            if (span_rank(vecs, A.p) < need) return false;
        }
        return true;
    };

    std::vector<std::pair<int, int>> kept = slots;
    std::vector<std::pair<int, int>> order = slots;
    if (reverse_order) std::reverse(order.begin(), order.end());
    for (const auto& slot : order) {
        std::vector<std::pair<int, int>> trial;
        for (const auto& s : kept)
            if (s != slot) trial.push_back(s);
        if (trial.size() != kept.size() && is_approx(trial)) kept = std::move(trial);
    }

    RightApprox out;
    out.picked = kept;
    std::vector<const Rep*> parts;
    for (const auto& [i, c] : kept) parts.push_back(P[i]);
    SumLayout lay = direct_sum(A, parts);
    out.source = lay.sum;
    out.f = zero_morph(out.source, C);
    for (std::size_t k = 0; k < kept.size(); ++k) {
        const Morph& b = bases[kept[k].first][kept[k].second];
        for (int v = 0; v < A.nvert(); ++v)
            for (unsigned r = 0; r < C.dims[v]; ++r)
                for (unsigned c = 0; c < P[kept[k].first]->dims[v]; ++c)
                    out.f.f[v].set(r, lay.offsets[k][v] + c, b.f[v].at(r, c));
    }
    return out;
}

} // namespace tik
