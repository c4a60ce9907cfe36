#include "tik/mat.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "tik/errors.hpp"

namespace tik {

bool is_prime_modulus(unsigned p) {
    if (p < 2 || p > 251) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

u8 fp_inv(u8 a, unsigned p) {
    assert(a != 0);
    // extended Euclid on (a, p)
    int r0 = int(a) % int(p), r1 = int(p), s0 = 1, s1 = 0;
    while (r1 != 0) {
        int q = r0 / r1;
        r0 -= q * r1; std::swap(r0, r1);
        s0 -= q * s1; std::swap(s0, s1);
    }
    int v = s0 % int(p);
    if (v < 0) v += int(p);
    return u8(v);
}

Mat::Mat(unsigned rows, unsigned cols, unsigned p)
    : rows_(rows), cols_(cols), p_(p), e_(std::size_t(rows) * cols, 0) {}

Mat::Mat(unsigned p, std::vector<std::vector<int>> init) : p_(p) {
    rows_ = unsigned(init.size());
    cols_ = rows_ ? unsigned(init[0].size()) : 0;
    e_.reserve(std::size_t(rows_) * cols_);
    for (const auto& row : init) {
        assert(row.size() == cols_);
        for (int v : row) {
            int m = v % int(p);
            if (m < 0) m += int(p);
            e_.push_back(u8(m));
        }
    }
}

Mat Mat::identity(unsigned n, unsigned p) {
    Mat m(n, n, p);
    for (unsigned i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

bool Mat::operator<(const Mat& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return e_ < o.e_;
}

Mat Mat::operator*(const Mat& o) const {
    assert(cols_ == o.rows_ && p_ == o.p_);
    Mat r(rows_, o.cols_, p_);
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned k = 0; k < cols_; ++k) {
            unsigned a = at(i, k);
            if (!a) continue;
            for (unsigned j = 0; j < o.cols_; ++j)
                r.set(i, j, u8((r.at(i, j) + a * o.at(k, j)) % p_));
        }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_);
    Mat r(rows_, cols_, p_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = fp_add(e_[i], o.e_[i], p_);
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_);
    Mat r(rows_, cols_, p_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = fp_sub(e_[i], o.e_[i], p_);
    return r;
}

Mat Mat::scaled(u8 c) const {
    Mat r(rows_, cols_, p_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = fp_mul(e_[i], c, p_);
    return r;
}

Mat Mat::transpose() const {
    Mat r(cols_, rows_, p_);
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

bool Mat::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](u8 v) { return v == 0; });
}

std::string Mat::str() const {
    std::ostringstream os;
    os << rows_ << "x" << cols_ << " mod " << p_;
    for (unsigned i = 0; i < rows_; ++i) {
        os << (i ? "; " : " [");
        for (unsigned j = 0; j < cols_; ++j) os << (j ? "," : "") << int(at(i, j));
    }
    if (rows_) os << "]";
    return os.str();
}

Mat hstack(const Mat& a, const Mat& b) {
    assert(a.rows() == b.rows() && a.mod() == b.mod());
    Mat r(a.rows(), a.cols() + b.cols(), a.mod());
    for (unsigned i = 0; i < a.rows(); ++i) {
        for (unsigned j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
        for (unsigned j = 0; j < b.cols(); ++j) r.set(i, a.cols() + j, b.at(i, j));
    }
    return r;
}

Mat vstack(const Mat& a, const Mat& b) {
    assert(a.cols() == b.cols() && a.mod() == b.mod());
    Mat r(a.rows() + b.rows(), a.cols(), a.mod());
    for (unsigned i = 0; i < a.rows(); ++i)
        for (unsigned j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
    for (unsigned i = 0; i < b.rows(); ++i)
        for (unsigned j = 0; j < a.cols(); ++j) r.set(a.rows() + i, j, b.at(i, j));
    return r;
}

Rref rref(const Mat& m) {
    Rref out{m, {}};
    Mat& a = out.mat;
    const unsigned p = a.mod();
    unsigned row = 0;
    for (unsigned col = 0; col < a.cols() && row < a.rows(); ++col) {
        unsigned piv = row;
        while (piv < a.rows() && a.at(piv, col) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != row)
            for (unsigned j = 0; j < a.cols(); ++j) {
                u8 t = a.at(row, j);
                a.set(row, j, a.at(piv, j));
                a.set(piv, j, t);
            }
        u8 inv = fp_inv(a.at(row, col), p);
        for (unsigned j = 0; j < a.cols(); ++j) a.set(row, j, fp_mul(a.at(row, j), inv, p));
        for (unsigned i = 0; i < a.rows(); ++i) {
            if (i == row) continue;
            u8 f = a.at(i, col);
            if (!f) continue;
            for (unsigned j = 0; j < a.cols(); ++j)
                a.set(i, j, fp_sub(a.at(i, j), fp_mul(f, a.at(row, j), p), p));
        }
        out.pivots.push_back(col);
        ++row;
    }
    return out;
}

unsigned rank(const Mat& m) { return unsigned(rref(m).pivots.size()); }

Mat kernel_basis(const Mat& m) {
    Rref r = rref(m);
    const unsigned p = m.mod(), n = m.cols();
    std::vector<unsigned> free_cols;
    {
        std::vector<bool> is_pivot(n, false);
        for (unsigned c : r.pivots) is_pivot[c] = true;
        for (unsigned c = 0; c < n; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
    }
    Mat out(unsigned(free_cols.size()), n, p);
    for (unsigned k = 0; k < free_cols.size(); ++k) {
        unsigned fc = free_cols[k];
        out.set(k, fc, 1);
        for (unsigned i = 0; i < r.pivots.size(); ++i)
            out.set(k, r.pivots[i], fp_neg(r.mat.at(i, fc), p));
    }
    // rows are already independent; canonicalize so kernels compare bitwise
    return canonical_rows(out);
}

Mat image_basis(const Mat& m) { return canonical_rows(m.transpose()); }

std::optional<std::vector<u8>> solve(const Mat& m, const std::vector<u8>& b) {
    assert(b.size() == m.rows());
    Mat rhs(m.rows(), 1, m.mod());
    for (unsigned i = 0; i < m.rows(); ++i) rhs.set(i, 0, b[i]);
    Rref r = rref(hstack(m, rhs));
    // inconsistent iff the last column is a pivot
    for (unsigned c : r.pivots)
        if (c == m.cols()) return std::nullopt;
    std::vector<u8> x(m.cols(), 0);
    for (unsigned i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.mat.at(i, m.cols());
    return x;
}

std::optional<Mat> invert(const Mat& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const unsigned n = m.rows();
    Rref r = rref(hstack(m, Mat::identity(n, m.mod())));
    if (r.pivots.size() != n || (n && r.pivots.back() != n - 1)) return std::nullopt;
    Mat inv(n, n, m.mod());
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) inv.set(i, j, r.mat.at(i, n + j));
    return inv;
}

bool is_invertible(const Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

Mat canonical_rows(const Mat& m) {
    Rref r = rref(m);
    Mat out(unsigned(r.pivots.size()), m.cols(), m.mod());
    for (unsigned i = 0; i < r.pivots.size(); ++i)
        for (unsigned j = 0; j < m.cols(); ++j) out.set(i, j, r.mat.at(i, j));
    return out;
}

Mat subspace_sum(const Mat& a, const Mat& b) {
    assert(a.cols() == b.cols());
    return canonical_rows(vstack(a, b));
}

bool subspace_eq(const Mat& a, const Mat& b) {
    return canonical_rows(a) == canonical_rows(b);
}

bool subspace_contains(const Mat& outer, const Mat& inner) {
    Mat can = canonical_rows(outer);
    return subspace_sum(can, inner) == can;
}

std::vector<Mat> enumerate_subspaces(unsigned d, unsigned p, const Caps& caps) {
    // guard: p^d against the configured cap
    std::uint64_t pts = 1;
    for (unsigned i = 0; i < d; ++i) {
        pts *= p;
        if (pts > caps.subspace_points)
            throw CapExceeded("enumerate_subspaces: p^d = " + std::to_string(p) + "^" +
                              std::to_string(d) + " exceeds cap " +
                              std::to_string(caps.subspace_points));
    }

    std::vector<Mat> out;
    out.push_back(Mat(0, d, p)); // the zero subspace
    for (unsigned r = 1; r <= d; ++r) {
        // pivot column choices, lexicographic
        std::vector<unsigned> piv(r);
        for (unsigned i = 0; i < r; ++i) piv[i] = i;
        while (true) {
            // free positions of this echelon shape: (i, j) with j > piv[i],
            // j not a pivot column
            std::vector<std::pair<unsigned, unsigned>> free_pos;
            {
                std::vector<bool> is_piv(d, false);
                for (unsigned c : piv) is_piv[c] = true;
                for (unsigned i = 0; i < r; ++i)
                    for (unsigned j = piv[i] + 1; j < d; ++j)
                        if (!is_piv[j]) free_pos.emplace_back(i, j);
            }
            std::vector<u8> vals(free_pos.size(), 0);
            do {
                Mat m(r, d, p);
                for (unsigned i = 0; i < r; ++i) m.set(i, piv[i], 1);
                for (unsigned k = 0; k < free_pos.size(); ++k)
                    m.set(free_pos[k].first, free_pos[k].second, vals[k]);
                out.push_back(m);
            } while (next_tuple(vals, p));

            // next r-combination of {0..d-1}
            int i = int(r) - 1;
            while (i >= 0 && piv[i] == d - r + i) --i;
            if (i < 0) break;
            ++piv[i];
            for (unsigned k = unsigned(i) + 1; k < r; ++k) piv[k] = piv[k - 1] + 1;
        }
    }
    return out;
}

bool next_tuple(std::vector<u8>& t, unsigned p) {
    for (std::size_t i = t.size(); i-- > 0;) {
        if (unsigned(t[i]) + 1 < p) {
            ++t[i];
            return true;
        }
        t[i] = 0;
    }
    return false;
}

} // namespace tik
