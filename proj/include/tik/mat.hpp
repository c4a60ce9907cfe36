#pragma once

// Exact dense linear algebra over a prime field F_p (p <= 251).
//
// This is the computational substrate for everything else: Hom spaces,
// Ext groups, submodule lattices and subcategory closures all reduce to
// row reduction over F_p.  Matrices are row-major with uint8 entries in
// [0, p); 0 x n and n x 0 matrices are legal and occur constantly (zero
// spaces, empty Hom spaces).
//
// Subspaces of F_p^n are represented by the reduced row echelon basis of
// their row span ("canonical form"), so subspace equality is bitwise
// equality and sets of subspaces deduplicate by ordinary comparison.
// Every enumeration below is deterministic (lexicographic); the core has
// no randomness anywhere.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tik/config.hpp"

namespace tik {

using u8 = std::uint8_t;

//// scalar arithmetic mod p ////////////////////////////////////////////////

bool is_prime_modulus(unsigned p); // true iff p is prime and 2 <= p <= 251

inline u8 fp_add(u8 a, u8 b, unsigned p) { return u8((unsigned(a) + b) % p); }
inline u8 fp_sub(u8 a, u8 b, unsigned p) { return u8((unsigned(a) + p - b) % p); }
inline u8 fp_mul(u8 a, u8 b, unsigned p) { return u8((unsigned(a) * b) % p); }
inline u8 fp_neg(u8 a, unsigned p) { return u8((p - a) % p); }
u8 fp_inv(u8 a, unsigned p); // extended Euclid; a must be nonzero

//// Mat ////////////////////////////////////////////////////////////////////

class Mat {
public:
    Mat() = default;
    Mat(unsigned rows, unsigned cols, unsigned p); // zero-filled
    Mat(unsigned p, std::vector<std::vector<int>> init); // for tests/fixtures

    static Mat identity(unsigned n, unsigned p);

    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }
    unsigned mod() const { return p_; }

    u8 at(unsigned i, unsigned j) const { return e_[std::size_t(i) * cols_ + j]; }
    void set(unsigned i, unsigned j, u8 v) { e_[std::size_t(i) * cols_ + j] = v; }

    const std::vector<u8>& entries() const { return e_; }
    std::vector<u8>& entries() { return e_; }

    bool operator==(const Mat& o) const = default;
    // total order usable as a map key (rows, cols, entries lex)
    bool operator<(const Mat& o) const;

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat scaled(u8 c) const;
    Mat transpose() const;

    bool is_zero() const;
    std::string str() const; // small human-readable dump for diagnostics

private:
    unsigned rows_ = 0, cols_ = 0, p_ = 2;
    std::vector<u8> e_;
};

Mat hstack(const Mat& a, const Mat& b); // same row count
Mat vstack(const Mat& a, const Mat& b); // same col count

//// row reduction and friends //////////////////////////////////////////////

struct Rref {
    Mat mat;
    std::vector<unsigned> pivots; // pivot column indices; rank == pivots.size()
};

Rref rref(const Mat& m);
unsigned rank(const Mat& m);

// Rows span {x in F_p^cols : m x = 0}; row count == cols - rank, in rref form.
Mat kernel_basis(const Mat& m);

// Canonical basis (rref rows) of the column space of m, as a subspace of
// F_p^rows.
Mat image_basis(const Mat& m);

// One solution x of m x = b (free variables zero), or nullopt.
std::optional<std::vector<u8>> solve(const Mat& m, const std::vector<u8>& b);

std::optional<Mat> invert(const Mat& m);
bool is_invertible(const Mat& m);

//// canonical subspaces ////////////////////////////////////////////////////

// rref with zero rows dropped: the canonical representative of a row span.
Mat canonical_rows(const Mat& m);

// Sum of two subspaces of the same ambient F_p^n, canonical form.
Mat subspace_sum(const Mat& a, const Mat& b);

bool subspace_eq(const Mat& a, const Mat& b);

// rowspan(inner) contained in rowspan(outer)?
bool subspace_contains(const Mat& outer, const Mat& inner);

// All subspaces of F_p^d in canonical form, ordered by (dimension, pivot
// columns, free entries) — deterministic.  Requires p^d <= caps.subspace_points.
std::vector<Mat> enumerate_subspaces(unsigned d, unsigned p, const Caps& caps = {});

//// odometers //////////////////////////////////////////////////////////////

// Advance t through F_p^|t| in lexicographic order (last coordinate fastest,
// starting from all zeros); returns false after the last tuple wraps to zero.
bool next_tuple(std::vector<u8>& t, unsigned p);

} // namespace tik
