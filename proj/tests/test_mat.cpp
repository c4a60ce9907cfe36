#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tik/errors.hpp"
#include "tik/mat.hpp"

using namespace tik;

namespace {

Mat random_mat(std::mt19937& rng, unsigned rows, unsigned cols, unsigned p) {
    Mat m(rows, cols, p);
    std::uniform_int_distribution<unsigned> d(0, p - 1);
    for (unsigned i = 0; i < rows; ++i)
        for (unsigned j = 0; j < cols; ++j) m.set(i, j, u8(d(rng)));
    return m;
}

// Independent oracle for the subspace count: Gaussian binomial [d choose k]_p
// by the product formula, exact in u64 at this scale.
std::uint64_t gaussian_binomial(unsigned d, unsigned k, unsigned p) {
    // prod_{i=0}^{k-1} (p^{d-i} - 1) / (p^{i+1} - 1); divide stepwise to stay integral
    __int128 num = 1, den = 1;
    auto pw = [p](unsigned e) {
        __int128 r = 1;
        while (e--) r *= p;
        return r;
    };
    for (unsigned i = 0; i < k; ++i) {
        num *= pw(d - i) - 1;
        den *= pw(i + 1) - 1;
    }
    return std::uint64_t(num / den);
}

} // namespace

TEST_CASE("scalar arithmetic and primality") {
    CHECK(is_prime_modulus(2));
    CHECK(is_prime_modulus(3));
    CHECK(is_prime_modulus(251));
    CHECK_FALSE(is_prime_modulus(1));
    CHECK_FALSE(is_prime_modulus(4));
    CHECK_FALSE(is_prime_modulus(255));
    for (unsigned p : {2u, 3u, 5u, 7u, 251u})
        for (unsigned a = 1; a < p; ++a) CHECK(fp_mul(u8(a), fp_inv(u8(a), p), p) == 1);
}

TEST_CASE("rref fixed examples") {
    // identity 2x2 over F_2 -> itself, pivots [0,1]
    Rref r = rref(Mat::identity(2, 2));
    CHECK(r.mat == Mat::identity(2, 2));
    CHECK(r.pivots == std::vector<unsigned>{0, 1});

    // zero 3x2 -> zero, no pivots
    r = rref(Mat(3, 2, 2));
    CHECK(r.mat == Mat(3, 2, 2));
    CHECK(r.pivots.empty());

    // [[1,1],[1,1]] over F_2 -> [[1,1],[0,0]], pivots [0]
    r = rref(Mat(2, {{1, 1}, {1, 1}}));
    CHECK(r.mat == Mat(2, {{1, 1}, {0, 0}}));
    CHECK(r.pivots == std::vector<unsigned>{0});
}

TEST_CASE("rref is idempotent on random matrices") {
    std::mt19937 rng(20240811);
    for (unsigned p : {2u, 3u, 5u})
        for (int trial = 0; trial < 200; ++trial) {
            Mat m = random_mat(rng, 1 + rng() % 6, 1 + rng() % 6, p);
            Mat r1 = rref(m).mat;
            CHECK(rref(r1).mat == r1);
        }
}

TEST_CASE("rank-nullity on random matrices") {
    std::mt19937 rng(987654321);
    for (unsigned p : {2u, 3u})
        for (int trial = 0; trial < 500; ++trial) {
            unsigned rows = rng() % 7, cols = rng() % 7;
            Mat m = random_mat(rng, rows, cols, p);
            CHECK(rank(m) + kernel_basis(m).rows() == cols);
        }
}

TEST_CASE("kernel fixed examples") {
    CHECK(kernel_basis(Mat::identity(3, 2)).rows() == 0);
    CHECK(kernel_basis(Mat(2, 3, 2)).rows() == 3);
    // [[1,1]] over F_2: kernel spanned by (1,1)
    Mat k = kernel_basis(Mat(2, {{1, 1}}));
    CHECK(k == Mat(2, {{1, 1}}));
}

TEST_CASE("kernel vectors actually lie in the kernel") {
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 200; ++trial) {
        unsigned p = (trial % 2) ? 2 : 3;
        Mat m = random_mat(rng, 1 + rng() % 5, 1 + rng() % 5, p);
        Mat k = kernel_basis(m);
        CHECK((m * k.transpose()).is_zero());
    }
}

TEST_CASE("solve and invert") {
    // solve(identity, b) == b
    std::vector<u8> b{1, 0, 1};
    auto x = solve(Mat::identity(3, 2), b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    // inconsistent system
    CHECK_FALSE(solve(Mat(2, {{1, 1}, {1, 1}}), {0, 1}).has_value());

    // invert round-trips on random invertible matrices
    std::mt19937 rng(31337);
    int found = 0;
    while (found < 50) {
        unsigned p = (found % 2) ? 2 : 3;
        Mat m = random_mat(rng, 4, 4, p);
        if (!is_invertible(m)) continue;
        ++found;
        auto inv = invert(m);
        REQUIRE(inv.has_value());
        CHECK(m * *inv == Mat::identity(4, p));
        CHECK(*inv * m == Mat::identity(4, p));
    }
    CHECK_FALSE(invert(Mat(2, {{1, 1}, {1, 1}})).has_value());
}

TEST_CASE("random solve consistency") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        unsigned p = (trial % 2) ? 2 : 3;
        Mat m = random_mat(rng, 1 + rng() % 5, 1 + rng() % 5, p);
        // manufacture a solvable b = m * y
        std::vector<u8> y(m.cols());
        for (auto& v : y) v = u8(rng() % p);
        std::vector<u8> b(m.rows(), 0);
        for (unsigned i = 0; i < m.rows(); ++i) {
            unsigned acc = 0;
            for (unsigned j = 0; j < m.cols(); ++j) acc += unsigned(m.at(i, j)) * y[j];
            b[i] = u8(acc % p);
        }
        auto x = solve(m, b);
        REQUIRE(x.has_value());
        for (unsigned i = 0; i < m.rows(); ++i) {
            unsigned acc = 0;
            for (unsigned j = 0; j < m.cols(); ++j) acc += unsigned(m.at(i, j)) * (*x)[j];
            CHECK(acc % p == b[i]);
        }
    }
}

TEST_CASE("canonical subspaces") {
    // two bases of the same plane in F_2^3
    Mat a(2, {{1, 0, 1}, {0, 1, 1}});
    Mat b(2, {{1, 1, 0}, {0, 1, 1}});
    CHECK(subspace_eq(a, b));
    CHECK(subspace_contains(a, Mat(2, {{1, 1, 0}})));
    CHECK_FALSE(subspace_contains(Mat(2, {{1, 1, 0}}), a));
    CHECK(subspace_sum(Mat(2, {{1, 0, 0}}), Mat(2, {{0, 1, 0}})) ==
          Mat(2, {{1, 0, 0}, {0, 1, 0}}));
}

TEST_CASE("enumerate_subspaces counts match Gaussian binomials") {
    CHECK(enumerate_subspaces(1, 2).size() == 2); // 0 and F_2
    CHECK(enumerate_subspaces(2, 2).size() == 5); // 0, three lines, plane

    for (unsigned p : {2u, 3u})
        for (unsigned d = 0; d <= 4; ++d) {
            std::uint64_t expect = 0;
            for (unsigned k = 0; k <= d; ++k) expect += gaussian_binomial(d, k, p);
            auto subs = enumerate_subspaces(d, p);
            CHECK(subs.size() == expect);
            // all canonical, all distinct
            for (const auto& s : subs) CHECK(canonical_rows(s) == s);
            for (std::size_t i = 0; i + 1 < subs.size(); ++i)
                for (std::size_t j = i + 1; j < subs.size(); ++j)
                    CHECK_FALSE(subs[i] == subs[j]);
        }
}

TEST_CASE("enumerate_subspaces is deterministic and capped") {
    auto a = enumerate_subspaces(3, 2);
    auto b = enumerate_subspaces(3, 2);
    CHECK(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    Caps tight;
    tight.subspace_points = 8;
    CHECK_THROWS_AS(enumerate_subspaces(4, 2, tight), CapExceeded);
    CHECK_NOTHROW(enumerate_subspaces(3, 2, tight));
}

TEST_CASE("degenerate shapes") {
    Mat z0(0, 3, 2), z1(3, 0, 2);
    CHECK(rank(z0) == 0);
    CHECK(kernel_basis(z0).rows() == 3); // no constraints
    CHECK(rank(z1) == 0);
    CHECK(kernel_basis(z1).rows() == 0);
    CHECK((z0 * z0.transpose()).rows() == 0);
    CHECK(image_basis(z0).cols() == 0);
}

TEST_CASE("image_basis spans the column space") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        unsigned p = (trial % 2) ? 2 : 3;
        Mat m = random_mat(rng, 1 + rng() % 5, 1 + rng() % 5, p);
        Mat im = image_basis(m);
        CHECK(im.rows() == rank(m));
        // every column of m lies in the row span of im
        for (unsigned j = 0; j < m.cols(); ++j) {
            Mat col(1, m.rows(), p);
            for (unsigned i = 0; i < m.rows(); ++i) col.set(0, i, m.at(i, j));
            CHECK(subspace_contains(im, col));
        }
    }
}
