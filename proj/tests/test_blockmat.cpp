#include <doctest.h>

#include <random>

#include "cvar/blockmat.hpp"

using namespace cvar;

namespace {

Matrix random_spd(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Matrix G(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G(i, j) = gauss(rng);
    return G * G.transpose() + 0.1 * double(d) * Matrix::Identity(d, d);
}

BlockPartition random_partition(int d, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coin(1, 3);
    std::vector<int> sizes;
    int left = d;
    while (left > 0) {
        const int s = std::min(left, coin(rng));
        sizes.push_back(s);
        left -= s;
    }
    return BlockPartition(std::move(sizes));
}

}  // namespace

TEST_CASE("scalar LDL of a 2x2 matrix matches hand computation") {
    Matrix K(2, 2);
    K << 2, 1, 1, 2;
    const auto f = block_ldl(K, BlockPartition::singletons_then_tail(2, 0));
    CHECK(f.L(0, 0) == 1.0);
    CHECK(f.L(1, 1) == 1.0);
    CHECK(f.L(0, 1) == 0.0);
    CHECK(f.L(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f.dinv_blocks[0](0, 0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(f.dinv_blocks[1](0, 0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK((f.reconstruct() - K).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("block LDL reconstructs random SPD matrices under random partitions") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 60; ++rep) {
        const int d = 2 + int(rng() % 20);
        const Matrix K = random_spd(d, rng);
        const auto f = block_ldl(K, random_partition(d, rng));
        const double rel = (f.reconstruct() - K).norm() / K.norm();
        CHECK(rel <= 1e-10);
    }
}

TEST_CASE("diagonal blocks of L are exact identities and strictly upper part is zero") {
    std::mt19937_64 rng(11);
    const int d = 9;
    const Matrix K = random_spd(d, rng);
    const BlockPartition part({1, 2, 3, 3});
    const auto f = block_ldl(K, part);
    for (int b = 0; b < part.num_blocks(); ++b) {
        const int o = part.offset(b), s = part.size(b);
        CHECK((f.L.block(o, o, s, s) - Matrix::Identity(s, s)).cwiseAbs().maxCoeff() == 0.0);
    }
    std::vector<int> block_of(static_cast<size_t>(d));
    for (int b = 0; b < part.num_blocks(); ++b)
        for (int k = 0; k < part.size(b); ++k) block_of[size_t(part.offset(b) + k)] = b;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (block_of[size_t(j)] > block_of[size_t(i)]) CHECK(f.L(i, j) == 0.0);
}

TEST_CASE("nesting: first d rows agree with the all-singleton factorization") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 30; ++rep) {
        const int d = 2 + int(rng() % 5);
        const int tail = 1 + int(rng() % 8);
        const Matrix K = random_spd(d + tail, rng);
        const auto fb = block_ldl(K, BlockPartition::singletons_then_tail(d, tail));
        const auto fs =
            block_ldl(K, BlockPartition::singletons_then_tail(d + tail, 0));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j <= i; ++j)
                CHECK(fb.L(i, j) == doctest::Approx(fs.L(i, j)).epsilon(1e-12));
            CHECK(fb.dinv_blocks[size_t(i)](0, 0) ==
                  doctest::Approx(fs.dinv_blocks[size_t(i)](0, 0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("caller-supplied trailing block is recorded verbatim") {
    std::mt19937_64 rng(5);
    const Matrix K = random_spd(6, rng);
    Matrix tail = random_spd(4, rng);
    const auto f = block_ldl(K, BlockPartition::singletons_then_tail(2, 4), tail);
    CHECK((f.dinv_blocks.back() - tail).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("non positive definite input is rejected") {
    Matrix K(2, 2);
    K << 1, 2, 2, 1;  // indefinite
    CHECK_THROWS_AS(block_ldl(K, BlockPartition::singletons_then_tail(2, 0)),
                    NotPositiveDefinite);
    CHECK_THROWS_AS(spd_inverse(K), NotPositiveDefinite);
}

TEST_CASE("spd_inverse inverts and symmetrizes") {
    std::mt19937_64 rng(31);
    const Matrix K = random_spd(7, rng);
    const Matrix Ki = spd_inverse(K);
    CHECK((K * Ki - Matrix::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((Ki - Ki.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("is_symmetric distinguishes near-symmetric from asymmetric") {
    Matrix M(2, 2);
    M << 1, 2, 2, 1;
    CHECK(is_symmetric(M));
    M(0, 1) = 2.1;
    CHECK_FALSE(is_symmetric(M));
}

TEST_CASE("partition bookkeeping") {
    const auto part = BlockPartition::singletons_then_tail(3, 6);
    CHECK(part.dim() == 9);
    CHECK(part.num_blocks() == 4);
    CHECK(part.size(3) == 6);
    CHECK(part.offset(3) == 3);
    CHECK_THROWS_AS(BlockPartition({1, 0, 2}), DimensionMismatch);
}
