#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "mlwalk/coins.hpp"
#include "mlwalk/kernels.hpp"

using namespace mlwalk;

namespace {

std::vector<Complex> random_values(std::size_t count, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> v(count);
  for (auto& z : v) z = Complex(g(rng), g(rng));
  return v;
}

bool bit_equal(std::span<const Complex> a, std::span<const Complex> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size_bytes()) == 0;
}

}  // namespace

TEST(Kernels, ScalarCoinApplyMatchesDefinition) {
  std::mt19937_64 rng(1);
  for (int d = 1; d <= 9; ++d) {
    const auto coin = random_values(static_cast<std::size_t>(d) * d, rng);
    const auto in = random_values(d, rng);
    std::vector<Complex> out(d);
    kernels::scalar().coin_apply(coin.data(), d, in.data(), out.data());
    for (int i = 0; i < d; ++i) {
      Complex expect = 0;
      for (int j = 0; j < d; ++j) expect += coin[static_cast<std::size_t>(j) * d + i] * in[j];
      EXPECT_NEAR(std::abs(out[i] - expect), 0.0, 1e-13);
    }
  }
}

TEST(Kernels, SimdMatchesScalarBitForBit) {
  const kernels::KernelSet* simd = kernels::avx2();
  if (!simd) GTEST_SKIP() << "AVX2 kernels unavailable on this machine";
  std::mt19937_64 rng(2);
  for (int d = 1; d <= 64; ++d) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto coin = random_values(static_cast<std::size_t>(d) * d, rng);
      const auto in = random_values(d, rng);
      std::vector<Complex> a(d), b(d);
      kernels::scalar().coin_apply(coin.data(), d, in.data(), a.data());
      simd->coin_apply(coin.data(), d, in.data(), b.data());
      ASSERT_TRUE(bit_equal(a, b)) << "dim " << d;
    }
  }
  for (std::size_t count : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 31u, 1000u}) {
    const auto in = random_values(count, rng);
    std::vector<double> a(count), b(count);
    kernels::scalar().squared_norms(in.data(), count, a.data());
    simd->squared_norms(in.data(), count, b.data());
    ASSERT_EQ(std::memcmp(a.data(), b.data(), count * sizeof(double)), 0) << count;
  }
}

TEST(Kernels, SimdMatchesScalarOnCoinFamilies) {
  const kernels::KernelSet* simd = kernels::avx2();
  if (!simd) GTEST_SKIP() << "AVX2 kernels unavailable on this machine";
  std::mt19937_64 rng(3);
  for (int d = 1; d <= 50; ++d) {
    for (const CoinMatrix& c : {fourier_coin(d), grover_coin(d)}) {
      const auto in = random_values(d, rng);
      std::vector<Complex> a(d), b(d);
      kernels::scalar().coin_apply(c.column_major().data(), d, in.data(), a.data());
      simd->coin_apply(c.column_major().data(), d, in.data(), b.data());
      ASSERT_TRUE(bit_equal(a, b)) << d;
    }
  }
}

TEST(Kernels, Selection) {
  const auto names = kernels::available();
  ASSERT_FALSE(names.empty());
  EXPECT_EQ(names.front(), "scalar");
  const std::string_view before = kernels::active().name;
  EXPECT_TRUE(kernels::select("scalar"));
  EXPECT_EQ(kernels::active().name, "scalar");
  EXPECT_FALSE(kernels::select("neon-or-something"));
  EXPECT_TRUE(kernels::select("auto"));
  if (kernels::avx2()) EXPECT_EQ(kernels::active().name, "avx2");
  EXPECT_TRUE(kernels::select(before));
}
