#include "magicdiv/magic.hpp"

#include <gtest/gtest.h>

#include "magicdiv/rng.hpp"
#include "oracle.hpp"

using namespace magicdiv;

namespace {

RegisterValue reg(int bits, uint64_t v) { return RegisterValue{BitWidth{bits}, v}; }

MagicParams params_for(int bits, uint64_t d) {
  return precompute_magic(BitWidth{bits}, reg(bits, d));
}

TEST(CeilLog2, Examples) {
  EXPECT_EQ(ceil_log2(reg(32, 1)), 0);
  EXPECT_EQ(ceil_log2(reg(32, 8)), 3);
  EXPECT_EQ(ceil_log2(reg(32, 7)), 3);
  EXPECT_THROW(ceil_log2(reg(32, 0)), DomainError);
}

// 2^(p-1) < d <= 2^p for every d >= 2, and p <= N.
TEST(CeilLog2, ConsistencyExhaustiveThrough16Bits) {
  for (int bits : {2, 8, 16}) {
    const uint64_t mask = BitWidth{bits}.mask();
    for (uint64_t d = 1; d <= mask; ++d) {
      const int p = ceil_log2(reg(bits, d));
      ASSERT_LE(p, bits);
      if (d == 1) {
        ASSERT_EQ(p, 0);
      } else {
        ASSERT_LT(uint64_t{1} << (p - 1), d);
        ASSERT_LE(d, uint64_t{1} << p);
      }
    }
  }
}

TEST(CeilLog2, TopOfU64) {
  EXPECT_EQ(ceil_log2(reg(64, ~uint64_t{0})), 64);
  EXPECT_EQ(ceil_log2(reg(64, uint64_t{1} << 63)), 63);
  EXPECT_EQ(ceil_log2(reg(64, (uint64_t{1} << 63) + 1)), 64);
}

TEST(IsPowerOfTwo, Examples) {
  EXPECT_TRUE(is_power_of_two(reg(8, 1)));
  EXPECT_TRUE(is_power_of_two(reg(8, 64)));
  EXPECT_FALSE(is_power_of_two(reg(8, 7)));
  EXPECT_THROW(is_power_of_two(reg(8, 0)), DomainError);
}

TEST(FullMagic, Examples) {
  EXPECT_EQ(full_magic(BitWidth{32}, reg(32, 1)).str(), "4294967296");
  EXPECT_EQ(full_magic(BitWidth{32}, reg(32, 3)).str(), "5726623062");
  EXPECT_EQ(full_magic(BitWidth{32}, reg(32, 7)).str(), "4908534053");
  EXPECT_THROW(full_magic(BitWidth{32}, reg(32, 0)), DomainError);
}

TEST(FullMagic, MatchesBigIntCeilingOracle) {
  SplitMix64 rng(5);
  for (int bits : {2, 8, 16, 32, 53, 64}) {
    const BitWidth w{bits};
    for (int i = 0; i < 500; ++i) {
      uint64_t d = rng.next() & w.mask();
      if (d == 0) d = 1;
      const RegisterValue dv = reg(bits, d);
      const int k = bits + ceil_log2(dv);
      ASSERT_EQ(oracle::from_u192(full_magic(w, dv)), oracle::ceil_pow2_div(k, d))
          << "bits=" << bits << " d=" << d;
    }
  }
  // Largest shift offset: k = 128.
  const uint64_t top = ~uint64_t{0};
  EXPECT_EQ(oracle::from_u192(full_magic(BitWidth{64}, reg(64, top))),
            oracle::ceil_pow2_div(128, top));
}

TEST(PrecomputeMagic, Examples) {
  const MagicParams p3 = params_for(32, 3);
  EXPECT_EQ(p3.shift_offset, 2);
  EXPECT_EQ(p3.magic_lo.value(), 1431655766u);

  const MagicParams p7 = params_for(32, 7);
  EXPECT_EQ(p7.shift_offset, 3);
  EXPECT_EQ(p7.magic_lo.value(), 613566757u);

  const MagicParams pow31 = params_for(32, uint64_t{1} << 31);
  EXPECT_EQ(pow31.shift_offset, 31);
  EXPECT_EQ(pow31.magic_lo.value(), 0u);
}

TEST(PrecomputeMagic, LowWordIdentity) {
  SplitMix64 rng(23);
  for (int bits : {8, 16, 32, 64}) {
    const BitWidth w{bits};
    for (int i = 0; i < 300; ++i) {
      uint64_t d = rng.next() & w.mask();
      if (d == 0) d = 1;
      const MagicParams params = params_for(bits, d);
      const oracle::BigInt m = oracle::from_u192(full_magic(w, reg(bits, d)));
      ASSERT_EQ(oracle::BigInt{params.magic_lo.value()}, m - oracle::pow2(bits));
    }
  }
}

TEST(DivideGeneral, Examples) {
  EXPECT_EQ(divide_general(params_for(32, 7), reg(32, 0)).value(), 0u);
  EXPECT_EQ(divide_general(params_for(32, 1), reg(32, 12345)).value(), 12345u);
  EXPECT_EQ(divide_general(params_for(32, 7), reg(32, 4294967295)).value(), 613566756u);
}

TEST(DivideGeneral, WidthMismatch) {
  EXPECT_THROW(divide_general(params_for(32, 7), reg(16, 5)), WidthMismatchError);
}

TEST(DivideGeneralTraced, RecordsEveryStep) {
  const DivisionTrace t = divide_general_traced(params_for(32, 7), reg(32, 100));
  EXPECT_EQ(t.q_estimate.value(), 14u);
  EXPECT_EQ(t.shift_guard, 1);
  EXPECT_EQ(t.quotient.value(), 14u);
  ASSERT_EQ(t.steps.size(), 5u);
  EXPECT_EQ(t.steps[0].op, "mulhi");
  EXPECT_EQ(t.steps[0].operands, (std::vector<uint64_t>{613566757, 100}));
  EXPECT_EQ(t.steps[0].result, 14u);
  EXPECT_EQ(t.steps[1].op, "sub");
  EXPECT_EQ(t.steps[1].result, 86u);
  EXPECT_EQ(t.steps[2].op, "shr");
  EXPECT_EQ(t.steps[2].result, 43u);
  EXPECT_EQ(t.steps[3].op, "add");
  EXPECT_EQ(t.steps[3].result, 57u);
  EXPECT_EQ(t.steps[4].op, "shr");
  EXPECT_EQ(t.steps[4].result, 14u);
}

TEST(DivideGeneralTraced, DivisorOneTakesNoShift) {
  const DivisionTrace t = divide_general_traced(params_for(32, 1), reg(32, 7));
  EXPECT_EQ(t.shift_guard, 0);
  EXPECT_EQ(t.quotient.value(), 7u);
}

TEST(DivideGeneralTraced, Width8Example) {
  const DivisionTrace t = divide_general_traced(params_for(8, 3), reg(8, 255));
  EXPECT_EQ(t.quotient.value(), 85u);
}

// q estimate always equals floor(m_lo * n / 2^N) per the exact-product oracle.
TEST(DivideGeneralTraced, QEstimateMatchesExactProduct) {
  SplitMix64 rng(31);
  for (int bits : {8, 32, 64}) {
    const BitWidth w{bits};
    for (int i = 0; i < 200; ++i) {
      uint64_t d = rng.next() & w.mask();
      if (d == 0) d = 1;
      const uint64_t n = rng.next() & w.mask();
      const MagicParams params = params_for(bits, d);
      const DivisionTrace t = divide_general_traced(params, reg(bits, n));
      ASSERT_EQ(t.q_estimate.value(), oracle::mulhi(params.magic_lo.value(), n, bits));
    }
  }
}

TEST(DivideBounded, Examples) {
  EXPECT_EQ(divide_bounded(params_for(32, 7), reg(32, 2147483647)).value(), 306783378u);
  EXPECT_EQ(divide_bounded(params_for(32, 3), reg(32, 0)).value(), 0u);
  EXPECT_THROW(divide_bounded(params_for(32, 7), reg(32, uint64_t{1} << 31)), BoundError);
}

TEST(DivideBounded, DivisorOne) {
  EXPECT_EQ(divide_bounded(params_for(32, 1), reg(32, 12345)).value(), 12345u);
}

TEST(PowerOfTwoCollapse, MagicLoZeroAndZeroEstimate) {
  SplitMix64 rng(37);
  for (int bits : {8, 32, 64}) {
    const BitWidth w{bits};
    for (int pe = 0; pe < bits; ++pe) {
      const uint64_t d = uint64_t{1} << pe;
      const MagicParams params = params_for(bits, d);
      ASSERT_EQ(params.magic_lo.value(), 0u);
      for (int i = 0; i < 20; ++i) {
        const uint64_t n = rng.next() & w.mask();
        const DivisionTrace t = divide_general_traced(params, reg(bits, n));
        ASSERT_EQ(t.q_estimate.value(), 0u);
        ASSERT_EQ(t.quotient.value(), n / d);
      }
    }
  }
}

// Small-width sweep: both paths equal native division, and they agree with
// each other wherever the bounded path applies.
TEST(DividePaths, ExhaustiveSweepWidth10) {
  const int bits = 10;
  const BitWidth w{bits};
  for (uint64_t d = 1; d <= w.mask(); ++d) {
    const MagicParams params = params_for(bits, d);
    for (uint64_t n = 0; n <= w.mask(); ++n) {
      const uint64_t expected = n / d;
      ASSERT_EQ(divide_general(params, reg(bits, n)).value(), expected)
          << "d=" << d << " n=" << n;
      if (n < w.half_capacity()) {
        ASSERT_EQ(divide_bounded(params, reg(bits, n)).value(), expected)
            << "d=" << d << " n=" << n;
      }
    }
  }
}

TEST(DividePaths, SampledWideWidths) {
  SplitMix64 rng(41);
  for (int bits : {32, 48, 63, 64}) {
    const BitWidth w{bits};
    for (int i = 0; i < 3000; ++i) {
      uint64_t d = rng.next() & w.mask();
      if (d == 0) d = 1;
      const uint64_t n = rng.next() & w.mask();
      const MagicParams params = params_for(bits, d);
      ASSERT_EQ(divide_general(params, reg(bits, n)).value(), n / d)
          << "bits=" << bits << " d=" << d << " n=" << n;
      const uint64_t bounded_n = n >> 1;
      ASSERT_EQ(divide_bounded(params, reg(bits, bounded_n)).value(), bounded_n / d);
    }
  }
}

TEST(RawPaths, MatchCheckedPaths) {
  SplitMix64 rng(43);
  for (int bits : {8, 32, 64}) {
    const BitWidth w{bits};
    for (int i = 0; i < 2000; ++i) {
      uint64_t d = rng.next() & w.mask();
      if (d == 0) d = 1;
      const uint64_t n = rng.next() & w.mask();
      const MagicParams params = params_for(bits, d);
      ASSERT_EQ(divide_general_raw(params.magic_lo.value(), params.shift_offset, bits, n),
                divide_general(params, reg(bits, n)).value());
      const uint64_t bn = n & (w.mask() >> 1);
      ASSERT_EQ(divide_bounded_raw(params.magic_lo.value(), params.shift_offset, bits, bn),
                divide_bounded(params, reg(bits, bn)).value());
    }
  }
}

}  // namespace
