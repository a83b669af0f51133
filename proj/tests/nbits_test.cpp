#include "magicdiv/nbits.hpp"

#include <gtest/gtest.h>

#include "magicdiv/rng.hpp"
#include "oracle.hpp"

using namespace magicdiv;

namespace {

RegisterValue reg(int bits, uint64_t v) { return RegisterValue{BitWidth{bits}, v}; }

TEST(BitWidth, RejectsUnsupportedWidths) {
  EXPECT_THROW(BitWidth{1}, DomainError);
  EXPECT_THROW(BitWidth{0}, DomainError);
  EXPECT_THROW(BitWidth{65}, DomainError);
  EXPECT_NO_THROW(BitWidth{2});
  EXPECT_NO_THROW(BitWidth{64});
}

TEST(BitWidth, MaskAndCapacity) {
  EXPECT_EQ(BitWidth{8}.mask(), 255u);
  EXPECT_EQ(BitWidth{64}.mask(), ~uint64_t{0});
  EXPECT_EQ(BitWidth{8}.capacity(), u128{256});
  EXPECT_EQ(BitWidth{64}.capacity(), static_cast<u128>(1) << 64);
  EXPECT_EQ(BitWidth{8}.half_capacity(), 128u);
}

TEST(RegisterValue, EnforcesMembership) {
  EXPECT_NO_THROW(reg(8, 255));
  EXPECT_THROW(reg(8, 256), RangeError);
  EXPECT_NO_THROW(reg(64, ~uint64_t{0}));
}

TEST(CheckedAdd, Examples) {
  EXPECT_EQ(checked_add(reg(8, 100), reg(8, 27)).value(), 127u);
  EXPECT_EQ(checked_add(reg(8, 255), reg(8, 0)).value(), 255u);
  try {
    checked_add(reg(8, 200), reg(8, 100));
    FAIL() << "expected OverflowError";
  } catch (const OverflowError& e) {
    EXPECT_EQ(e.exact_sum(), u128{300});
  }
}

TEST(CheckedAdd, WidthMismatch) {
  EXPECT_THROW(checked_add(reg(8, 1), reg(16, 1)), WidthMismatchError);
}

TEST(CheckedSub, Examples) {
  EXPECT_EQ(checked_sub(reg(8, 10), reg(8, 3)).value(), 7u);
  EXPECT_EQ(checked_sub(reg(8, 5), reg(8, 5)).value(), 0u);
  try {
    checked_sub(reg(8, 3), reg(8, 10));
    FAIL() << "expected UnderflowError";
  } catch (const UnderflowError& e) {
    EXPECT_EQ(e.deficit(), 7u);
  }
}

// Error cases are exactly {sum >= 2^N} and {b > a}; results always in range.
TEST(CheckedArith, ExhaustiveWidth8) {
  for (uint64_t a = 0; a < 256; ++a) {
    for (uint64_t b = 0; b < 256; ++b) {
      if (a + b < 256) {
        EXPECT_EQ(checked_add(reg(8, a), reg(8, b)).value(), a + b);
      } else {
        EXPECT_THROW(checked_add(reg(8, a), reg(8, b)), OverflowError);
      }
      if (b <= a) {
        EXPECT_EQ(checked_sub(reg(8, a), reg(8, b)).value(), a - b);
      } else {
        EXPECT_THROW(checked_sub(reg(8, a), reg(8, b)), UnderflowError);
      }
    }
  }
}

TEST(Shr, Examples) {
  EXPECT_EQ(shr(reg(8, 255), 3).value(), 31u);
  EXPECT_EQ(shr(reg(8, 171), 0).value(), 171u);
  EXPECT_EQ(shr(reg(8, 1), 8).value(), 0u);
  EXPECT_THROW(shr(reg(8, 1), 9), RangeError);
  EXPECT_THROW(shr(reg(8, 1), -1), RangeError);
}

TEST(Shr, FullWidthShiftAt64) {
  EXPECT_EQ(shr(reg(64, ~uint64_t{0}), 64).value(), 0u);
  EXPECT_EQ(shr(reg(64, ~uint64_t{0}), 63).value(), 1u);
}

TEST(Shr, ExhaustiveWidth8AgainstFloorDivision) {
  for (uint64_t a = 0; a < 256; ++a) {
    for (int k = 0; k <= 8; ++k) {
      EXPECT_EQ(shr(reg(8, a), k).value(), a / (uint64_t{1} << k));
    }
  }
}

TEST(Mulhi, Examples) {
  EXPECT_EQ(mulhi(reg(32, 0), reg(32, 12345)).value(), 0u);
  EXPECT_EQ(mulhi(reg(4, 15), reg(4, 15)).value(), 14u);  // 225 >> 4
  EXPECT_EQ(mulhi(reg(32, 613566757), reg(32, 4294967295)).value(), 613566756u);
  EXPECT_EQ(oracle::mulhi(613566757, 4294967295, 32), 613566756u);
}

TEST(Mulhi, ExhaustiveSmallWidthsAgainstBigIntOracle) {
  for (int bits = 2; bits <= 8; ++bits) {
    const uint64_t mask = BitWidth{bits}.mask();
    for (uint64_t a = 0; a <= mask; ++a) {
      for (uint64_t b = 0; b <= mask; ++b) {
        ASSERT_EQ(mulhi(reg(bits, a), reg(bits, b)).value(), oracle::mulhi(a, b, bits))
            << "bits=" << bits << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(Mulhi, SampledWideWidthsAgainstBigIntOracle) {
  SplitMix64 rng(2024);
  for (int bits : {12, 16, 24, 32, 48, 63, 64}) {
    const uint64_t mask = BitWidth{bits}.mask();
    for (int i = 0; i < 2000; ++i) {
      const uint64_t a = rng.next() & mask;
      const uint64_t b = rng.next() & mask;
      ASSERT_EQ(mulhi(reg(bits, a), reg(bits, b)).value(), oracle::mulhi(a, b, bits))
          << "bits=" << bits << " a=" << a << " b=" << b;
    }
  }
}

TEST(ProductBitWidth, Examples) {
  EXPECT_EQ(product_bit_width(3, 3), 4);
  EXPECT_EQ(product_bit_width(0, 12345), 0);
  EXPECT_EQ(product_bit_width(255, 255), 16);
}

TEST(ProductBitWidth, MatchesBigIntOracleOnExtremes) {
  const uint64_t top = ~uint64_t{0};
  EXPECT_EQ(product_bit_width(top, top), oracle::bit_width(oracle::BigInt{top} * top));
  EXPECT_EQ(product_bit_width(top, 1), 64);
  EXPECT_EQ(product_bit_width(1, 1), 1);
}

}  // namespace
