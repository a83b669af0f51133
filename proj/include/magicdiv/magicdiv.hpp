#ifndef MAGICDIV_MAGICDIV_HPP
#define MAGICDIV_MAGICDIV_HPP

// Umbrella header: fast unsigned division by runtime-constant divisors via
// round-up magic numbers, with a checked N-bit register model, exhaustive
// verification sweeps, snippet generation, and benchmarking.

#include "magicdiv/bench.hpp"
#include "magicdiv/codegen.hpp"
#include "magicdiv/errors.hpp"
#include "magicdiv/magic.hpp"
#include "magicdiv/nbits.hpp"
#include "magicdiv/rng.hpp"
#include "magicdiv/verify.hpp"
#include "magicdiv/wide.hpp"

#endif  // MAGICDIV_MAGICDIV_HPP
