#pragma once

#include <cstddef>
#include <cstdint>

#include "lincls/dataset.hpp"

namespace lincls {

/// Two uniform [0,1] attributes; class "positive" (index 1) iff both lie in
/// the middle third. Linearly inseparable, separable after per-attribute
/// binning.
Dataset synth_band2d(std::size_t n, std::uint64_t seed);

/// Two uniform [0,1] attributes; class "positive" (index 1) iff exactly one
/// of them exceeds 0.5.
Dataset synth_xor2d(std::size_t n, std::uint64_t seed);

}  // namespace lincls
