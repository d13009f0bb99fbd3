#pragma once

// Text format for SmoothMap values.
//
//   expr  := number                       scalar constant
//          | gamma | lambda | clamp01      elementwise, dimension from context
//          | smashv                        (sigma, tau, t) -> smash
//          | (coord k)                     k is 1-based
//          | (const v ...)
//          | (gamma e) | (lambda e) | (clamp01 e)
//          | (smash s t) | (smash s t e)
//          | (smashv a b c)
//          | (compose outer inner)
//          | (tuple e ...) | (sum e ...) | (prod e ...) | (div e e)
//          | (affine [[a11 a12 ...] ...] [b1 ...])
//          | (piece axis (b ...) e ...)   axis is 1-based
//          | (glue [sig ...] e ...)        sig over {0, 1, *}, e.g. 0*1
//          | (dim n e)                     fixes the input dimension
//
// ';' starts a comment. The input dimension of a parsed map is the one
// forced by its content (coord indices, affine widths, ...) unless a dim
// form says otherwise. Parsed maps carry the unit cube as their domain.

#include <string>
#include <string_view>

#include "tamecube/fnexpr.hpp"

namespace tamecube {

/// Throws ParseError on malformed text and DimensionError (with the source
/// position) when the pieces do not fit together.
SmoothMap parse_map(std::string_view text);

/// Canonical text: lowercase, single spaces, shortest round-trip numbers.
/// parse_map(serialize_map(f)) evaluates bit-identically to f on the unit
/// cube. Domain boxes of inner nodes are not serialized.
std::string serialize_map(const SmoothMap& f);

}  // namespace tamecube
