#pragma once

#include "slice/vector.hpp"

namespace slice {

// Up operator: (Uv)(x) = sum of v over the weight-(k) subsets of x, mapping
// level k to level k+1 of the same cube.  Adjoint of apply_down.
SliceVector apply_up(const SliceVector& v);

// Down operator: (Dv)(y) = sum of v over the weight-(k) supersets of y,
// mapping level k to level k-1.
SliceVector apply_down(const SliceVector& v);

// Compositions up to the target level; identity when the level already
// matches.
SliceVector apply_up_chain(const SliceVector& v, int target_level);
SliceVector apply_down_chain(const SliceVector& v, int target_level);

// Up-then-down (down from level k+1); the zero map at level n.
SliceVector apply_up_then_down(const SliceVector& v);

// Down-then-up (up from level k-1); the zero map at level 0.  Satisfies
// down_then_up = up_then_down - (n - 2k) * id on every level.
SliceVector apply_down_then_up(const SliceVector& v);

// Adjacency of the distance-2 graph on the slice: neighbours exchange one 1
// with one 0.  Equals up_then_down - (n-k) * id and down_then_up - k * id.
SliceVector apply_adjacency(const SliceVector& v);

}  // namespace slice
