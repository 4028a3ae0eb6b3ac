#pragma once

#include "cylnls/field.hpp"

namespace cylnls {

/// Move a field to the requested representation. Unitary normalization:
/// the discrete l^2 norm of the sample array is invariant, so Parseval holds
/// with the same measure weights on both sides.
ComplexField transform(const ComplexField& f, SpaceTag target);

/// In-place unitary passes over one axis group of a flattened sample array.
/// These are the building blocks of transform(); norm and propagator code
/// uses them directly when no tag bookkeeping is needed.
void fft_y(const CylinderGrid& grid, std::vector<Complex>& values, bool forward);
void fft_x(const CylinderGrid& grid, std::vector<Complex>& values, bool forward);

}  // namespace cylnls
