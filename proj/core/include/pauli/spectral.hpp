#pragma once

// Fourier-spectral differentiation on periodic grids.
//
// First derivatives use the symbol i*k with the Nyquist mode zeroed, so the
// discrete derivative stays real on real data and anti-Hermitian under the
// grid inner product. Second derivatives are built from the same symbol,
// which makes (sigma . p)^2 = p^2 hold exactly on the grid.

#include <array>

#include "pauli/grid.hpp"

namespace pauli::spectral {

/// In-place unnormalised forward DFT.
void forward(const Grid& grid, ComplexArray& data);
/// In-place inverse DFT including the 1/N normalisation.
void inverse(const Grid& grid, ComplexArray& data);

/// Derivative wavenumber on `axis` for flat Fourier index `flat`
/// (zero on unused axes and at the Nyquist mode).
double derivative_symbol(const Grid& grid, int axis, std::size_t flat);

/// Multiplies a spectrum by i k_eff on `axis` (zero for unused axes).
ComplexArray multiply_ik(const Grid& grid, const ComplexArray& spectrum, int axis);

/// k_eff^2 summed over used axes, per flat Fourier index.
const RealArray& laplacian_symbol(const Grid& grid);

ComplexArray derivative(const Grid& grid, const ComplexArray& f, int axis);
/// d/dx_axis for each axis; unused axes come back as zero arrays.
std::array<ComplexArray, 3> gradient(const Grid& grid, const ComplexArray& f);
ComplexArray laplacian(const Grid& grid, const ComplexArray& f);

RealArray derivative(const Grid& grid, const RealArray& f, int axis);
std::array<RealArray, 3> gradient(const Grid& grid, const RealArray& f);

/// Sum_axis d v_axis / d x_axis.
ScalarField divergence(const VectorField& v);
VectorField curl(const VectorField& v);

}  // namespace pauli::spectral
