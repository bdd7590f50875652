#pragma once

// Standard states used throughout tests, the CLI generator and campaigns.

#include "borromean/tensor.hpp"

#include <vector>

namespace borromean {

/// Computational basis state |digits>.
PureState basis_state(const SiteDims& dims, const std::vector<int>& digits);

/// (|00..0> + |11..1> + ... + |d-1..d-1>) / sqrt(d) on n sites of dimension d.
PureState ghz_state(int sites, int d = 2);

/// Equal superposition of the n single-excitation qubit strings.
PureState w_state(int sites);

/// (|00> + |11>) / sqrt(2).
PureState bell_state();

/// (|0> + |1>) / sqrt(2).
PureState plus_state();

/// Tensor product of the given local vectors, each normalized first.
PureState product_state(const std::vector<ComplexVector>& factors);

}  // namespace borromean
