#pragma once

// Umbrella header: complex-level structure of the finite rectangular well and
// the delta-barrier well (spectra, branch points, analytic continuation,
// scattering poles, contour perturbation series).

#include "specwell/types.hpp"
#include "specwell/numerics.hpp"
#include "specwell/charts.hpp"
#include "specwell/quantization.hpp"
#include "specwell/branchpoints.hpp"
#include "specwell/continuation.hpp"
#include "specwell/scattering.hpp"
#include "specwell/perturbation.hpp"
#include "specwell/deltabarrier.hpp"
#include "specwell/io.hpp"
