#pragma once

// Conditional SIC-POVMs: construction from planar difference sets,
// certification of the optimality conditions, canonical dual frames, and a
// Monte-Carlo tomography simulator for the mean squared estimation error.

#include "csic/basis.hpp"
#include "csic/certify.hpp"
#include "csic/diffset.hpp"
#include "csic/dual.hpp"
#include "csic/io.hpp"
#include "csic/linalg.hpp"
#include "csic/optim.hpp"
#include "csic/povm.hpp"
#include "csic/rng.hpp"
#include "csic/scheme.hpp"
#include "csic/superop.hpp"
#include "csic/tomo.hpp"
