#pragma once

// Umbrella header for the library. The command-line front end lives in
// algperm/cli.hpp and is not included here.

#include "algperm/errors.hpp"
#include "algperm/exact.hpp"
#include "algperm/partition.hpp"
#include "algperm/rng.hpp"
#include "algperm/permutation.hpp"
#include "algperm/characters.hpp"
#include "algperm/delta_tensor.hpp"
#include "algperm/linalg.hpp"
#include "algperm/moments.hpp"
#include "algperm/determinants.hpp"
#include "algperm/statistics.hpp"
#include "algperm/estimators.hpp"
#include "algperm/oracles.hpp"
#include "algperm/matrix_io.hpp"
#include "algperm/verify.hpp"
