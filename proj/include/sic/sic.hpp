#pragma once

// Umbrella header for the superimposed-coding library.

#include "sic/analysis.hpp"
#include "sic/bit_pattern.hpp"
#include "sic/codegen.hpp"
#include "sic/combinatorics.hpp"
#include "sic/formats.hpp"
#include "sic/isotropic.hpp"
#include "sic/optimizer.hpp"
#include "sic/rng.hpp"
#include "sic/simulator.hpp"
#include "sic/source_model.hpp"
