#pragma once

// Umbrella header for the asymwit library: prepare-and-measure witnesses for
// triples of qubit states, their classical/quantum/mirror-symmetric bounds,
// finite-shot simulation, and certification verdicts.

#include "bloch.hpp"
#include "certify.hpp"
#include "mirror_opt.hpp"
#include "reference_table.hpp"
#include "rng.hpp"
#include "shot_sim.hpp"
#include "table_io.hpp"
#include "vec.hpp"
#include "witness.hpp"
