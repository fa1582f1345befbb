#pragma once

/// \file
/// Umbrella header for the whole library.

#include "roegen/classify.hpp"
#include "roegen/core_model.hpp"
#include "roegen/eos.hpp"
#include "roegen/errors.hpp"
#include "roegen/fields.hpp"
#include "roegen/io/config.hpp"
#include "roegen/io/emit.hpp"
#include "roegen/io/serialize.hpp"
#include "roegen/io/svg.hpp"
#include "roegen/phase_equilibrium.hpp"
#include "roegen/potentials.hpp"
#include "roegen/process_sim.hpp"
