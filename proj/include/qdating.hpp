// qdating.hpp
// Grover-search dating market: state-vector simulator, player strategies,
// game protocols and sweep harnesses.

#pragma once

#include "qdating/error.hpp"
#include "qdating/random.hpp"
#include "qdating/csv.hpp"
#include "qdating/statevector.hpp"
#include "qdating/strategies.hpp"
#include "qdating/game.hpp"
#include "qdating/experiment.hpp"
