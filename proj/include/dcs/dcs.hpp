#pragma once

// Umbrella header for the density-contrast-subgraph library.

#include "dcs/cooccurrence.hpp"
#include "dcs/core_decomposition.hpp"
#include "dcs/dcsad.hpp"
#include "dcs/dcsga.hpp"
#include "dcs/density.hpp"
#include "dcs/difference_graph.hpp"
#include "dcs/embedding.hpp"
#include "dcs/errors.hpp"
#include "dcs/indexed_min_queue.hpp"
#include "dcs/new_sea.hpp"
#include "dcs/oracle.hpp"
#include "dcs/replicator.hpp"
#include "dcs/solver_config.hpp"
#include "dcs/weighted_graph.hpp"
