#pragma once

// Umbrella header: spreading-process analysis on feature-weighted networks.

#include "spreadnet/analysis.hpp"
#include "spreadnet/cascade.hpp"
#include "spreadnet/centrality.hpp"
#include "spreadnet/common.hpp"
#include "spreadnet/csv.hpp"
#include "spreadnet/experiments.hpp"
#include "spreadnet/features.hpp"
#include "spreadnet/graph.hpp"
#include "spreadnet/rng.hpp"
#include "spreadnet/tim.hpp"
