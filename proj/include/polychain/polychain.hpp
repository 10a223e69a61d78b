#pragma once

// Tolerance analysis with polytopes of small displacements: geometric,
// contact, and functional specifications compile into constraint rows over
// screw space; series chains compose by Minkowski sum, parallel chains by
// intersection; requirements are verified by polytope inclusion.

#include "polychain/chain.hpp"
#include "polychain/common.hpp"
#include "polychain/enumerate.hpp"
#include "polychain/linalg.hpp"
#include "polychain/lp.hpp"
#include "polychain/mechanism.hpp"
#include "polychain/polytope.hpp"
#include "polychain/records.hpp"
#include "polychain/representation.hpp"
#include "polychain/rows.hpp"
#include "polychain/screw.hpp"
#include "polychain/surface.hpp"
