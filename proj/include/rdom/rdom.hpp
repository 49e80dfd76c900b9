#pragma once

#include "rdom/balls.hpp"
#include "rdom/cells.hpp"
#include "rdom/contract.hpp"
#include "rdom/cover.hpp"
#include "rdom/generate.hpp"
#include "rdom/graph.hpp"
#include "rdom/io.hpp"
#include "rdom/planarity.hpp"
#include "rdom/support.hpp"
#include "rdom/system.hpp"
#include "rdom/voronoi.hpp"
