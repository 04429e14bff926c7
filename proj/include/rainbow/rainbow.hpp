#pragma once

#include "coloring.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "index_solver.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "rainbow_trees.hpp"
#include "rng.hpp"
#include "sweep.hpp"
#include "threshold.hpp"
