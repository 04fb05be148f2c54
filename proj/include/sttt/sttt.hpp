#pragma once

#include "sttt/core.hpp"
#include "sttt/graph.hpp"
#include "sttt/graph_io.hpp"
#include "sttt/patterns.hpp"
#include "sttt/generators.hpp"
#include "sttt/matching.hpp"
#include "sttt/esd.hpp"
#include "sttt/profile.hpp"
#include "sttt/oracle.hpp"
#include "sttt/combine.hpp"
#include "sttt/decomposer.hpp"
#include "sttt/treedec.hpp"
#include "sttt/recursion.hpp"
#include "sttt/solver_degree.hpp"
#include "sttt/solver_biclique.hpp"
