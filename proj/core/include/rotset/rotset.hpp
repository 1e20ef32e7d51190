#pragma once

#include "rotset/dynamics.hpp"
#include "rotset/errors.hpp"
#include "rotset/examples.hpp"
#include "rotset/graph.hpp"
#include "rotset/homology.hpp"
#include "rotset/parallel.hpp"
#include "rotset/polytope.hpp"
#include "rotset/rational.hpp"
#include "rotset/serialize.hpp"
#include "rotset/structure.hpp"
