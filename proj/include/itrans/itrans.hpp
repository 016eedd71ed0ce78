#pragma once

// Umbrella header for the independent-transversal toolkit.

#include "itrans/enumerate.hpp"
#include "itrans/error.hpp"
#include "itrans/feasible.hpp"
#include "itrans/generators.hpp"
#include "itrans/graph.hpp"
#include "itrans/haxell.hpp"
#include "itrans/instance.hpp"
#include "itrans/json_io.hpp"
#include "itrans/markov.hpp"
#include "itrans/reconfigure.hpp"
#include "itrans/swap.hpp"
#include "itrans/transversal.hpp"
#include "itrans/validate.hpp"
