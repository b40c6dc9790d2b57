#pragma once

#include "digft/basis.hpp"
#include "digft/core.hpp"
#include "digft/experiments.hpp"
#include "digft/gft.hpp"
#include "digft/graph.hpp"
#include "digft/io.hpp"
#include "digft/parallel.hpp"
#include "digft/random.hpp"
#include "digft/spectral.hpp"
#include "digft/variation.hpp"
