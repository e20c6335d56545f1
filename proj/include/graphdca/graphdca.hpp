#pragma once

#include "dca.hpp"
#include "experiment.hpp"
#include "features.hpp"
#include "global_stats.hpp"
#include "graph.hpp"
#include "graphwave.hpp"
#include "groletest.hpp"
#include "harmonic_mean.hpp"
#include "parallel.hpp"
#include "perturb.hpp"
#include "random.hpp"
#include "serialize.hpp"
