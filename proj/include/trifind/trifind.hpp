#pragma once

#include "trifind/baselines.hpp"
#include "trifind/campaigns.hpp"
#include "trifind/combinatorics.hpp"
#include "trifind/cost_model.hpp"
#include "trifind/errors.hpp"
#include "trifind/estimator.hpp"
#include "trifind/family.hpp"
#include "trifind/generators.hpp"
#include "trifind/graph.hpp"
#include "trifind/graph_io.hpp"
#include "trifind/ledger.hpp"
#include "trifind/lg_algorithm.hpp"
#include "trifind/numeric.hpp"
#include "trifind/pair_set.hpp"
#include "trifind/parallel.hpp"
#include "trifind/report.hpp"
#include "trifind/rng.hpp"
#include "trifind/stats.hpp"
