#pragma once

#include "tges/error.hpp"
#include "tges/graphs.hpp"
#include "tges/io/csv.hpp"
#include "tges/io/graph_io.hpp"
#include "tges/log.hpp"
#include "tges/metrics/metrics.hpp"
#include "tges/metrics/summary.hpp"
#include "tges/oracle/oracle.hpp"
#include "tges/scoring/dataset.hpp"
#include "tges/scoring/gaussian_bic.hpp"
#include "tges/scoring/score.hpp"
#include "tges/search/greedy.hpp"
#include "tges/search/move.hpp"
#include "tges/search/tune.hpp"
#include "tges/simulate/rng.hpp"
#include "tges/simulate/simulate.hpp"
