#pragma once

#include "tges/graph/cpdag.hpp"
#include "tges/graph/extension.hpp"
#include "tges/graph/knowledge.hpp"
#include "tges/graph/meek.hpp"
#include "tges/graph/mpdag.hpp"
#include "tges/graph/pdag.hpp"
#include "tges/graph/properties.hpp"
