#pragma once

#include "hnp/badness.hpp"
#include "hnp/bounds.hpp"
#include "hnp/coloring.hpp"
#include "hnp/config.hpp"
#include "hnp/game.hpp"
#include "hnp/geometry.hpp"
#include "hnp/graph.hpp"
#include "hnp/io.hpp"
#include "hnp/rational.hpp"
#include "hnp/rng.hpp"
