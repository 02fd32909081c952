#pragma once

// Umbrella header for the whole library.

#include "iotrust/attacks.hpp"
#include "iotrust/baseline_filters.hpp"
#include "iotrust/bench.hpp"
#include "iotrust/community.hpp"
#include "iotrust/csv.hpp"
#include "iotrust/direct_trust.hpp"
#include "iotrust/metrics.hpp"
#include "iotrust/rng.hpp"
#include "iotrust/scenario.hpp"
#include "iotrust/sim.hpp"
#include "iotrust/window.hpp"
