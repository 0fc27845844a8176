#pragma once

#include "upm/behavior_graph.hpp"
#include "upm/behavior_net.hpp"
#include "upm/conformance.hpp"
#include "upm/discovery.hpp"
#include "upm/error.hpp"
#include "upm/json_export.hpp"
#include "upm/petri_net.hpp"
#include "upm/pnml_io.hpp"
#include "upm/realizations.hpp"
#include "upm/simulation.hpp"
#include "upm/statistics.hpp"
#include "upm/uncertain_log.hpp"
#include "upm/xes_io.hpp"
