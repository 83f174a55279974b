#pragma once

// Umbrella header for the belltime toolkit.

#include "belltime/admissibility.hpp"
#include "belltime/angles.hpp"
#include "belltime/correlation_data.hpp"
#include "belltime/inequalities.hpp"
#include "belltime/json_writer.hpp"
#include "belltime/local_model.hpp"
#include "belltime/models.hpp"
#include "belltime/oracle.hpp"
#include "belltime/qm.hpp"
#include "belltime/quadrature.hpp"
#include "belltime/real_format.hpp"
#include "belltime/repro.hpp"
#include "belltime/rng.hpp"
#include "belltime/schedule.hpp"
#include "belltime/simulate.hpp"
#include "belltime/time_averages.hpp"
#include "belltime/worlds.hpp"
