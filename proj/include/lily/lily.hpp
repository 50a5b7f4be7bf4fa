#pragma once

#include "lily/csv.hpp"
#include "lily/dynamics.hpp"
#include "lily/ensemble.hpp"
#include "lily/experiments.hpp"
#include "lily/fidelity.hpp"
#include "lily/graph.hpp"
#include "lily/noise.hpp"
#include "lily/special.hpp"
