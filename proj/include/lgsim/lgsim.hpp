#pragma once

#include "lgsim/core.hpp"
#include "lgsim/states.hpp"
#include "lgsim/circuit.hpp"
#include "lgsim/leggett_garg.hpp"
#include "lgsim/noise_tomography.hpp"
