#pragma once

#include "plasmatune/errors.hpp"
#include "plasmatune/network.hpp"
#include "plasmatune/elements.hpp"
#include "plasmatune/plasma.hpp"
#include "plasmatune/switch_fit.hpp"
#include "plasmatune/tuner.hpp"
#include "plasmatune/transient.hpp"
#include "plasmatune/differential_evolution.hpp"
#include "plasmatune/synth.hpp"
