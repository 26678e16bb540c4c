#pragma once

#include "onesided/errors.hpp"
#include "onesided/experiments.hpp"
#include "onesided/grid.hpp"
#include "onesided/interpolate.hpp"
#include "onesided/json_io.hpp"
#include "onesided/kernel.hpp"
#include "onesided/maximal.hpp"
#include "onesided/oscillatory.hpp"
#include "onesided/phase.hpp"
#include "onesided/suite.hpp"
#include "onesided/weight_spec.hpp"
#include "onesided/weights.hpp"
