#pragma once

// Umbrella header for the whole library.

#include "bolza/errors.hpp"
#include "bolza/hyperbolic.hpp"
#include "bolza/surface.hpp"
#include "bolza/group_ball.hpp"
#include "bolza/quotient.hpp"
#include "bolza/verify.hpp"
#include "bolza/report.hpp"
#include "bolza/render.hpp"
#include "bolza/cli.hpp"
