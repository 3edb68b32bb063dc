#pragma once

#include "polysig/analysis.hpp"
#include "polysig/error.hpp"
#include "polysig/finitediff.hpp"
#include "polysig/gram.hpp"
#include "polysig/paths.hpp"
#include "polysig/polyapprox.hpp"
#include "polysig/polyinterp.hpp"
#include "polysig/sigoracle.hpp"
#include "polysig/solver.hpp"
#include "polysig/specfun.hpp"
