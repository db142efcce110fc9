#pragma once
// Everything.

#include "softpack/bounds.hpp"
#include "softpack/constants.hpp"
#include "softpack/core.hpp"
#include "softpack/geom2d.hpp"
#include "softpack/geom3d.hpp"
#include "softpack/io.hpp"
#include "softpack/montecarlo.hpp"
#include "softpack/optimizer.hpp"
#include "softpack/simplexnd.hpp"
#include "softpack/verify.hpp"
