#pragma once

#include "kronecker/alpha.hpp"
#include "kronecker/best_approx.hpp"
#include "kronecker/continued_fraction.hpp"
#include "kronecker/errors.hpp"
#include "kronecker/gap_spectrum.hpp"
#include "kronecker/orbit.hpp"
#include "kronecker/rational.hpp"
#include "kronecker/search.hpp"
#include "kronecker/torus.hpp"
