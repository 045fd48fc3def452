#pragma once

// Umbrella header for the whole library.

#include "error.hpp"
#include "jumps.hpp"
#include "lattice.hpp"
#include "matrix.hpp"
#include "motivic.hpp"
#include "multiset.hpp"
#include "number.hpp"
#include "pushout.hpp"
#include "spec_format.hpp"
#include "valuation.hpp"
#include "zeta.hpp"
