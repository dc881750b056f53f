#pragma once

// Umbrella header: the full header-only library.

#include "theta_bounds/constants.hpp"
#include "theta_bounds/cutoff.hpp"
#include "theta_bounds/gammainc.hpp"
#include "theta_bounds/golden.hpp"
#include "theta_bounds/kappa.hpp"
#include "theta_bounds/orbit.hpp"
#include "theta_bounds/parallel.hpp"
#include "theta_bounds/rational.hpp"
#include "theta_bounds/reduce.hpp"
#include "theta_bounds/sl2.hpp"
#include "theta_bounds/theta.hpp"
#include "theta_bounds/verify.hpp"
#include "theta_bounds/zeta.hpp"
