#pragma once

#include "fvdisc/common.hpp"
#include "fvdisc/lattice.hpp"
#include "fvdisc/kernels.hpp"
#include "fvdisc/pointset.hpp"
#include "fvdisc/quadrature.hpp"
#include "fvdisc/minimax_lp.hpp"
#include "fvdisc/discrepancy.hpp"
#include "fvdisc/dispersion.hpp"
#include "fvdisc/rates.hpp"
