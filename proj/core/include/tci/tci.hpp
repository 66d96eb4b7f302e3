#pragma once

#include "tci/candidates.hpp"
#include "tci/certify.hpp"
#include "tci/convex_calc.hpp"
#include "tci/convex_gauge.hpp"
#include "tci/error.hpp"
#include "tci/laplace.hpp"
#include "tci/measure.hpp"
#include "tci/numeric.hpp"
#include "tci/orlicz.hpp"
#include "tci/parallel.hpp"
#include "tci/random.hpp"
#include "tci/scalar_search.hpp"
#include "tci/transport.hpp"
