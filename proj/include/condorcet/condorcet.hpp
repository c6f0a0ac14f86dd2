#pragma once

#include "culture.hpp"
#include "culture_io.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "ic_limit.hpp"
#include "limit.hpp"
#include "montecarlo.hpp"
#include "numerics.hpp"
#include "orthant.hpp"
#include "rng.hpp"
#include "table1.hpp"
