#pragma once

#include "gronwall/area_formula.hpp"
#include "gronwall/area_oracle.hpp"
#include "gronwall/bottcher.hpp"
#include "gronwall/coefficient_cache.hpp"
#include "gronwall/dynamics.hpp"
#include "gronwall/error.hpp"
#include "gronwall/experiments.hpp"
#include "gronwall/fast_coefficients.hpp"
#include "gronwall/parallel.hpp"
#include "gronwall/params.hpp"
