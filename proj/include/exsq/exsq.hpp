#pragma once

// Umbrella header.

#include "exsq/diagram.hpp"
#include "exsq/errors.hpp"
#include "exsq/index_set.hpp"
#include "exsq/json_io.hpp"
#include "exsq/matrix.hpp"
#include "exsq/pluecker.hpp"
#include "exsq/random.hpp"
#include "exsq/scalar.hpp"
#include "exsq/scheme.hpp"
#include "exsq/selftest.hpp"
#include "exsq/transvection.hpp"
