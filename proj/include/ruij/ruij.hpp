#pragma once

#include "ruij/errors.hpp"
#include "ruij/field.hpp"
#include "ruij/laurent.hpp"
#include "ruij/symfunc.hpp"
#include "ruij/series.hpp"
#include "ruij/parallel.hpp"
#include "ruij/context.hpp"
#include "ruij/operators.hpp"
#include "ruij/eigen_symmetric.hpp"
#include "ruij/eigen_asymptotic.hpp"
#include "ruij/numerics.hpp"
#include "ruij/json_io.hpp"
