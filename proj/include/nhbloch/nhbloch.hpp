#pragma once

#include "errors.hpp"
#include "specfun.hpp"
#include "potential.hpp"
#include "eig.hpp"
#include "parallel.hpp"
#include "bloch.hpp"
#include "topology.hpp"
#include "realspace.hpp"
#include "models.hpp"
