// nmwork.hpp: Umbrella header

#pragma once

#include "nmwork/channels.hpp"
#include "nmwork/errors.hpp"
#include "nmwork/ising.hpp"
#include "nmwork/linalg.hpp"
#include "nmwork/pbg.hpp"
#include "nmwork/quadrature.hpp"
#include "nmwork/specfun.hpp"
#include "nmwork/thermo.hpp"
