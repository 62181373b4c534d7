#pragma once

#include "gft/arith.hpp"
#include "gft/asymptotics.hpp"
#include "gft/bounds.hpp"
#include "gft/density.hpp"
#include "gft/io.hpp"
#include "gft/quadfield.hpp"
#include "gft/threshold.hpp"
#include "gft/tower.hpp"
