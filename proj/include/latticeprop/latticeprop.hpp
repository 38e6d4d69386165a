#pragma once

#include "latticeprop/bargmann.hpp"
#include "latticeprop/bench.hpp"
#include "latticeprop/config.hpp"
#include "latticeprop/crystal.hpp"
#include "latticeprop/format.hpp"
#include "latticeprop/mat2.hpp"
#include "latticeprop/su11.hpp"
#include "latticeprop/wigner.hpp"
