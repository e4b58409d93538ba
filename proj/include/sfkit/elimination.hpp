#pragma once

#include "sfkit/elimination/groebner.hpp"
#include "sfkit/elimination/ideal.hpp"
