#pragma once

#include "sfkit/algebra/curve.hpp"
#include "sfkit/algebra/mgcd.hpp"
#include "sfkit/algebra/mpoly.hpp"
#include "sfkit/algebra/parse.hpp"
#include "sfkit/algebra/rational.hpp"
#include "sfkit/algebra/real_roots.hpp"
#include "sfkit/algebra/resultant.hpp"
#include "sfkit/algebra/ring.hpp"
#include "sfkit/algebra/upoly.hpp"
