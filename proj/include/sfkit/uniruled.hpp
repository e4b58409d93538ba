#pragma once

#include "sfkit/uniruled/action.hpp"
#include "sfkit/uniruled/ansatz.hpp"
#include "sfkit/uniruled/certify.hpp"
#include "sfkit/uniruled/decompose.hpp"
