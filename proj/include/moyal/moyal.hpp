#pragma once

#include "moyal/error.hpp"
#include "moyal/symplectic.hpp"
#include "moyal/element.hpp"
#include "moyal/star.hpp"
#include "moyal/derivations.hpp"
#include "moyal/connections.hpp"
#include "moyal/graded.hpp"
#include "moyal/expression.hpp"
#include "moyal/random.hpp"
#include "moyal/oneloop.hpp"
#include "moyal/verify.hpp"
#include "moyal/config.hpp"
