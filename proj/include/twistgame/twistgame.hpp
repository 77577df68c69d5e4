#pragma once

// Everything except the HTTP front end (http_api.hpp), which needs httplib.

#include "budget.hpp"
#include "catalog.hpp"
#include "census.hpp"
#include "elem_set.hpp"
#include "error.hpp"
#include "game.hpp"
#include "group.hpp"
#include "group_ops.hpp"
#include "group_spec.hpp"
#include "service.hpp"
#include "solver.hpp"
#include "strategies.hpp"
#include "theory.hpp"
#include "twisted.hpp"
#include "verify.hpp"
